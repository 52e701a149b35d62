#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qcoh/errors.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/types.hpp"

namespace qcoh {

enum class ViolationKind { hermiticity, trace, positivity };

/// One named defect found by validate(); magnitude keeps the sign that makes
/// it informative (trace excess, most negative eigenvalue, max asymmetry).
template <typename Scalar = double>
struct Violation {
  ViolationKind kind;
  Scalar magnitude;
};

template <typename Scalar>
std::string violation_message(const Violation<Scalar>& v) {
  std::ostringstream os;
  switch (v.kind) {
    case ViolationKind::hermiticity: os << "not Hermitian (max asymmetry "; break;
    case ViolationKind::trace: os << "trace defect (tr - 1 = "; break;
    case ViolationKind::positivity: os << "not PSD (min eigenvalue "; break;
  }
  os << v.magnitude << ")";
  return os.str();
}

/// Diagnoses a candidate density matrix. Empty result means Hermitian,
/// unit-trace and PSD all hold at library tolerances.
template <typename Scalar>
std::vector<Violation<Scalar>> validate(const CMat<Scalar>& m) {
  std::vector<Violation<Scalar>> out;
  if (m.rows() != m.cols() || m.rows() < 1) {
    out.push_back({ViolationKind::hermiticity, Scalar(-1)});
    return out;
  }
  const Scalar defect = hermiticity_defect(m);
  if (defect > Tol<Scalar>::hermitian) out.push_back({ViolationKind::hermiticity, defect});

  CMat<Scalar> sym = (m + m.adjoint()) / Scalar(2);
  const Scalar tr = sym.real().diagonal().sum();
  if (std::abs(tr - Scalar(1)) > Tol<Scalar>::trace)
    out.push_back({ViolationKind::trace, tr - Scalar(1)});

  Eigen::SelfAdjointEigenSolver<CMat<Scalar>> solver(sym, Eigen::EigenvaluesOnly);
  const Scalar lambda_min = solver.eigenvalues().minCoeff();
  if (lambda_min < -Tol<Scalar>::psd) out.push_back({ViolationKind::positivity, lambda_min});
  return out;
}

/// d x d Hermitian, PSD, unit-trace operator in the fixed reference basis.
/// Construction validates; unchecked() is the internal escape hatch for
/// matrices that are correct by construction.
template <typename Scalar = double>
class DensityMatrix {
 public:
  explicit DensityMatrix(CMat<Scalar> m) : m_(std::move(m)) {
    auto issues = validate(m_);
    if (!issues.empty()) {
      std::string msg = "invalid density matrix:";
      for (const auto& v : issues) msg += " " + violation_message(v) + ";";
      throw InvalidStateError(msg);
    }
  }

  static DensityMatrix unchecked(CMat<Scalar> m) {
    DensityMatrix r;
    r.m_ = std::move(m);
    return r;
  }

  Eigen::Index dim() const { return m_.rows(); }
  const CMat<Scalar>& matrix() const { return m_; }
  Complex<Scalar> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  DensityMatrix() = default;
  CMat<Scalar> m_;
};

/// (t, n) with unit n: the length/direction split of the qubit Bloch vector.
template <typename Scalar = double>
class BlochVector {
 public:
  BlochVector(Scalar t, const R3<Scalar>& n) : t_(t), n_(n) {
    if (t_ < Scalar(0) || t_ > Scalar(1) + Tol<Scalar>::unit_norm)
      throw ParamOutOfRangeError("bloch length t must lie in [0, 1]");
    t_ = std::min(t_, Scalar(1));
    if (std::abs(n_.norm() - Scalar(1)) > Tol<Scalar>::unit_norm)
      throw ParamOutOfRangeError("bloch direction n must be a unit vector");
  }

  Scalar t() const { return t_; }
  const R3<Scalar>& n() const { return n_; }
  Scalar nx() const { return n_[0]; }
  Scalar ny() const { return n_[1]; }
  Scalar nz() const { return n_[2]; }

 private:
  Scalar t_;
  R3<Scalar> n_;
};

/// Spectrum lambda of a pure state psi = sum_i sqrt(lambda_i) |i>, with
/// non-negative real amplitudes.
template <typename Scalar = double>
class PureSpectrum {
 public:
  explicit PureSpectrum(RVec<Scalar> lambdas) : lambdas_(std::move(lambdas)) {
    if (lambdas_.size() < 1) throw ParamOutOfRangeError("pure spectrum must be non-empty");
    Scalar sum = 0;
    for (Eigen::Index i = 0; i < lambdas_.size(); ++i) {
      if (lambdas_[i] < -Tol<Scalar>::eig_clamp)
        throw ParamOutOfRangeError("pure spectrum entries must be non-negative");
      lambdas_[i] = std::max(lambdas_[i], Scalar(0));
      sum += lambdas_[i];
    }
    if (std::abs(sum - Scalar(1)) > Scalar(1e-12))
      throw ParamOutOfRangeError("pure spectrum must sum to 1");
  }

  const RVec<Scalar>& lambdas() const { return lambdas_; }
  Eigen::Index dim() const { return lambdas_.size(); }

 private:
  RVec<Scalar> lambdas_;
};

/// n-qubit X-state parameters: rho = p |g><g| + (1-p) I/d with
/// |g> = a|0...0> + b|1...1>, b = sqrt(1 - a^2), d = 2^n.
template <typename Scalar = double>
struct XStateParams {
  int n_qubits;
  Scalar p;
  Scalar a;

  XStateParams(int n_qubits_, Scalar p_, Scalar a_) : n_qubits(n_qubits_), p(p_), a(a_) {
    if (n_qubits < 1) throw ParamOutOfRangeError("x state needs at least one qubit");
    if (p < Scalar(0) || p > Scalar(1)) throw ParamOutOfRangeError("x state p must lie in [0, 1]");
    if (a < Scalar(0) || a > Scalar(1)) throw ParamOutOfRangeError("x state a must lie in [0, 1]");
  }

  Scalar b() const { return std::sqrt(std::max(Scalar(0), Scalar(1) - a * a)); }
  Eigen::Index dim() const { return Eigen::Index(1) << n_qubits; }
};

template <typename Scalar>
DensityMatrix<Scalar> from_bloch(const BlochVector<Scalar>& b) {
  const Scalar t = b.t();
  CMat<Scalar> m(2, 2);
  m(0, 0) = Complex<Scalar>((Scalar(1) + t * b.nz()) / Scalar(2), 0);
  m(1, 1) = Complex<Scalar>((Scalar(1) - t * b.nz()) / Scalar(2), 0);
  m(0, 1) = Complex<Scalar>(t * b.nx() / Scalar(2), -t * b.ny() / Scalar(2));
  m(1, 0) = std::conj(m(0, 1));
  return DensityMatrix<Scalar>::unchecked(std::move(m));
}

/// Inverse of from_bloch. States with t below 1e-12 map to the conventional
/// direction (0, 0, 1).
template <typename Scalar>
BlochVector<Scalar> to_bloch(const DensityMatrix<Scalar>& rho) {
  if (rho.dim() != 2) throw WrongDimensionError("to_bloch: qubit state required");
  R3<Scalar> k;
  k[0] = Scalar(2) * std::real(rho(0, 1));
  k[1] = Scalar(-2) * std::imag(rho(0, 1));
  k[2] = std::real(rho(0, 0)) - std::real(rho(1, 1));
  const Scalar t = k.norm();
  if (t < Scalar(1e-12)) return BlochVector<Scalar>(Scalar(0), R3<Scalar>(0, 0, 1));
  R3<Scalar> n = k / t;
  n /= n.norm();
  return BlochVector<Scalar>(std::min(t, Scalar(1)), n);
}

template <typename Scalar>
DensityMatrix<Scalar> pure_from_spectrum(const PureSpectrum<Scalar>& s) {
  const Eigen::Index d = s.dim();
  RVec<Scalar> amp(d);
  for (Eigen::Index i = 0; i < d; ++i) amp[i] = std::sqrt(s.lambdas()[i]);
  CMat<Scalar> m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = Complex<Scalar>(amp[i] * amp[j], 0);
  return DensityMatrix<Scalar>::unchecked(std::move(m));
}

/// Projector onto an arbitrary (complex-amplitude) pure state.
template <typename Scalar>
DensityMatrix<Scalar> pure_from_amplitudes(const CVec<Scalar>& c) {
  const Scalar n2 = c.squaredNorm();
  if (n2 < Scalar(1e-30)) throw ParamOutOfRangeError("pure state amplitudes must not all vanish");
  CMat<Scalar> m = (c * c.adjoint()) / n2;
  return DensityMatrix<Scalar>::unchecked(std::move(m));
}

template <typename Scalar>
DensityMatrix<Scalar> x_state(const XStateParams<Scalar>& xp) {
  const Eigen::Index d = xp.dim();
  CMat<Scalar> m = CMat<Scalar>::Zero(d, d);
  const Scalar background = (Scalar(1) - xp.p) / Scalar(d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = background;
  const Scalar a = xp.a, b = xp.b();
  m(0, 0) += xp.p * a * a;
  m(d - 1, d - 1) += xp.p * b * b;
  m(0, d - 1) += xp.p * a * b;
  m(d - 1, 0) += xp.p * a * b;
  return DensityMatrix<Scalar>::unchecked(std::move(m));
}

/// Normalized linear entropy (d/(d-1)) (1 - tr rho^2), in [0, 1].
template <typename Scalar>
Scalar mixedness(const DensityMatrix<Scalar>& rho) {
  const Eigen::Index d = rho.dim();
  if (d < 2) throw WrongDimensionError("mixedness: undefined for dimension 1");
  const Scalar purity = rho.matrix().squaredNorm();  // tr rho^2 for Hermitian rho
  Scalar m = (Scalar(d) / Scalar(d - 1)) * (Scalar(1) - purity);
  if (m < Scalar(0) && m > -Tol<Scalar>::value_clamp) m = 0;
  return std::min(m, Scalar(1));
}

}  // namespace qcoh
