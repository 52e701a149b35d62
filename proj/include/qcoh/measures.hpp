#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "qcoh/errors.hpp"
#include "qcoh/linalg.hpp"
#include "qcoh/states.hpp"
#include "qcoh/types.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// entropy helpers (log base 2 throughout; 0 log 0 = 0 by convention)

template <typename Scalar>
Scalar plog2(Scalar x) {
  return x > Scalar(0) ? x * std::log2(x) : Scalar(0);
}

template <typename Scalar>
Scalar binary_entropy(Scalar x) {
  return -plog2(x) - plog2(Scalar(1) - x);
}

template <typename Scalar>
Scalar shannon_bits(const RVec<Scalar>& p) {
  Scalar s = 0;
  for (Eigen::Index i = 0; i < p.size(); ++i) s -= plog2(std::max(p[i], Scalar(0)));
  return s;
}

template <typename Scalar>
RVec<Scalar> diagonal_probs(const DensityMatrix<Scalar>& rho) {
  RVec<Scalar> p = rho.matrix().real().diagonal();
  for (Eigen::Index i = 0; i < p.size(); ++i) p[i] = std::max(p[i], Scalar(0));
  return p;
}

template <typename Scalar>
Scalar clamp_tiny(Scalar v) {
  return (v < Scalar(0) && v > -Tol<Scalar>::value_clamp) ? Scalar(0) : v;
}

template <typename Scalar>
void require_measure_alpha(Scalar alpha) {
  if (!(alpha > Scalar(0)) || alpha == Scalar(1) || alpha > Scalar(2))
    throw AlphaOutOfRangeError("alpha must lie in (0,1) u (1,2]");
}

// ---------------------------------------------------------------------------
// the five quantifiers

/// Sum of moduli of the off-diagonal entries.
template <typename Scalar>
Scalar c_l1(const DensityMatrix<Scalar>& rho) {
  const auto& m = rho.matrix();
  Scalar s = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) s += std::abs(m(i, j));
  return s;
}

/// S(rho_diag) - S(rho), in bits.
template <typename Scalar>
Scalar c_r(const DensityMatrix<Scalar>& rho) {
  auto eig = hermitian_eig(rho.matrix());
  RVec<Scalar> lam = eig.eigenvalues;
  for (Eigen::Index i = 0; i < lam.size(); ++i) lam[i] = std::max(lam[i], Scalar(0));
  return clamp_tiny(shannon_bits(diagonal_probs(rho)) - shannon_bits(lam));
}

/// Tsallis relative alpha-entropy of coherence via its closed form
/// (r^alpha - 1)/(alpha - 1) with r = sum_i <i|rho^alpha|i>^(1/alpha).
template <typename Scalar>
Scalar c_tsallis(const DensityMatrix<Scalar>& rho, Scalar alpha) {
  require_measure_alpha(alpha);
  CMat<Scalar> apow = matrix_power(rho.matrix(), alpha);
  Scalar r = 0;
  for (Eigen::Index i = 0; i < apow.rows(); ++i) {
    const Scalar a = std::max(std::real(apow(i, i)), Scalar(0));
    r += std::pow(a, Scalar(1) / alpha);
  }
  return clamp_tiny((std::pow(r, alpha) - Scalar(1)) / (alpha - Scalar(1)));
}

/// alpha = 2 special case computed entrywise from column norms,
/// (sum_j ||col_j||)^2 - 1; no eigendecomposition involved.
template <typename Scalar>
Scalar c_alpha2(const DensityMatrix<Scalar>& rho) {
  const auto& m = rho.matrix();
  Scalar r = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j) r += m.col(j).norm();
  return clamp_tiny(r * r - Scalar(1));
}

/// Squared l2 norm of the off-diagonal part.
template <typename Scalar>
Scalar c_l2sq(const DensityMatrix<Scalar>& rho) {
  const auto& m = rho.matrix();
  Scalar s = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) s += std::norm(m(i, j));
  return s;
}

/// The minimizing incoherent state of the Tsallis divergence:
/// delta = (1/r) sum_i <i|rho^alpha|i>^(1/alpha) |i><i|.
template <typename Scalar>
DensityMatrix<Scalar> nearest_incoherent_tsallis(const DensityMatrix<Scalar>& rho, Scalar alpha) {
  require_measure_alpha(alpha);
  CMat<Scalar> apow = matrix_power(rho.matrix(), alpha);
  const Eigen::Index d = rho.dim();
  RVec<Scalar> w(d);
  Scalar r = 0;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Scalar a = std::max(std::real(apow(i, i)), Scalar(0));
    w[i] = std::pow(a, Scalar(1) / alpha);
    r += w[i];
  }
  CMat<Scalar> m = CMat<Scalar>::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = w[i] / r;
  return DensityMatrix<Scalar>(std::move(m));
}

/// Tsallis relative entropy D_alpha(rho || delta) =
/// (tr(rho^alpha delta^(1-alpha)) - 1)/(alpha - 1). For alpha > 1 the
/// negative power is taken on delta's support; weight of rho outside that
/// support makes the divergence infinite and raises SupportMismatchError.
template <typename Scalar>
Scalar tsallis_divergence(const DensityMatrix<Scalar>& rho, const DensityMatrix<Scalar>& delta,
                          Scalar alpha) {
  if (!(alpha > Scalar(0)) || alpha == Scalar(1))
    throw AlphaOutOfRangeError("tsallis_divergence: alpha must be positive and != 1");
  if (rho.dim() != delta.dim())
    throw DimensionMismatchError("tsallis_divergence: dimension mismatch");
  const Eigen::Index d = rho.dim();
  const Scalar support_tol = Scalar(1e-12);

  CMat<Scalar> rho_pow = matrix_power(rho.matrix(), alpha);

  if (max_offdiagonal(delta.matrix()) == Scalar(0)) {
    // diagonal delta: exact elementwise powers
    Scalar tr = 0;
    for (Eigen::Index i = 0; i < d; ++i) {
      const Scalar q = std::max(std::real(delta(i, i)), Scalar(0));
      const Scalar a = std::max(std::real(rho_pow(i, i)), Scalar(0));
      if (q > support_tol) {
        tr += a * std::pow(q, Scalar(1) - alpha);
      } else if (alpha > Scalar(1) && a > Scalar(1e-10)) {
        throw SupportMismatchError("tsallis_divergence: rho has weight outside delta's support");
      }
    }
    return (tr - Scalar(1)) / (alpha - Scalar(1));
  }

  auto deig = hermitian_eig(delta.matrix());
  RVec<Scalar> dpow(d);
  for (Eigen::Index i = 0; i < d; ++i) {
    const Scalar lam = std::max(deig.eigenvalues[i], Scalar(0));
    if (lam > support_tol) {
      dpow[i] = std::pow(lam, Scalar(1) - alpha);
    } else {
      dpow[i] = 0;
      if (alpha > Scalar(1)) {
        const CVec<Scalar> v = deig.eigenvectors.col(i);
        const Scalar mass = std::real((v.adjoint() * rho_pow * v)(0, 0));
        if (mass > Scalar(1e-10))
          throw SupportMismatchError("tsallis_divergence: rho has weight outside delta's support");
      }
    }
  }
  CMat<Scalar> delta_pow = deig.eigenvectors * dpow.asDiagonal() * deig.eigenvectors.adjoint();
  const Scalar tr = std::real((rho_pow * delta_pow).trace());
  return (tr - Scalar(1)) / (alpha - Scalar(1));
}

// ---------------------------------------------------------------------------
// closed forms

template <typename Scalar = double>
struct ClosedForms {
  Scalar l1;
  Scalar rel_ent;
  Scalar tsallis;
};

/// Qubit closed forms in the (t, n) parametrization.
template <typename Scalar>
ClosedForms<Scalar> qubit_closed_forms(const BlochVector<Scalar>& b, Scalar alpha) {
  require_measure_alpha(alpha);
  const Scalar t = b.t(), nz = b.nz();
  ClosedForms<Scalar> out;
  out.l1 = t * std::sqrt(std::max(Scalar(0), Scalar(1) - nz * nz));
  out.rel_ent = clamp_tiny(binary_entropy((Scalar(1) + t * nz) / Scalar(2)) -
                           binary_entropy((Scalar(1) + t) / Scalar(2)));
  const Scalar lp = std::pow((Scalar(1) + t) / Scalar(2), alpha);
  const Scalar lm = std::pow((Scalar(1) - t) / Scalar(2), alpha);
  const Scalar wp = (Scalar(1) + nz) / Scalar(2);
  const Scalar wm = (Scalar(1) - nz) / Scalar(2);
  const Scalar r = std::pow(lp * wp + lm * wm, Scalar(1) / alpha) +
                   std::pow(lp * wm + lm * wp, Scalar(1) / alpha);
  out.tsallis = clamp_tiny((std::pow(r, alpha) - Scalar(1)) / (alpha - Scalar(1)));
  return out;
}

/// n-qubit X-state closed forms. The spectral side uses the two corner-block
/// eigenpairs (p + (1-p)/d on [a,...,b], (1-p)/d on [b,...,-a]) plus the
/// (d-2)-fold degenerate background.
template <typename Scalar>
ClosedForms<Scalar> xstate_closed_forms(const XStateParams<Scalar>& xp, Scalar alpha) {
  require_measure_alpha(alpha);
  const Scalar d = Scalar(xp.dim());
  const Scalar a2 = xp.a * xp.a;
  const Scalar b2 = std::max(Scalar(0), Scalar(1) - a2);
  const Scalar s = (Scalar(1) - xp.p) / d;
  const Scalar lam1 = xp.p + s;

  ClosedForms<Scalar> out;
  out.l1 = Scalar(2) * xp.p * xp.a * xp.b();
  out.rel_ent = clamp_tiny(-plog2(xp.p * a2 + s) - plog2(xp.p * b2 + s) + plog2(s) + plog2(lam1));
  const Scalar lam1a = std::pow(lam1, alpha);
  const Scalar sa = std::pow(s, alpha);
  const Scalar r = std::pow(lam1a * a2 + sa * b2, Scalar(1) / alpha) +
                   std::pow(lam1a * b2 + sa * a2, Scalar(1) / alpha) + (d - Scalar(2)) * s;
  out.tsallis = clamp_tiny((std::pow(r, alpha) - Scalar(1)) / (alpha - Scalar(1)));
  return out;
}

/// Pure-state closed forms straight from the spectrum.
template <typename Scalar>
Scalar pure_l1(const PureSpectrum<Scalar>& s) {
  Scalar sum = 0;
  for (Eigen::Index i = 0; i < s.dim(); ++i) sum += std::sqrt(s.lambdas()[i]);
  return sum * sum - Scalar(1);
}

template <typename Scalar>
Scalar pure_rel_ent(const PureSpectrum<Scalar>& s) {
  return shannon_bits(s.lambdas());
}

template <typename Scalar>
Scalar pure_tsallis(const PureSpectrum<Scalar>& s, Scalar alpha) {
  require_measure_alpha(alpha);
  Scalar r = 0;
  for (Eigen::Index i = 0; i < s.dim(); ++i) r += std::pow(s.lambdas()[i], Scalar(1) / alpha);
  return clamp_tiny((std::pow(r, alpha) - Scalar(1)) / (alpha - Scalar(1)));
}

// ---------------------------------------------------------------------------
// measure selector

enum class MeasureKind { l1, rel_ent, tsallis, alpha2, l2sq };

/// Tagged selector over the five quantifiers; Tsallis carries its alpha.
template <typename Scalar = double>
class CoherenceMeasure {
 public:
  static CoherenceMeasure l1() { return CoherenceMeasure(MeasureKind::l1, 0); }
  static CoherenceMeasure rel_ent() { return CoherenceMeasure(MeasureKind::rel_ent, 0); }
  static CoherenceMeasure tsallis(Scalar alpha) {
    require_measure_alpha(alpha);
    return CoherenceMeasure(MeasureKind::tsallis, alpha);
  }
  static CoherenceMeasure alpha2() { return CoherenceMeasure(MeasureKind::alpha2, Scalar(2)); }
  static CoherenceMeasure l2sq() { return CoherenceMeasure(MeasureKind::l2sq, 0); }

  MeasureKind kind() const { return kind_; }
  Scalar alpha() const { return alpha_; }

  Scalar operator()(const DensityMatrix<Scalar>& rho) const {
    switch (kind_) {
      case MeasureKind::l1: return c_l1(rho);
      case MeasureKind::rel_ent: return c_r(rho);
      case MeasureKind::tsallis: return c_tsallis(rho, alpha_);
      case MeasureKind::alpha2: return c_alpha2(rho);
      case MeasureKind::l2sq: return c_l2sq(rho);
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case MeasureKind::l1: return "l1";
      case MeasureKind::rel_ent: return "relent";
      case MeasureKind::tsallis: {
        std::ostringstream os;
        os << "tsallis(" << alpha_ << ")";
        return os.str();
      }
      case MeasureKind::alpha2: return "alpha2";
      case MeasureKind::l2sq: return "l2sq";
    }
    return "?";
  }

  /// Unit annotation: relative entropy is reported in bits, the rest are
  /// dimensionless.
  std::string unit_note() const {
    return kind_ == MeasureKind::rel_ent ? "bits" : "dimensionless";
  }

 private:
  CoherenceMeasure(MeasureKind k, Scalar a) : kind_(k), alpha_(a) {}
  MeasureKind kind_;
  Scalar alpha_;
};

/// A computed coherence value together with the selector that produced it.
template <typename Scalar = double>
struct CoherenceValue {
  CoherenceMeasure<Scalar> measure;
  Scalar value;
};

// ---------------------------------------------------------------------------
// generalized monotonicity under incoherent selective measurements

template <typename Scalar>
Scalar kraus_completeness_defect(const std::vector<CMat<Scalar>>& ops) {
  if (ops.empty()) return Scalar(1);
  CMat<Scalar> sum = CMat<Scalar>::Zero(ops[0].rows(), ops[0].cols());
  for (const auto& k : ops) sum += k.adjoint() * k;
  sum -= CMat<Scalar>::Identity(sum.rows(), sum.cols());
  return sum.cwiseAbs().maxCoeff();
}

/// A Kraus operator is incoherent iff every column has at most one entry of
/// non-negligible modulus: then K delta K^dag stays diagonal for diagonal delta.
template <typename Scalar>
bool is_incoherent_kraus(const CMat<Scalar>& k) {
  for (Eigen::Index j = 0; j < k.cols(); ++j) {
    int live = 0;
    for (Eigen::Index i = 0; i < k.rows(); ++i)
      if (std::abs(k(i, j)) > Tol<Scalar>::diagonal) ++live;
    if (live > 1) return false;
  }
  return true;
}

template <typename Scalar = double>
struct GenMonotonicityCheck {
  Scalar lhs;
  Scalar rhs;
  bool holds;
};

/// sum_i p_i^alpha q_i^(1-alpha) C_alpha(rho_i) <= C_alpha(rho) with
/// p_i = tr(K_i rho K_i^dag), q_i = tr(K_i delta_rho K_i^dag),
/// rho_i = K_i rho K_i^dag / p_i. Branches with p_i below prob_skip drop out.
template <typename Scalar>
GenMonotonicityCheck<Scalar> check_generalized_monotonicity(const DensityMatrix<Scalar>& rho,
                                                            const std::vector<CMat<Scalar>>& kraus,
                                                            Scalar alpha) {
  require_measure_alpha(alpha);
  if (kraus.empty()) throw IncompleteKrausError("generalized monotonicity: empty Kraus set");
  for (const auto& k : kraus) {
    if (k.rows() != rho.dim() || k.cols() != rho.dim())
      throw DimensionMismatchError("generalized monotonicity: Kraus dimension mismatch");
    if (!is_incoherent_kraus(k))
      throw NotIncoherentChannelError("generalized monotonicity: Kraus set is not incoherent");
  }
  if (kraus_completeness_defect(kraus) > Tol<Scalar>::hermitian)
    throw IncompleteKrausError("generalized monotonicity: Kraus completeness fails");

  const DensityMatrix<Scalar> delta = nearest_incoherent_tsallis(rho, alpha);
  Scalar lhs = 0;
  for (const auto& k : kraus) {
    CMat<Scalar> sigma = k * rho.matrix() * k.adjoint();
    sigma = (sigma + sigma.adjoint()) / Scalar(2);
    const Scalar p = sigma.real().diagonal().sum();
    if (p < Tol<Scalar>::prob_skip) continue;
    const Scalar q = std::max(std::real((k * delta.matrix() * k.adjoint()).trace()), Scalar(0));
    DensityMatrix<Scalar> rho_i(CMat<Scalar>(sigma / p));
    const Scalar ci = c_tsallis(rho_i, alpha);
    if (ci <= Scalar(0)) continue;  // zero coherence contributes nothing even if q = 0
    lhs += std::pow(p, alpha) * std::pow(q, Scalar(1) - alpha) * ci;
  }
  const Scalar rhs = c_tsallis(rho, alpha);
  return {lhs, rhs, lhs <= rhs + Scalar(1e-9)};
}

}  // namespace qcoh
