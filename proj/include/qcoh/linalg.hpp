#pragma once

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "qcoh/errors.hpp"
#include "qcoh/types.hpp"

namespace qcoh {

/// Spectral decomposition of a Hermitian matrix: eigenvalues sorted
/// descending, eigenvector columns aligned with them, and each column's
/// phase pinned so its first non-negligible component is real positive.
template <typename Scalar = double>
struct EigDecomposition {
  RVec<Scalar> eigenvalues;
  CMat<Scalar> eigenvectors;
};

template <typename Derived>
auto hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m.derived() - m.derived().adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  return m.rows() == m.cols() && hermiticity_defect(m) <= Tol<Real>::hermitian;
}

template <typename Derived>
auto trace(const Eigen::MatrixBase<Derived>& m) {
  return m.derived().trace();
}

template <typename Derived>
auto max_offdiagonal(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  Real worst = 0;
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

template <typename Derived>
bool is_diagonal_matrix(const Eigen::MatrixBase<Derived>& m) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  return max_offdiagonal(m) <= Tol<Real>::diagonal;
}

template <typename Derived>
auto hermitian_eig(const Eigen::MatrixBase<Derived>& m)
    -> EigDecomposition<typename Eigen::NumTraits<typename Derived::Scalar>::Real> {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != m.cols() || m.rows() < 1)
    throw WrongDimensionError("hermitian_eig: square matrix required");
  if (hermiticity_defect(m) > Tol<Real>::hermitian)
    throw NotHermitianError("hermitian_eig: matrix is not Hermitian within tolerance");

  CMat<Real> sym = (m.derived().template cast<Complex<Real>>() +
                    m.derived().template cast<Complex<Real>>().adjoint()) /
                   Real(2);
  Eigen::SelfAdjointEigenSolver<CMat<Real>> solver(sym);
  if (solver.info() != Eigen::Success)
    throw NoConvergenceError("hermitian_eig: eigensolver did not converge");

  const Eigen::Index d = m.rows();
  EigDecomposition<Real> out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  // Eigen returns ascending order; flip to descending and pin phases.
  for (Eigen::Index i = 0; i < d; ++i) {
    out.eigenvalues[i] = solver.eigenvalues()[d - 1 - i];
    CVec<Real> v = solver.eigenvectors().col(d - 1 - i);
    for (Eigen::Index k = 0; k < d; ++k) {
      const Real a = std::abs(v[k]);
      if (a > Real(1e-12)) {
        v *= std::conj(v[k]) / a;
        break;
      }
    }
    out.eigenvectors.col(i) = v;
  }
  return out;
}

/// V diag(lambda^alpha) V^dag for Hermitian PSD input. Eigenvalues within
/// eig_clamp of zero are treated as exact rank deficiency: fractional powers
/// amplify spectrum noise by lambda^alpha (not linearly), so a 1e-16 wobble
/// on a pure state would otherwise surface as ~1e-8 at alpha = 1/2.
/// Anything below -eig_clamp is an error.
template <typename Derived, typename Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real>
CMat<Real> matrix_power(const Eigen::MatrixBase<Derived>& m, Real alpha) {
  if (!(alpha > Real(0)))
    throw ParamOutOfRangeError("matrix_power: alpha must be positive");
  auto eig = hermitian_eig(m);
  RVec<Real> powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    Real lam = eig.eigenvalues[i];
    if (lam < -Tol<Real>::eig_clamp)
      throw NegativeEigenvalueError("matrix_power: eigenvalue " + std::to_string(lam) +
                                    " below PSD tolerance");
    if (lam <= Tol<Real>::eig_clamp) lam = 0;
    powered[i] = std::pow(lam, alpha);
  }
  CMat<Real> r = eig.eigenvectors * powered.asDiagonal() * eig.eigenvectors.adjoint();
  return ((r + r.adjoint()) / Real(2)).eval();
}

}  // namespace qcoh
