#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qcoh {

template <typename Scalar = double>
using Complex = std::complex<Scalar>;

/// Dense complex matrix in the fixed reference basis.
template <typename Scalar = double>
using CMat = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar = double>
using CVec = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using RVec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar = double>
using R3 = Eigen::Matrix<Scalar, 3, 1>;

/// Library-wide numerical tolerances. The double values are the contract;
/// the float specialization loosens them to what single precision can honor.
template <typename Scalar>
struct Tol {
  static constexpr Scalar hermitian = Scalar(1e-10);   // max |m_ij - conj(m_ji)|
  static constexpr Scalar trace = Scalar(1e-10);       // |tr - 1|
  static constexpr Scalar psd = Scalar(1e-10);         // smallest admissible eigenvalue is -psd
  static constexpr Scalar eig_clamp = Scalar(1e-12);   // eigenvalues in [-eig_clamp, 0) clamp to 0
  static constexpr Scalar diagonal = Scalar(1e-10);    // "incoherent" off-diagonal cutoff
  static constexpr Scalar tie = Scalar(1e-9);          // ordering tie tolerance
  static constexpr Scalar unit_norm = Scalar(1e-12);   // Bloch direction norm slack
  static constexpr Scalar prob_skip = Scalar(1e-12);   // measurement branches below this are dropped
  static constexpr Scalar monotone = Scalar(1e-10);    // successive-difference tolerance in scans
  static constexpr Scalar value_clamp = Scalar(1e-12); // tiny negative measure values clamp to 0
};

template <>
struct Tol<float> {
  static constexpr float hermitian = 1e-5f;
  static constexpr float trace = 1e-5f;
  static constexpr float psd = 1e-5f;
  static constexpr float eig_clamp = 1e-6f;
  static constexpr float diagonal = 1e-5f;
  static constexpr float tie = 1e-4f;
  static constexpr float unit_norm = 1e-6f;
  static constexpr float prob_skip = 1e-6f;
  static constexpr float monotone = 1e-5f;
  static constexpr float value_clamp = 1e-6f;
};

}  // namespace qcoh
