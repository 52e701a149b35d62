#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qcoh/states.hpp"
#include "qcoh/types.hpp"

namespace qcoh {

/// Deterministic random source. All draws funnel through mt19937_64 with
/// hand-rolled transforms (no std distributions), so a fixed seed reproduces
/// the exact same stream on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return double(gen_() >> 11) * 0x1.0p-53; }  // [0, 1)

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double gaussian() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps the log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform direction on the unit sphere (Marsaglia rejection).
  Eigen::Vector3d sphere() {
    for (;;) {
      const double u = uniform(-1.0, 1.0);
      const double v = uniform(-1.0, 1.0);
      const double s = u * u + v * v;
      if (s >= 1.0 || s == 0.0) continue;
      const double f = std::sqrt(1.0 - s);
      Eigen::Vector3d n(2.0 * u * f, 2.0 * v * f, 1.0 - 2.0 * s);
      n /= n.norm();
      return n;
    }
  }

  /// Uniform point on the probability simplex (flat Dirichlet).
  Eigen::VectorXd simplex(int d) {
    Eigen::VectorXd x(d);
    double sum = 0;
    for (int i = 0; i < d; ++i) {
      x[i] = -std::log(1.0 - uniform());
      sum += x[i];
    }
    return x / sum;
  }

  Eigen::MatrixXcd ginibre(int d) {
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) g(i, j) = std::complex<double>(gaussian(), gaussian());
    return g;
  }

  /// Full-rank random density matrix (Ginibre ensemble).
  DensityMatrix<double> density(int d) {
    Eigen::MatrixXcd g = ginibre(d);
    Eigen::MatrixXcd m = g * g.adjoint();
    m = (m + m.adjoint()) / 2.0;
    m /= m.real().diagonal().sum();
    return DensityMatrix<double>(std::move(m));
  }

  /// alpha drawn away from the singular points of (0,1) u (1,2].
  double alpha_in_range() {
    return uniform() < 0.5 ? uniform(0.05, 0.95) : uniform(1.05, 2.0);
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace qcoh
