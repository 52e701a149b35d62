#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "qcoh/errors.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/rng.hpp"
#include "qcoh/states.hpp"
#include "qcoh/types.hpp"

namespace qcoh {

// ---------------------------------------------------------------------------
// majorization

/// True iff x is majorized by y (x < y): every descending-sorted prefix sum
/// of x stays below the matching prefix sum of y, at equal totals.
template <typename Scalar>
bool is_majorized_by(RVec<Scalar> x, RVec<Scalar> y) {
  if (x.size() != y.size())
    throw DimensionMismatchError("majorization: vectors must have equal length");
  Scalar sx = 0, sy = 0;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < -Tol<Scalar>::eig_clamp || y[i] < -Tol<Scalar>::eig_clamp)
      throw ParamOutOfRangeError("majorization: entries must be non-negative");
    sx += x[i];
    sy += y[i];
  }
  if (std::abs(sx - sy) > Scalar(1e-10))
    throw SumMismatchError("majorization: vector totals differ");
  std::sort(x.data(), x.data() + x.size(), std::greater<Scalar>());
  std::sort(y.data(), y.data() + y.size(), std::greater<Scalar>());
  Scalar px = 0, py = 0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    px += x[k];
    py += y[k];
    if (px > py + Scalar(1e-12)) return false;
  }
  return true;
}

template <typename Scalar>
bool majorization_comparable(const RVec<Scalar>& x, const RVec<Scalar>& y) {
  return is_majorized_by(x, y) || is_majorized_by(y, x);
}

// ---------------------------------------------------------------------------
// Schur-concavity spot check

template <typename Scalar = double>
struct SchurSpotCheck {
  Scalar max_criterion;  // max over samples and index pairs of (x_i - x_j)(dF_i - dF_j)
  bool schur_concave;    // criterion stayed below 1e-6 everywhere
};

/// Numerical check of the partial-derivative criterion for Schur concavity.
/// Derivatives are central differences along e_i - e_j, which keeps the
/// perturbed points on the simplex. Samples are interior (blended toward the
/// uniform point) so the differences stay well away from the boundary.
template <typename Scalar = double, typename F>
SchurSpotCheck<Scalar> schur_concavity_spotcheck(F&& f, int dim, int samples, Rng& rng) {
  const Scalar h = Scalar(1e-6);
  const Scalar crit_tol = Scalar(1e-6);
  SchurSpotCheck<Scalar> out{std::numeric_limits<Scalar>::lowest(), true};
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd raw = rng.simplex(dim);
    RVec<Scalar> x(dim);
    for (int i = 0; i < dim; ++i)
      x[i] = Scalar(0.9) * Scalar(raw[i]) + Scalar(0.1) / Scalar(dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = i + 1; j < dim; ++j) {
        RVec<Scalar> xp = x, xm = x;
        xp[i] += h;
        xp[j] -= h;
        xm[i] -= h;
        xm[j] += h;
        const Scalar deriv = (f(xp) - f(xm)) / (Scalar(2) * h);
        const Scalar crit = (x[i] - x[j]) * deriv;
        out.max_criterion = std::max(out.max_criterion, crit);
      }
    }
  }
  out.schur_concave = out.max_criterion <= crit_tol;
  return out;
}

// ---------------------------------------------------------------------------
// state families

template <typename Scalar = double>
struct StateFamily {
  std::string label;
  std::vector<DensityMatrix<Scalar>> states;
};

/// Qubits of fixed length t (hence fixed mixedness 1 - t^2) with directions
/// drawn uniformly on the sphere.
template <typename Scalar = double>
StateFamily<Scalar> fixed_mixedness_family(Scalar t, int count, Rng& rng) {
  StateFamily<Scalar> fam;
  fam.label = "fixed-t:" + std::to_string(double(t));
  fam.states.reserve(count);
  for (int i = 0; i < count; ++i) {
    Eigen::Vector3d n = rng.sphere();
    fam.states.push_back(from_bloch(BlochVector<Scalar>(t, n.cast<Scalar>())));
  }
  return fam;
}

/// Qubits of fixed n_z, random length and azimuth.
template <typename Scalar = double>
StateFamily<Scalar> fixed_nz_family(Scalar nz, int count, Rng& rng) {
  if (nz < Scalar(-1) || nz > Scalar(1))
    throw ParamOutOfRangeError("fixed_nz_family: n_z must lie in [-1, 1]");
  StateFamily<Scalar> fam;
  fam.label = "fixed-nz:" + std::to_string(double(nz));
  fam.states.reserve(count);
  const Scalar perp = std::sqrt(std::max(Scalar(0), Scalar(1) - nz * nz));
  for (int i = 0; i < count; ++i) {
    const Scalar t = Scalar(rng.uniform());
    const Scalar phi = Scalar(rng.uniform(0.0, 2.0 * std::numbers::pi));
    R3<Scalar> n(perp * std::cos(phi), perp * std::sin(phi), nz);
    n /= n.norm();
    fam.states.push_back(from_bloch(BlochVector<Scalar>(t, n)));
  }
  return fam;
}

/// Chain of spectra totally ordered by majorization, built by repeated
/// Robin Hood transfers (move part of the gap from a larger entry to a
/// smaller one; each transfer yields a vector majorized by its predecessor).
inline std::vector<Eigen::VectorXd> majorization_chain_spectra(int d, int length, Rng& rng) {
  std::vector<Eigen::VectorXd> chain;
  chain.reserve(length);
  Eigen::VectorXd x = rng.simplex(d);
  chain.push_back(x);
  while (int(chain.size()) < length) {
    int hi = 0, lo = 0;
    for (int i = 1; i < d; ++i) {
      if (x[i] > x[hi]) hi = i;
      if (x[i] < x[lo]) lo = i;
    }
    if (hi == lo) break;  // already uniform
    const double delta = rng.uniform() * (x[hi] - x[lo]) / 2.0;
    x[hi] -= delta;
    x[lo] += delta;
    chain.push_back(x);
  }
  return chain;
}

template <typename Scalar = double>
StateFamily<Scalar> majorization_chain_family(int d, int length, Rng& rng) {
  StateFamily<Scalar> fam;
  fam.label = "pure-chain:d=" + std::to_string(d);
  for (const auto& spec : majorization_chain_spectra(d, length, rng))
    fam.states.push_back(pure_from_spectrum(PureSpectrum<Scalar>(spec.cast<Scalar>())));
  return fam;
}

/// X states with fixed (n, p) on a uniform a-grid over [0, a_max].
template <typename Scalar = double>
StateFamily<Scalar> x_family(int n_qubits, Scalar p, int count, Scalar a_max = Scalar(1)) {
  StateFamily<Scalar> fam;
  fam.label = "x:n=" + std::to_string(n_qubits) + ":p=" + std::to_string(double(p));
  fam.states.reserve(count);
  for (int i = 0; i < count; ++i) {
    const Scalar a = a_max * Scalar(i) / Scalar(count - 1);
    fam.states.push_back(x_state(XStateParams<Scalar>(n_qubits, p, a)));
  }
  return fam;
}

/// Pure states with random flat-Dirichlet spectra.
template <typename Scalar = double>
StateFamily<Scalar> random_pure_family(int d, int count, Rng& rng) {
  StateFamily<Scalar> fam;
  fam.label = "random-pure:d=" + std::to_string(d);
  fam.states.reserve(count);
  for (int i = 0; i < count; ++i)
    fam.states.push_back(pure_from_spectrum(PureSpectrum<Scalar>(rng.simplex(d).cast<Scalar>())));
  return fam;
}

// ---------------------------------------------------------------------------
// ordering agreement

template <typename Scalar>
int comparison_sign(Scalar x, Scalar y, Scalar tie_tol) {
  const Scalar d = x - y;
  if (d > tie_tol) return 1;
  if (d < -tie_tol) return -1;
  return 0;
}

/// A pair of states on which two measures disagree with strictly opposite
/// signs; carries all four values so the disagreement can be re-checked.
template <typename Scalar = double>
struct OrderingViolation {
  int state_i, state_j;
  int measure_a, measure_b;
  Scalar a_i, a_j, b_i, b_j;
};

template <typename Scalar = double>
struct OrderingReport {
  std::string label;
  std::vector<std::string> measures;
  long pair_count = 0;     // state pairs compared
  long measure_pairs = 0;  // measure pairs compared
  long agreements = 0;     // (state pair, measure pair) combos without violation
  Scalar tie_tolerance = Tol<Scalar>::tie;
  std::vector<OrderingViolation<Scalar>> violations;
};

/// Pairwise ordering comparison across measures. Values within the tie
/// tolerance count as equal and never produce a violation.
template <typename Scalar>
OrderingReport<Scalar> ordering_report(const StateFamily<Scalar>& family,
                                       const std::vector<CoherenceMeasure<Scalar>>& measures,
                                       Scalar tie_tol = Tol<Scalar>::tie) {
  const int ns = int(family.states.size());
  const int nm = int(measures.size());
  if (ns < 2) throw ParamOutOfRangeError("ordering_report: need at least two states");
  if (nm < 2) throw ParamOutOfRangeError("ordering_report: need at least two measures");
  for (const auto& s : family.states)
    if (s.dim() != family.states.front().dim())
      throw DimensionMismatchError("ordering_report: states must share one dimension");

  std::vector<std::vector<Scalar>> values(nm, std::vector<Scalar>(ns));
  for (int m = 0; m < nm; ++m)
    for (int s = 0; s < ns; ++s) values[m][s] = measures[m](family.states[s]);

  OrderingReport<Scalar> rep;
  rep.label = family.label;
  rep.tie_tolerance = tie_tol;
  for (const auto& m : measures) rep.measures.push_back(m.name());
  rep.pair_count = long(ns) * (ns - 1) / 2;
  rep.measure_pairs = long(nm) * (nm - 1) / 2;

  for (int i = 0; i < ns; ++i) {
    for (int j = i + 1; j < ns; ++j) {
      for (int a = 0; a < nm; ++a) {
        const int sa = comparison_sign(values[a][i], values[a][j], tie_tol);
        for (int b = a + 1; b < nm; ++b) {
          const int sb = comparison_sign(values[b][i], values[b][j], tie_tol);
          if (sa * sb == -1) {
            rep.violations.push_back({i, j, a, b, values[a][i], values[a][j], values[b][i],
                                      values[b][j]});
          } else {
            ++rep.agreements;
          }
        }
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// monotonicity scans

enum class Monotone { increasing, decreasing, non_monotonic, flat };

inline const char* monotone_name(Monotone m) {
  switch (m) {
    case Monotone::increasing: return "increasing";
    case Monotone::decreasing: return "decreasing";
    case Monotone::non_monotonic: return "non-monotonic";
    case Monotone::flat: return "flat";
  }
  return "?";
}

/// Classification result; a non-monotonic series carries the first
/// peak-or-valley triple (i < j < k with strict opposite moves).
template <typename Scalar = double>
struct ScanResult {
  Monotone kind = Monotone::flat;
  int wi = -1, wj = -1, wk = -1;
  Scalar vi{}, vj{}, vk{};
};

template <typename Scalar>
ScanResult<Scalar> classify_monotone(const std::vector<Scalar>& v,
                                     Scalar tol = Tol<Scalar>::monotone) {
  if (v.size() < 3) throw ParamOutOfRangeError("classify_monotone: need at least 3 points");
  ScanResult<Scalar> out;
  bool up = false, down = false;
  int anchor = -1;  // start index of the first strict move in the current direction
  int dir = 0;
  for (size_t k = 0; k + 1 < v.size(); ++k) {
    const Scalar d = v[k + 1] - v[k];
    int s = 0;
    if (d > tol) s = 1;
    else if (d < -tol) s = -1;
    if (s == 0) continue;
    if (s == 1) up = true;
    if (s == -1) down = true;
    if (dir != 0 && s != dir && out.wi < 0) {
      // first reversal: report the extremum between the two strict moves
      size_t ext = anchor;
      for (size_t m = anchor; m <= k; ++m)
        if ((dir == 1 && v[m] > v[ext]) || (dir == -1 && v[m] < v[ext])) ext = m;
      out.wi = anchor;
      out.wj = int(ext);
      out.wk = int(k + 1);
      out.vi = v[anchor];
      out.vj = v[ext];
      out.vk = v[k + 1];
    }
    if (dir == 0 || s != dir) anchor = int(k);
    dir = s;
  }
  if (up && down) out.kind = Monotone::non_monotonic;
  else if (up) out.kind = Monotone::increasing;
  else if (down) out.kind = Monotone::decreasing;
  else out.kind = Monotone::flat;
  return out;
}

/// Evaluates a one-parameter curve of states under one measure on the given
/// grid and classifies the value series.
template <typename Scalar>
ScanResult<Scalar> monotonicity_scan(const std::function<DensityMatrix<Scalar>(Scalar)>& curve,
                                     const CoherenceMeasure<Scalar>& measure,
                                     const std::vector<Scalar>& grid,
                                     Scalar tol = Tol<Scalar>::monotone) {
  if (grid.size() < 3) throw ParamOutOfRangeError("monotonicity_scan: need at least 3 grid points");
  std::vector<Scalar> values;
  values.reserve(grid.size());
  for (const Scalar g : grid) values.push_back(measure(curve(g)));
  return classify_monotone(values, tol);
}

}  // namespace qcoh
