#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "qcoh/channels.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/measures.hpp"
#include "qcoh/states.hpp"

// Figure-style scan grids emitted as CSV. The CLI and the verification
// suites share this code path, so files are reproducible bit for bit.

namespace qcoh::scans {

/// Shortest round-trip formatting: parsing the string recovers the exact
/// double. Used for grid parameters.
inline std::string format_exact(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// 12 significant digits, for computed values.
inline std::string format_value(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error("csv: cannot parse number '" + s + "'");
  return v;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string csv() const {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
      if (i) out += ',';
      out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
      for (size_t i = 0; i < row.size(); ++i) {
        if (i) out += ',';
        out += row[i];
      }
      out += '\n';
    }
    return out;
  }
};

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * double(i) / double(n - 1));
  return out;
}

/// Tsallis coherence against t for each (alpha, n_z) preset combination.
inline Table fig1(std::vector<double> alphas = {0.25, 0.75, 1.5},
                  std::vector<double> nzs = {0.25, 0.5, 0.75}, int grid = 50) {
  Table tab;
  tab.header = {"alpha", "n_z", "t", "C_alpha"};
  for (const double alpha : alphas) {
    for (const double nz : nzs) {
      for (const double t : linspace(0.0, 1.0, grid)) {
        const auto cf = qubit_closed_forms(BlochVector<double>(t, Eigen::Vector3d(
                                               std::sqrt(std::max(0.0, 1.0 - nz * nz)), 0, nz)),
                                           alpha);
        tab.rows.push_back({format_exact(alpha), format_exact(nz), format_exact(t),
                            format_value(cf.tsallis)});
      }
    }
  }
  return tab;
}

/// Coherence of the damped state over the (t, n_z) square, one row per grid
/// point: t in [0,1] outer, n_z in [-1,1] inner.
inline Table damping_grid(DampingKind kind, const CoherenceMeasure<double>& measure, double p,
                          int grid = 50) {
  const KrausChannel<double> ch = kind == DampingKind::adc ? adc(p) : pdc(p);
  Table tab;
  tab.header = {"t", "n_z", measure.name() + "_out"};
  for (const double t : linspace(0.0, 1.0, grid)) {
    for (const double nz : linspace(-1.0, 1.0, grid)) {
      const double perp = std::sqrt(std::max(0.0, 1.0 - nz * nz));
      const auto rho = from_bloch(BlochVector<double>(t, Eigen::Vector3d(perp, 0, nz)));
      const double value = measure(apply(ch, rho));
      tab.rows.push_back({format_exact(t), format_exact(nz), format_value(value)});
    }
  }
  return tab;
}

/// Direct (no-channel) scan of one measure over the same (t, n_z) square.
inline Table bloch_grid(const CoherenceMeasure<double>& measure, int grid = 50) {
  Table tab;
  tab.header = {"t", "n_z", measure.name()};
  for (const double t : linspace(0.0, 1.0, grid)) {
    for (const double nz : linspace(-1.0, 1.0, grid)) {
      const double perp = std::sqrt(std::max(0.0, 1.0 - nz * nz));
      const auto rho = from_bloch(BlochVector<double>(t, Eigen::Vector3d(perp, 0, nz)));
      tab.rows.push_back({format_exact(t), format_exact(nz), format_value(measure(rho))});
    }
  }
  return tab;
}

/// Figure presets. fig2-fig5 damp with the amplitude channel, fig6/fig7 with
/// the phase channel; even figures plot the relative entropy, odd the
/// alpha = 2 Tsallis value. All default to p = 0.5.
inline Table figure(const std::string& id, double p = 0.5, int grid = 50,
                    std::optional<std::vector<double>> alphas = std::nullopt) {
  if (id == "fig1")
    return alphas ? fig1(*alphas, {0.25, 0.5, 0.75}, grid) : fig1({0.25, 0.75, 1.5},
                                                                  {0.25, 0.5, 0.75}, grid);
  if (id == "fig2") return damping_grid(DampingKind::adc, CoherenceMeasure<double>::rel_ent(), p, grid);
  if (id == "fig3") return damping_grid(DampingKind::adc, CoherenceMeasure<double>::alpha2(), p, grid);
  if (id == "fig4") return damping_grid(DampingKind::adc, CoherenceMeasure<double>::rel_ent(), p, grid);
  if (id == "fig5") return damping_grid(DampingKind::adc, CoherenceMeasure<double>::alpha2(), p, grid);
  if (id == "fig6") return damping_grid(DampingKind::pdc, CoherenceMeasure<double>::rel_ent(), p, grid);
  if (id == "fig7") return damping_grid(DampingKind::pdc, CoherenceMeasure<double>::alpha2(), p, grid);
  throw UnknownFigureError("unknown figure id '" + id + "' (expected fig1..fig7)");
}

/// Splits one column of a (t, n_z, value) grid table into per-t rows of
/// values ordered by n_z. Used to scan figure output for monotonicity.
inline std::vector<std::vector<double>> rows_by_t(const Table& tab, int grid) {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid);
  for (int i = 0; i < grid; ++i) {
    std::vector<double> row;
    row.reserve(grid);
    for (int j = 0; j < grid; ++j) row.push_back(parse_double(tab.rows[i * grid + j][2]));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<std::vector<double>> columns_by_nz(const Table& tab, int grid) {
  std::vector<std::vector<double>> cols(grid);
  for (auto& c : cols) c.reserve(grid);
  for (int i = 0; i < grid; ++i)
    for (int j = 0; j < grid; ++j) cols[j].push_back(parse_double(tab.rows[i * grid + j][2]));
  return cols;
}

}  // namespace qcoh::scans
