#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qcoh/channels.hpp"
#include "qcoh/errors.hpp"
#include "qcoh/ordering.hpp"
#include "qcoh/states.hpp"

namespace qcoh {

using json = nlohmann::json;

// State wire format: {"dim": d, "re": [d*d reals], "im": [d*d reals]},
// row-major. Bloch states: {"t": t, "n": [nx, ny, nz]}.

inline json matrix_to_json(const CMat<double>& m) {
  json j;
  j["dim"] = m.rows();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      re.push_back(m(i, k).real());
      im.push_back(m(i, k).imag());
    }
  }
  j["re"] = re;
  j["im"] = im;
  return j;
}

inline CMat<double> matrix_from_json(const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_integer())
    throw Error("state json: field 'dim' missing or not an integer");
  const long d = j["dim"].get<long>();
  if (d < 1) throw Error("state json: field 'dim' must be positive");
  for (const char* field : {"re", "im"}) {
    if (!j.contains(field) || !j[field].is_array())
      throw Error(std::string("state json: field '") + field + "' missing or not an array");
    if (long(j[field].size()) != d * d)
      throw Error(std::string("state json: field '") + field + "' must have dim*dim entries");
  }
  CMat<double> m(d, d);
  for (long i = 0; i < d; ++i) {
    for (long k = 0; k < d; ++k) {
      const auto& re = j["re"][i * d + k];
      const auto& im = j["im"][i * d + k];
      if (!re.is_number() || !im.is_number())
        throw Error("state json: fields 're'/'im' must contain numbers");
      m(i, k) = std::complex<double>(re.get<double>(), im.get<double>());
    }
  }
  return m;
}

inline json density_to_json(const DensityMatrix<double>& rho) { return matrix_to_json(rho.matrix()); }

inline DensityMatrix<double> density_from_json(const json& j) {
  return DensityMatrix<double>(matrix_from_json(j));  // ctor reports validation defects
}

inline json bloch_to_json(const BlochVector<double>& b) {
  return json{{"t", b.t()}, {"n", {b.nx(), b.ny(), b.nz()}}};
}

inline BlochVector<double> bloch_from_json(const json& j) {
  if (!j.contains("t") || !j["t"].is_number())
    throw Error("bloch json: field 't' missing or not a number");
  if (!j.contains("n") || !j["n"].is_array() || j["n"].size() != 3)
    throw Error("bloch json: field 'n' must be an array of 3 numbers");
  for (const auto& c : j["n"])
    if (!c.is_number()) throw Error("bloch json: field 'n' must contain numbers");
  Eigen::Vector3d n(j["n"][0].get<double>(), j["n"][1].get<double>(), j["n"][2].get<double>());
  return BlochVector<double>(j["t"].get<double>(), n);
}

/// Accepts either wire format and returns the density matrix.
inline DensityMatrix<double> state_from_json(const json& j) {
  if (j.contains("dim")) return density_from_json(j);
  if (j.contains("t")) return from_bloch(bloch_from_json(j));
  throw Error("state json: expected either {dim, re, im} or {t, n}");
}

inline json channel_to_json(const KrausChannel<double>& ch) {
  json j;
  j["name"] = ch.name();
  j["p"] = ch.p();
  json ops = json::array();
  for (const auto& k : ch.operators()) ops.push_back(matrix_to_json(k));
  j["kraus"] = ops;
  return j;
}

inline KrausChannel<double> channel_from_json(const json& j) {
  if (!j.contains("name") || !j["name"].is_string())
    throw Error("channel json: field 'name' missing or not a string");
  if (!j.contains("kraus") || !j["kraus"].is_array() || j["kraus"].empty())
    throw Error("channel json: field 'kraus' must be a non-empty array");
  std::vector<CMat<double>> ops;
  for (const auto& op : j["kraus"]) ops.push_back(matrix_from_json(op));
  double p = std::numeric_limits<double>::quiet_NaN();
  if (j.contains("p") && j["p"].is_number()) p = j["p"].get<double>();
  return KrausChannel<double>(j["name"].get<std::string>(), std::move(ops), p);
}

inline json report_to_json(const OrderingReport<double>& rep) {
  json j;
  j["label"] = rep.label;
  j["measures"] = rep.measures;
  j["pair_count"] = rep.pair_count;
  j["measure_pairs"] = rep.measure_pairs;
  j["agreements"] = rep.agreements;
  j["tie_tolerance"] = rep.tie_tolerance;
  json vs = json::array();
  for (const auto& v : rep.violations) {
    vs.push_back(json{{"state_i", v.state_i},
                      {"state_j", v.state_j},
                      {"measure_a", rep.measures[v.measure_a]},
                      {"measure_b", rep.measures[v.measure_b]},
                      {"a_i", v.a_i},
                      {"a_j", v.a_j},
                      {"b_i", v.b_i},
                      {"b_j", v.b_j}});
  }
  j["violations"] = vs;
  return j;
}

inline json dynamics_to_json(const OrderingDynamics<double>& dyn) {
  json j;
  json stats = json::array();
  for (const auto& md : dyn.stats) {
    json flips = json::array();
    for (const auto& f : md.strict_flips) {
      flips.push_back(json{{"state_i", f.state_i},
                           {"state_j", f.state_j},
                           {"before_i", f.before_i},
                           {"before_j", f.before_j},
                           {"after_i", f.after_i},
                           {"after_j", f.after_j}});
    }
    stats.push_back(json{{"measure", md.measure},
                         {"preserved", md.preserved},
                         {"total", md.total},
                         {"strict_flips", flips}});
  }
  j["stats"] = stats;
  if (!dyn.before_report.measures.empty()) {
    j["before_report"] = report_to_json(dyn.before_report);
    j["after_report"] = report_to_json(dyn.after_report);
  }
  return j;
}

}  // namespace qcoh
