#include "wlab/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace wlab::serialize {

namespace {

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

}  // namespace

Json state_to_json(const PureState& state) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["labels"] = state.labels();
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    amps.push_back(complex_to_json(state.amplitude(i)));
  }
  j["amplitudes"] = std::move(amps);
  return j;
}

PureState state_from_json(const Json& j) {
  const auto labels = j.at("labels").get<std::vector<QubitLabel>>();
  const auto& amps = j.at("amplitudes");
  CVector v(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = complex_from_json(amps.at(i));
  }
  return PureState(labels, std::move(v));
}

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index jx = 0; jx < m.cols(); ++jx) {
      row.push_back(complex_to_json(m(i, jx)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(j.at(0).size());
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index jx = 0; jx < cols; ++jx) {
      m(i, jx) = complex_from_json(j.at(i).at(jx));
    }
  }
  return m;
}

Json recovery_map_to_json(const protocols::RecoveryMap& map) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json outcomes;
  for (const auto& [name, entry] : map.entries) {
    Json e;
    e["matrix"] = matrix_to_json(entry.op.matrix());
    e["locality_flag"] = entry.local ? "local" : "non-local";
    e["search_space"] = entry.search_space;
    e["desc"] = entry.op_desc;
    outcomes[name] = std::move(e);
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

protocols::RecoveryMap recovery_map_from_json(const Json& j) {
  protocols::RecoveryMap map;
  for (const auto& [name, e] : j.at("outcomes").items()) {
    protocols::RecoveryEntry entry{
        QOperator(matrix_from_json(e.at("matrix"))),
        e.at("locality_flag").get<std::string>() == "local",
        e.at("search_space").get<std::string>(),
        e.value("desc", std::string{})};
    map.entries.emplace(name, std::move(entry));
  }
  return map;
}

Json protocol_report_to_json(const protocols::ProtocolReport& report,
                             bool include_states) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json outcomes = Json::array();
  for (const auto& o : report.outcomes) {
    Json e;
    e["name"] = o.name;
    e["probability"] = o.probability;
    e["fidelity"] = o.fidelity;
    e["recovery_local"] = o.recovery_local;
    if (include_states && o.recovered) {
      e["recovered"] = state_to_json(*o.recovered);
    }
    outcomes.push_back(std::move(e));
  }
  j["outcomes"] = std::move(outcomes);
  j["prob_sum"] = report.prob_sum;
  j["min_fidelity"] = report.min_fidelity;
  j["max_prob_deviation"] = report.max_prob_deviation;
  j["success"] = report.success;
  return j;
}

Json search_report_to_json(const protocols::RecoverySearchReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["search_space"] = report.space;
  j["all_found"] = report.all_found;
  Json outcomes;
  for (const auto& [name, res] : report.outcomes) {
    Json e;
    e["found"] = res.found;
    e["best_fidelity"] = res.best_fidelity;
    if (res.entry) {
      e["desc"] = res.entry->op_desc;
      e["locality_flag"] = res.entry->local ? "local" : "non-local";
      e["matrix"] = matrix_to_json(res.entry->op.matrix());
    }
    outcomes[name] = std::move(e);
  }
  j["outcomes"] = std::move(outcomes);
  return j;
}

Json suitability_to_json(const protocols::SuitabilityReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json per;
  for (const auto& o : report.per_outcome) {
    per[o.name] = o.max_probability_deviation;
  }
  j["per_outcome_deviation"] = std::move(per);
  j["max_probability_deviation"] = report.max_probability_deviation;
  j["probabilities_input_independent"] = report.probabilities_input_independent;
  j["recovery_found"] = report.recovery_found;
  j["suitable"] = report.suitable;
  return j;
}

Json comparison_to_json(const analysis::ComparisonReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    Json e;
    e["outcome"] = r.outcome;
    e["formula"] = r.formula;
    e["simulated"] = r.simulated;
    e["abs_diff"] = r.abs_diff;
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["max_abs_diff"] = report.max_abs_diff;
  j["simulated_sum"] = report.simulated_sum;
  return j;
}

std::string comparison_to_csv(const analysis::ComparisonReport& report) {
  std::string out = "outcome,formula,simulated,diff\n";
  char buf[160];
  for (const auto& r : report.rows) {
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g\n",
                  r.outcome.c_str(), r.formula, r.simulated, r.abs_diff);
    out += buf;
  }
  return out;
}

Json dense_report_to_json(const protocols::DenseCodeReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["message"] = report.message;
  j["encoding"] = Json{{"B", report.b_name}, {"C", report.c_name}};
  j["decoded"] = report.decoded;
  j["deterministic"] = report.deterministic;
  j["success"] = report.success;
  return j;
}

Json verdict_to_json(const analysis::ConvertVerdict& verdict) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["verdict"] = verdict.convertible ? "convertible" : "not convertible";
  j["reason"] = verdict.reason;
  if (verdict.t) {
    j["t_matrix"] = matrix_to_json(verdict.t->matrix());
  }
  return j;
}

Json optical_report_to_json(const optical::OpticalReport& report) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  Json g = Json::array();
  for (const auto& gk : report.g) g.push_back(complex_to_json(gk));
  j["g"] = std::move(g);
  j["kappa"] = report.kappa;
  j["t"] = report.t;
  j["norm_first_order"] = report.norm_first_order;
  j["overlap_exact_first"] = report.overlap_exact_first;
  j["w_fidelity"] = Json{{"defined", report.w_fid_exact.defined},
                         {"value", report.w_fid_exact.value},
                         {"sector_weight", report.w_fid_exact.sector_weight}};
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  Json j;
  in >> j;
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << j.dump(2) << "\n";
}

}  // namespace wlab::serialize
