#include "wlab/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "wlab/analysis.hpp"
#include "wlab/catalog.hpp"
#include "wlab/optical.hpp"
#include "wlab/serialize.hpp"
#include "wlab/suite.hpp"

namespace wlab::cli {

namespace {

using serialize::Json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_real(const std::string& text) {
  std::size_t used = 0;
  const double value = std::stod(text, &used);
  if (used != text.size()) {
    throw std::invalid_argument("malformed number: " + text);
  }
  return value;
}

protocols::ChannelSpec spec_from_state(PureState state) {
  if (state.num_qubits() < 3) {
    throw std::invalid_argument("a channel needs at least 3 qubits");
  }
  const auto labels = state.labels();
  std::vector<std::vector<QubitLabel>> parties;
  for (std::size_t i = 1; i < labels.size(); ++i) {
    parties.push_back({labels[i]});
  }
  return {std::move(state), {labels[0]}, std::move(parties)};
}

catalog::WClassParams parse_wclass_params(const std::string& args) {
  const auto parts = split(args, ',');
  if (parts.size() != 3 && parts.size() != 4) {
    throw std::invalid_argument("w-class wants a,b,c[,d]");
  }
  catalog::WClassParams p;
  p.a = parse_real(parts[0]);
  p.b = parse_real(parts[1]);
  p.c = parse_real(parts[2]);
  p.d = parts.size() == 4 ? parse_real(parts[3]) : 0.0;
  return p;
}

catalog::GhzClassParams parse_ghzclass_params(const std::string& selector) {
  if (selector == "ghz3") {
    const double s = 1.0 / std::sqrt(2.0);
    return {s, s};
  }
  if (selector == "f-ghz") {
    return {std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0)};
  }
  if (selector.rfind("ghz-class:", 0) == 0) {
    const auto parts = split(selector.substr(10), ',');
    if (parts.size() != 2) {
      throw std::invalid_argument("ghz-class wants a,b");
    }
    return {parse_complex(parts[0]), parse_complex(parts[1])};
  }
  throw std::invalid_argument("not a GHZ-class selector: " + selector);
}

int parse_phi_prime_index(const std::string& args) {
  const auto parts = split(args, ',');
  if (parts.size() != 2) {
    throw std::invalid_argument("phi-prime wants x,sign");
  }
  int x = -1;
  if (parts[0] == "00" || parts[0] == "0") x = 0;
  if (parts[0] == "01" || parts[0] == "1") x = 1;
  if (parts[0] == "10" || parts[0] == "2") x = 2;
  if (parts[0] == "11" || parts[0] == "3") x = 3;
  if (x < 0) throw std::invalid_argument("phi-prime x must be a 2-bit value");
  int s = -1;
  if (parts[1] == "+" || parts[1] == "plus") s = 0;
  if (parts[1] == "-" || parts[1] == "minus") s = 1;
  if (s < 0) throw std::invalid_argument("phi-prime sign must be + or -");
  return 2 * x + s;
}

Json state_summary(const PureState& state) {
  return serialize::state_to_json(state);
}

Json amplitudes_json(const std::vector<Complex>& amps) {
  Json out = Json::array();
  for (const auto& a : amps) out.push_back(Json::array({a.real(), a.imag()}));
  return out;
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

CommandResult usage_error(const std::string& message) {
  return {2, "error: " + message + "\n"};
}

CommandResult emit(const Json& j, const std::string& format,
                   const std::string& pretty_text = {}) {
  if (format == "pretty" && !pretty_text.empty()) {
    return {0, pretty_text};
  }
  return {0, j.dump(2) + "\n"};
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) throw std::invalid_argument("empty amplitude");
  if (s.back() != 'j') {
    return Complex(parse_real(s), 0.0);
  }
  s.pop_back();
  // Find the sign that separates the real part from the imaginary part.
  std::size_t cut = std::string::npos;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      cut = i;  // keep the last such sign: "1e-3+2j" cuts at '+'
    }
  }
  if (cut == std::string::npos) {
    if (s.empty() || s == "+") return Complex(0.0, 1.0);
    if (s == "-") return Complex(0.0, -1.0);
    return Complex(0.0, parse_real(s));
  }
  const std::string imag = s.substr(cut);
  const double im = (imag == "+")   ? 1.0
                    : (imag == "-") ? -1.0
                                    : parse_real(imag);
  return Complex(parse_real(s.substr(0, cut)), im);
}

std::vector<Complex> parse_amplitudes(const std::string& text) {
  std::vector<Complex> out;
  for (const auto& part : split(text, ',')) {
    out.push_back(parse_complex(part));
  }
  return out;
}

ParsedChannel parse_channel(const std::string& selector) {
  if (selector == "ghz3") {
    return {spec_from_state(catalog::ghz(3)), selector};
  }
  if (selector == "ghz4") {
    return {spec_from_state(catalog::ghz(4)), selector};
  }
  if (selector == "f-ghz") {
    return {spec_from_state(catalog::f_ghz()), selector};
  }
  if (selector == "w") {
    return {spec_from_state(catalog::w_state()), selector};
  }
  if (selector == "w-tilde") {
    return {spec_from_state(catalog::w_tilde()), selector};
  }
  if (selector.rfind("ghz-class:", 0) == 0) {
    return {spec_from_state(
                catalog::ghz_class(parse_ghzclass_params(selector))),
            selector};
  }
  if (selector.rfind("w-class:", 0) == 0) {
    // The sqrt(a) slot sits on the sender's qubit A.
    const auto params = parse_wclass_params(selector.substr(8));
    PureState state = catalog::w_class(params, {"B", "C", "A"});
    return {{std::move(state), {"A"}, {{"B"}, {"C"}}}, selector};
  }
  if (selector.rfind("phi-prime:", 0) == 0) {
    const int idx = parse_phi_prime_index(selector.substr(10));
    const MeasurementBasis basis = catalog::phi_prime_basis();
    return {spec_from_state(PureState({"A", "B", "C"}, basis.vectors()[idx])),
            selector};
  }
  if (selector.rfind("w-family:", 0) == 0) {
    const int k = static_cast<int>(parse_real(selector.substr(9)));
    const auto family = analysis::w_channel_family();
    if (k < 0 || k >= static_cast<int>(family.size())) {
      throw std::invalid_argument("w-family index must be 0..7");
    }
    return {family[static_cast<std::size_t>(k)], selector};
  }
  if (selector.rfind("file:", 0) == 0) {
    PureState state = serialize::state_from_json(
        serialize::load_json_file(selector.substr(5)));
    return {spec_from_state(std::move(state)), selector};
  }
  throw std::invalid_argument("unknown channel selector: " + selector);
}

CommandResult cmd_teleport(const TeleportOptions& opt) {
  try {
    const ParsedChannel channel = parse_channel(opt.channel);
    channel.spec.validate();
    const auto receivers = channel.spec.receiver_labels();
    const int n_recv = static_cast<int>(receivers.size());
    if (n_recv != 2 && n_recv != 3) {
      return usage_error("teleport supports 2- or 3-receiver channels");
    }

    auto amps = parse_amplitudes(opt.input);
    if (amps.size() != 2) {
      return usage_error("--input wants the two family coefficients");
    }
    const double norm =
        std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
    if (norm <= tol::zero) {
      return usage_error("input amplitudes must not all vanish");
    }
    const bool normalized = std::abs(norm - 1.0) > tol::norm;
    amps[0] /= norm;
    amps[1] /= norm;

    std::string family = opt.family;
    if (family == "auto") family = (n_recv == 2) ? "epr" : "ghz";
    if ((family == "epr") != (n_recv == 2) && family != "w3") {
      return usage_error("family " + family +
                         " does not fit a channel with " +
                         std::to_string(n_recv) + " receivers");
    }
    if (family == "w3" && n_recv != 3) {
      return usage_error("family w3 needs a four-qubit channel");
    }

    PureState input = [&] {
      if (family == "epr") {
        CVector v = CVector::Zero(4);
        v(1) = amps[0];
        v(2) = amps[1];
        return PureState({"1", "2"}, std::move(v));
      }
      CVector v = CVector::Zero(8);
      if (family == "ghz") {
        v(0) = amps[0];
        v(7) = amps[1];
      } else {
        const double s = 1.0 / std::sqrt(2.0);
        v(4) = amps[0];
        v(1) = amps[1] * s;
        v(2) = amps[1] * s;
      }
      return PureState({"1", "2", "3"}, std::move(v));
    }();

    const std::string sender = channel.spec.sender[0];
    MeasurementBasis basis =
        (n_recv == 2)
            ? catalog::ghz_teleport_basis(opt.theta, {"1", "2", sender})
            : catalog::ghz4_teleport_basis(opt.theta, opt.theta2,
                                           {"1", "2", "3", sender});

    protocols::SearchOptions search;
    search.space = opt.search.empty()
                       ? protocols::SearchSpace::PauliPhaseLocal
                       : protocols::parse_search_space(opt.search);
    search.thetas = (n_recv == 2) ? std::vector<double>{opt.theta}
                                  : std::vector<double>{opt.theta, opt.theta2};
    search.seed = opt.seed;
    const auto probes = (n_recv == 2)
                            ? protocols::epr_family_probes()
                            : protocols::ghz_family_probes();
    const auto found = protocols::find_recovery(channel.spec, basis, search,
                                                probes);
    protocols::RecoveryMap map;
    for (const auto& [name, res] : found.outcomes) {
      map.entries.emplace(name, *res.entry);  // best effort when not found
    }

    PureState reference = input.relabeled(receivers);
    if (family == "w3") {
      const QOperator vdag(catalog::v_operator().matrix().adjoint());
      reference = apply(input, vdag, {"2", "3"}).relabeled(receivers);
      basis = protocols::transform_input(basis, catalog::v_operator(),
                                         {"2", "3"});
    }
    auto report = protocols::teleport(input, channel.spec, basis, map,
                                      reference);
    const double fid_tol = opt.tol_override.value_or(tol::phase);
    report.success = report.min_fidelity >= 1.0 - fid_tol &&
                     std::abs(report.prob_sum - 1.0) <= tol::prob;

    const auto suitability = protocols::check_channel_suitability(
        channel.spec, basis, probes, search);

    Json j;
    j["schema_version"] = serialize::kSchemaVersion;
    j["channel"] = channel.name;
    j["family"] = family;
    j["input"] = Json{{"amplitudes", amplitudes_json(amps)},
                      {"auto_normalized", normalized}};
    j["theta"] = opt.theta;
    if (n_recv == 3) j["theta2"] = opt.theta2;
    j["search_space"] = found.space;
    j["recovery_all_found"] = found.all_found;
    j["suitable"] = suitability.suitable;
    j["max_probability_deviation_across_probes"] =
        suitability.max_probability_deviation;
    j["report"] = serialize::protocol_report_to_json(report);

    if (opt.shots > 0) {
      std::mt19937_64 rng(opt.seed);
      std::map<std::string, int> histogram;
      for (int s = 0; s < opt.shots; ++s) {
        double u = uniform01(rng);
        std::size_t pick = report.outcomes.size() - 1;
        for (std::size_t x = 0; x < report.outcomes.size(); ++x) {
          u -= report.outcomes[x].probability;
          if (u <= 0.0) {
            pick = x;
            break;
          }
        }
        ++histogram[report.outcomes[pick].name];
      }
      Json h;
      for (const auto& [name, count] : histogram) h[name] = count;
      j["shots"] = Json{{"count", opt.shots}, {"seed", opt.seed},
                        {"histogram", std::move(h)}};
    }

    std::ostringstream pretty;
    pretty << "channel " << channel.name << ", family " << family
           << ", search " << found.space << "\n";
    for (const auto& o : report.outcomes) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-14s p=%.6f fid=%.9f %s\n",
                    o.name.c_str(), o.probability, o.fidelity,
                    o.recovery_local ? "local" : "non-local");
      pretty << line;
    }
    pretty << (report.success ? "teleportation exact" : "teleportation inexact")
           << ", channel " << (suitability.suitable ? "suitable" : "unsuitable")
           << "\n";
    return emit(j, opt.format, pretty.str());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_dense(const DenseOptions& opt) {
  try {
    int message = -1;
    if (opt.message.size() == 3 &&
        opt.message.find_first_not_of("01") == std::string::npos) {
      message = std::stoi(opt.message, nullptr, 2);
    } else if (opt.message.size() == 1 && opt.message[0] >= '0' &&
               opt.message[0] <= '7') {
      message = opt.message[0] - '0';
    } else {
      return usage_error("--message wants three bits, e.g. 101");
    }
    const ParsedChannel channel = parse_channel(opt.channel);
    const auto report =
        protocols::dense_roundtrip(message, channel.spec.state);

    auto bits = [](int m) {
      std::string s = "000";
      for (int k = 0; k < 3; ++k) s[2 - k] = ((m >> k) & 1) ? '1' : '0';
      return s;
    };
    Json j = serialize::dense_report_to_json(report);
    j["channel"] = channel.name;
    j["message_bits"] = bits(report.message);
    j["decoded_bits"] = report.decoded >= 0 ? bits(report.decoded) : "";

    std::ostringstream pretty;
    pretty << "message " << bits(report.message) << " encoded as B=" <<
        report.b_name << " C=" << report.c_name << ", decoded "
           << (report.decoded >= 0 ? bits(report.decoded) : "none")
           << (report.deterministic ? " (deterministic)" : " (ambiguous)")
           << "\n";
    return emit(j, opt.format, pretty.str());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_probe(const ProbeOptions& opt) {
  try {
    std::vector<double> thetas;
    if (opt.sweep_theta.empty()) {
      thetas.push_back(opt.theta);
    } else {
      const auto parts = split(opt.sweep_theta, ':');
      if (parts.size() != 3) {
        return usage_error("--sweep-theta wants start:end:points");
      }
      const double start = parse_real(parts[0]);
      const double end = parse_real(parts[1]);
      const int points = static_cast<int>(parse_real(parts[2]));
      if (points < 1) return usage_error("sweep wants at least one point");
      for (int i = 0; i < points; ++i) {
        thetas.push_back(points == 1 ? start
                                     : start + (end - start) * i / (points - 1));
      }
    }

    std::vector<std::pair<double, analysis::ComparisonReport>> reports;
    Json params_json;
    if (opt.formula == "wclass") {
      if (opt.channel.rfind("w-class:", 0) != 0) {
        return usage_error("--formula wclass wants a w-class:a,b,c[,d] channel");
      }
      const auto params = parse_wclass_params(opt.channel.substr(8));
      auto amps = parse_amplitudes(opt.input.empty() ? "1,0,0,0" : opt.input);
      if (amps.size() != 4) {
        return usage_error("wclass input wants gamma,alpha,beta,delta");
      }
      double n = 0.0;
      for (const auto& a : amps) n += std::norm(a);
      n = std::sqrt(n);
      for (auto& a : amps) a /= n;
      const analysis::GeneralTwoQubitInput input{amps[0], amps[1], amps[2],
                                                 amps[3]};
      for (double theta : thetas) {
        reports.emplace_back(
            theta, analysis::compare_wclass_probabilities(input, params, theta));
      }
      params_json = Json{{"a", params.a}, {"b", params.b}, {"c", params.c},
                         {"d", params.d}};
    } else if (opt.formula == "ghzclass") {
      const auto params = parse_ghzclass_params(opt.channel);
      auto amps = parse_amplitudes(opt.input.empty() ? "1,0" : opt.input);
      if (amps.size() != 2) {
        return usage_error("ghzclass input wants alpha,beta");
      }
      const double n = std::sqrt(std::norm(amps[0]) + std::norm(amps[1]));
      for (auto& a : amps) a /= n;
      for (double theta : thetas) {
        reports.emplace_back(theta,
                             analysis::compare_ghzclass_probabilities(
                                 amps[0], amps[1], params, theta));
      }
      params_json = Json{{"a", Json::array({params.a.real(), params.a.imag()})},
                         {"b", Json::array({params.b.real(), params.b.imag()})}};
    } else {
      return usage_error("--formula wants wclass or ghzclass");
    }

    if (opt.format == "csv") {
      std::string csv = "theta,outcome,formula,simulated,diff\n";
      char buf[192];
      for (const auto& [theta, report] : reports) {
        for (const auto& row : report.rows) {
          std::snprintf(buf, sizeof(buf), "%.17g,%s,%.17g,%.17g,%.17g\n",
                        theta, row.outcome.c_str(), row.formula, row.simulated,
                        row.abs_diff);
          csv += buf;
        }
      }
      return {0, csv};
    }

    Json j;
    j["schema_version"] = serialize::kSchemaVersion;
    j["formula"] = opt.formula;
    j["channel"] = opt.channel;
    j["params"] = std::move(params_json);
    Json sweeps = Json::array();
    double worst = 0.0;
    for (const auto& [theta, report] : reports) {
      Json entry = serialize::comparison_to_json(report);
      entry["theta"] = theta;
      worst = std::max(worst, report.max_abs_diff);
      sweeps.push_back(std::move(entry));
    }
    j["sweeps"] = std::move(sweeps);
    j["max_abs_diff"] = worst;
    return emit(j, opt.format);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_convert(const ConvertOptions& opt) {
  try {
    const auto src = parse_ghzclass_params(opt.src);
    const auto dst = parse_ghzclass_params(opt.dst);
    const auto verdict = analysis::convertible_two_particle(src, dst);
    Json j = serialize::verdict_to_json(verdict);
    j["src"] = opt.src;
    j["dst"] = opt.dst;
    if (!verdict.convertible) {
      const double best = analysis::best_sampled_conversion_fidelity(
          src, dst, opt.samples, opt.seed);
      j["sampled_refutation"] =
          Json{{"samples", opt.samples}, {"seed", opt.seed},
               {"best_fidelity", best}, {"refuted", best < 1.0 - 1e-6}};
    }
    std::ostringstream pretty;
    pretty << opt.src << " -> " << opt.dst << ": "
           << (verdict.convertible ? "convertible" : "not convertible") << "\n"
           << verdict.reason << "\n";
    return emit(j, opt.format, pretty.str());
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_optical(const OpticalOptions& opt) {
  try {
    const auto g = parse_amplitudes(opt.g);
    if (g.size() != 3) return usage_error("--g wants three couplings");
    optical::OpticalParams p;
    p.g = {g[0], g[1], g[2]};
    p.pump = parse_complex(opt.pump);
    p.q = opt.q;
    p.t = opt.t;
    if (p.t < 0.0) return usage_error("--t must be nonnegative");
    if (std::norm(p.g[0]) + std::norm(p.g[1]) + std::norm(p.g[2]) <=
        tol::zero) {
      return usage_error("couplings must not all vanish");
    }
    const Json j = serialize::optical_report_to_json(optical::report(p));
    return emit(j, opt.format);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_find_recovery(const FindRecoveryOptions& opt) {
  try {
    const ParsedChannel channel = parse_channel(opt.channel);
    const auto receivers = channel.spec.receiver_labels();
    const int n_recv = static_cast<int>(receivers.size());
    if (n_recv != 2 && n_recv != 3) {
      return usage_error("find-recovery supports 2- or 3-receiver channels");
    }
    const std::string sender = channel.spec.sender[0];
    const MeasurementBasis basis =
        (n_recv == 2)
            ? catalog::ghz_teleport_basis(opt.theta, {"1", "2", sender})
            : catalog::ghz4_teleport_basis(opt.theta, opt.theta2,
                                           {"1", "2", "3", sender});
    protocols::SearchOptions search;
    search.space = protocols::parse_search_space(opt.search);
    search.thetas = (n_recv == 2) ? std::vector<double>{opt.theta}
                                  : std::vector<double>{opt.theta, opt.theta2};
    search.samples = opt.samples;
    search.seed = opt.seed;
    const auto probes = (n_recv == 2) ? protocols::epr_family_probes()
                                      : protocols::ghz_family_probes();
    const auto report =
        protocols::find_recovery(channel.spec, basis, search, probes);

    Json j = serialize::search_report_to_json(report);
    j["channel"] = channel.name;
    j["theta"] = opt.theta;
    if (n_recv == 3) j["theta2"] = opt.theta2;
    if (report.all_found) {
      j["map"] = serialize::recovery_map_to_json(report.to_recovery_map());
    }
    return emit(j, opt.format);
  } catch (const std::exception& e) {
    return usage_error(e.what());
  }
}

CommandResult cmd_verify(const VerifyOptions& opt) {
  const auto result = suite::run_all();
  CommandResult out;
  out.exit_code = result.passed() ? 0 : 1;
  if (opt.format == "json") {
    Json j;
    j["schema_version"] = serialize::kSchemaVersion;
    Json checks = Json::array();
    for (const auto& c : result.checks) {
      checks.push_back(Json{{"name", c.name},
                            {"status", suite::status_name(c.status)},
                            {"metric", c.metric},
                            {"tolerance", c.tolerance},
                            {"detail", c.detail}});
    }
    j["checks"] = std::move(checks);
    j["passed"] = result.passed();
    out.output = j.dump(2) + "\n";
  } else {
    out.output = suite::render_lines(result);
  }
  return out;
}

int deliver(const CommandResult& result, const std::string& out_path) {
  if (result.exit_code == 2 || out_path.empty()) {
    (result.exit_code == 0 ? std::cout : std::cerr) << result.output;
    return result.exit_code;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return 2;
  }
  out << result.output;
  return result.exit_code;
}

}  // namespace wlab::cli
