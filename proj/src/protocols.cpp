#include "wlab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace wlab::protocols {

namespace {

using catalog::Pauli;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

QOperator adjoint(const QOperator& op) {
  return QOperator(op.matrix().adjoint());
}

struct Candidate {
  CMatrix m;
  bool local = true;
  std::string desc;
};

// The distinct per-qubit phase angles: 0 first, then -theta, +theta for each
// listed nonzero theta.
std::vector<double> phase_angles(const std::vector<double>& thetas) {
  std::vector<double> out = {0.0};
  for (double t : thetas) {
    if (t == 0.0) continue;
    if (std::find(out.begin(), out.end(), -t) == out.end()) out.push_back(-t);
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
  }
  return out;
}

std::string phase_tag(double angle) {
  if (angle == 0.0) return "";
  return ":ph(" + std::to_string(angle) + ")";
}

// All Pauli tuples, each factor optionally composed with a phase gate.
// Enumeration order is fixed: Pauli tuple major (I<X<Y<Z), phase tuple minor
// in phase_angles order, so the search result is deterministic.
void enumerate_pauli_like(int qubits, const std::vector<double>& angles,
                          std::vector<Candidate>& out) {
  const std::array<Pauli, 4> paulis = {Pauli::I, Pauli::X, Pauli::Y, Pauli::Z};
  const int phase_count = static_cast<int>(angles.size());
  int pauli_tuples = 1, phase_tuples = 1;
  for (int q = 0; q < qubits; ++q) {
    pauli_tuples *= 4;
    phase_tuples *= phase_count;
  }
  for (int pt = 0; pt < pauli_tuples; ++pt) {
    for (int ft = 0; ft < phase_tuples; ++ft) {
      CMatrix m = CMatrix::Identity(1, 1);
      std::string desc;
      // Decode digits, first qubit = most significant digit.
      std::vector<int> pd(qubits), fd(qubits);
      int pv = pt, fv = ft;
      for (int q = qubits - 1; q >= 0; --q) {
        pd[q] = pv % 4;
        pv /= 4;
        fd[q] = fv % phase_count;
        fv /= phase_count;
      }
      for (int q = 0; q < qubits; ++q) {
        const Pauli pk = paulis[pd[q]];
        const double angle = angles[fd[q]];
        CMatrix u = catalog::pauli(pk).matrix();
        if (angle != 0.0) u = catalog::phase_gate(angle).matrix() * u;
        m = kron(m, u);
        if (q > 0) desc += ",";
        desc += catalog::pauli_name(pk) + phase_tag(angle);
      }
      out.push_back({std::move(m), true, std::move(desc)});
    }
  }
}

std::vector<Candidate> enumerate_candidates(const SearchOptions& options,
                                            int receiver_qubits) {
  std::vector<Candidate> out;
  switch (options.space) {
    case SearchSpace::PauliLocal:
      enumerate_pauli_like(receiver_qubits, {0.0}, out);
      break;
    case SearchSpace::PauliPhaseLocal:
      enumerate_pauli_like(receiver_qubits, phase_angles(options.thetas), out);
      break;
    case SearchSpace::VTimesPauli: {
      if (receiver_qubits != 2) {
        throw std::invalid_argument(
            "v-times-pauli search requires two receiver qubits");
      }
      std::vector<Candidate> base;
      enumerate_pauli_like(2, phase_angles(options.thetas), base);
      const CMatrix vdag = catalog::v_operator().matrix().adjoint();
      out.reserve(base.size());
      for (auto& c : base) {
        out.push_back({c.m * vdag, false, "(" + c.desc + ")*V^-1"});
      }
      break;
    }
    case SearchSpace::LocalUnitarySample: {
      std::mt19937_64 rng(options.seed);
      out.reserve(options.samples);
      for (int s = 0; s < options.samples; ++s) {
        CMatrix m = CMatrix::Identity(1, 1);
        for (int q = 0; q < receiver_qubits; ++q) {
          m = kron(m, haar_unitary(2, rng));
        }
        out.push_back({std::move(m), true, "sample#" + std::to_string(s)});
      }
      break;
    }
    case SearchSpace::FullUnitarySample: {
      std::mt19937_64 rng(options.seed);
      const int dim = 1 << receiver_qubits;
      out.reserve(options.samples);
      for (int s = 0; s < options.samples; ++s) {
        out.push_back(
            {haar_unitary(dim, rng), false, "sample#" + std::to_string(s)});
      }
      break;
    }
  }
  return out;
}

// Tries to peel the leftmost party factor off a Kronecker product.
bool bipartite_factor(const CMatrix& m, int da, int db, CMatrix& a,
                      CMatrix& b) {
  CMatrix r(da * da, db * db);
  for (int i = 0; i < da; ++i) {
    for (int ip = 0; ip < da; ++ip) {
      for (int j = 0; j < db; ++j) {
        for (int jp = 0; jp < db; ++jp) {
          r(i * da + ip, j * db + jp) = m(i * db + j, ip * db + jp);
        }
      }
    }
  }
  Eigen::JacobiSVD<CMatrix> svd(r, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) < tol::phase || (sv.size() > 1 && sv(1) > 1e-9 * sv(0))) {
    return false;
  }
  const double scale = std::sqrt(sv(0));
  for (int i = 0; i < da; ++i) {
    for (int ip = 0; ip < da; ++ip) {
      a(i, ip) = scale * svd.matrixU()(i * da + ip, 0);
    }
  }
  for (int j = 0; j < db; ++j) {
    for (int jp = 0; jp < db; ++jp) {
      b(j, jp) = scale * std::conj(svd.matrixV()(j * db + jp, 0));
    }
  }
  return true;
}

}  // namespace

CMatrix haar_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix z(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      z(i, j) = Complex(gauss(rng), gauss(rng));
    }
  }
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

std::vector<QubitLabel> ChannelSpec::receiver_labels() const {
  std::set<QubitLabel> senders(sender.begin(), sender.end());
  std::vector<QubitLabel> out;
  for (const auto& l : state.labels()) {
    if (!senders.count(l)) out.push_back(l);
  }
  return out;
}

void ChannelSpec::validate() const {
  std::set<QubitLabel> assigned;
  for (const auto& l : sender) {
    if (!state.has_label(l)) {
      throw std::invalid_argument("sender label not in channel: " + l);
    }
    if (!assigned.insert(l).second) {
      throw std::invalid_argument("label assigned twice: " + l);
    }
  }
  for (const auto& party : receiver_parties) {
    for (const auto& l : party) {
      if (!state.has_label(l)) {
        throw std::invalid_argument("receiver label not in channel: " + l);
      }
      if (!assigned.insert(l).second) {
        throw std::invalid_argument("label assigned twice: " + l);
      }
    }
  }
  if (assigned.size() != state.labels().size()) {
    throw std::invalid_argument(
        "sender and receiver labels must partition the channel register");
  }
}

std::string search_space_name(SearchSpace space) {
  switch (space) {
    case SearchSpace::PauliLocal:
      return "pauli-local";
    case SearchSpace::PauliPhaseLocal:
      return "pauli-phase-local";
    case SearchSpace::VTimesPauli:
      return "v-times-pauli";
    case SearchSpace::LocalUnitarySample:
      return "local-unitary-sample";
    case SearchSpace::FullUnitarySample:
      return "full-unitary-sample";
  }
  throw std::invalid_argument("unknown search space");
}

SearchSpace parse_search_space(const std::string& name) {
  if (name == "pauli-local") return SearchSpace::PauliLocal;
  if (name == "pauli-phase-local") return SearchSpace::PauliPhaseLocal;
  if (name == "v-times-pauli") return SearchSpace::VTimesPauli;
  if (name == "local-unitary-sample") return SearchSpace::LocalUnitarySample;
  if (name == "full-unitary-sample") return SearchSpace::FullUnitarySample;
  throw std::invalid_argument("unknown search space: " + name);
}

ProtocolReport teleport(const PureState& input, const ChannelSpec& channel,
                        const MeasurementBasis& basis,
                        const RecoveryMap& recovery,
                        const PureState& reference) {
  channel.validate();
  for (const auto& l : input.labels()) {
    if (channel.state.has_label(l)) {
      throw std::invalid_argument("input label collides with channel: " + l);
    }
  }
  std::set<QubitLabel> want(input.labels().begin(), input.labels().end());
  want.insert(channel.sender.begin(), channel.sender.end());
  std::set<QubitLabel> got(basis.subset().begin(), basis.subset().end());
  if (want != got) {
    throw std::invalid_argument(
        "measurement subset must be the input qubits plus the sender's");
  }
  for (const auto& name : basis.outcome_names()) {
    if (!recovery.entries.count(name)) {
      throw std::invalid_argument("recovery map misses outcome: " + name);
    }
  }

  const std::vector<QubitLabel> receivers = channel.receiver_labels();
  const PureState total = tensor(input, channel.state);
  const auto outcomes = measure(total, basis);

  ProtocolReport report;
  const double uniform = 1.0 / static_cast<double>(outcomes.size());
  double min_fid = 1.0;
  bool all_good = true;
  for (const auto& mo : outcomes) {
    OutcomeRecord rec;
    rec.name = mo.outcome_name;
    rec.probability = mo.probability;
    rec.residual = mo.residual;
    report.prob_sum += mo.probability;
    report.max_prob_deviation =
        std::max(report.max_prob_deviation, std::abs(mo.probability - uniform));
    const RecoveryEntry& entry = recovery.entries.at(mo.outcome_name);
    rec.recovery_local = entry.local;
    if (mo.residual) {
      rec.recovered = apply(*mo.residual, entry.op, receivers);
      rec.fidelity = fidelity(*rec.recovered, reference);
      min_fid = std::min(min_fid, rec.fidelity);
      if (rec.fidelity < 1.0 - tol::phase) all_good = false;
    }
    report.outcomes.push_back(std::move(rec));
  }
  report.min_fidelity = min_fid;
  report.success =
      all_good && std::abs(report.prob_sum - 1.0) <= tol::prob;
  return report;
}

RecoveryMap RecoverySearchReport::to_recovery_map() const {
  if (!all_found) {
    throw std::runtime_error(
        "no recovery operator found for at least one outcome in space " +
        space);
  }
  RecoveryMap map;
  for (const auto& [name, res] : outcomes) {
    map.entries.emplace(name, *res.entry);
  }
  return map;
}

RecoverySearchReport find_recovery(const ChannelSpec& channel,
                                   const MeasurementBasis& basis,
                                   const SearchOptions& options,
                                   const std::vector<PureState>& probes) {
  channel.validate();
  if (probes.size() < 3) {
    throw std::invalid_argument("at least 3 probe inputs required");
  }
  const std::vector<QubitLabel> receivers = channel.receiver_labels();
  const int rq = static_cast<int>(receivers.size());
  const auto candidates = enumerate_candidates(options, rq);
  if (candidates.empty()) {
    throw std::invalid_argument("empty search space");
  }

  // Per probe: reference vector and per-outcome residual vectors, both in
  // receiver register order.
  const std::size_t n_out = basis.vectors().size();
  std::vector<CVector> refs;
  std::vector<std::vector<std::optional<CVector>>> residuals(probes.size());
  for (std::size_t p = 0; p < probes.size(); ++p) {
    refs.push_back(probes[p].relabeled(receivers).amplitudes());
    const PureState total = tensor(probes[p], channel.state);
    const auto outs = measure(total, basis);
    residuals[p].resize(n_out);
    for (std::size_t x = 0; x < n_out; ++x) {
      if (outs[x].residual) {
        residuals[p][x] = permute(*outs[x].residual, receivers).amplitudes();
      }
    }
  }

  std::vector<int> party_dims;
  for (const auto& party : channel.receiver_parties) {
    party_dims.push_back(1 << party.size());
  }

  RecoverySearchReport report;
  report.space = search_space_name(options.space);
  report.all_found = true;
  for (std::size_t x = 0; x < n_out; ++x) {
    OutcomeSearch best;
    for (const auto& cand : candidates) {
      double min_fid = 1.0;
      for (std::size_t p = 0; p < probes.size(); ++p) {
        if (!residuals[p][x]) continue;
        const Complex ov = refs[p].dot(cand.m * *residuals[p][x]);
        min_fid = std::min(min_fid, std::norm(ov));
      }
      if (min_fid > best.best_fidelity || !best.entry) {
        best.best_fidelity = min_fid;
        RecoveryEntry entry{QOperator(cand.m), cand.local, report.space,
                            cand.desc};
        if (options.space == SearchSpace::VTimesPauli ||
            options.space == SearchSpace::FullUnitarySample) {
          entry.local = is_local_across(cand.m, party_dims);
        }
        best.entry = std::move(entry);
      }
      if (min_fid >= 1.0 - tol::phase) {
        best.found = true;
        break;  // first passing candidate in enumeration order wins
      }
    }
    if (!best.found) report.all_found = false;
    report.outcomes.emplace(basis.outcome_names()[x], std::move(best));
  }
  return report;
}

std::vector<PureState> epr_family_probes(std::vector<QubitLabel> labels) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector a = CVector::Zero(4), b = CVector::Zero(4), c = CVector::Zero(4),
          d = CVector::Zero(4);
  a(1) = 1.0;
  b(2) = 1.0;
  c(1) = s;
  c(2) = s;
  d(1) = s;
  d(2) = Complex(0.0, s);
  return {PureState(labels, a), PureState(labels, b), PureState(labels, c),
          PureState(labels, d)};
}

std::vector<PureState> ghz_family_probes(std::vector<QubitLabel> labels) {
  const double s = 1.0 / std::sqrt(2.0);
  CVector a = CVector::Zero(8), b = CVector::Zero(8), c = CVector::Zero(8),
          d = CVector::Zero(8);
  a(0) = 1.0;
  b(7) = 1.0;
  c(0) = s;
  c(7) = s;
  d(0) = s;
  d(7) = Complex(0.0, s);
  return {PureState(labels, a), PureState(labels, b), PureState(labels, c),
          PureState(labels, d)};
}

ChannelSpec transform_channel(const ChannelSpec& channel, const QOperator& t,
                              const std::vector<QubitLabel>& targets) {
  channel.validate();
  const auto receivers = channel.receiver_labels();
  for (const auto& l : targets) {
    if (std::find(receivers.begin(), receivers.end(), l) == receivers.end()) {
      throw std::invalid_argument(
          "channel transformation may only touch receiver qubits, not " + l);
    }
  }
  ChannelSpec out = channel;
  out.state = apply(channel.state, t, targets);
  return out;
}

RecoveryMap transform_recovery(const RecoveryMap& recovery, const QOperator& t,
                               const std::vector<int>& party_dims) {
  RecoveryMap out;
  for (const auto& [name, entry] : recovery.entries) {
    if (t.arity() != entry.op.arity()) {
      throw std::invalid_argument(
          "transform operator must act on all receiver qubits");
    }
    RecoveryEntry e{
        QOperator(t.matrix() * entry.op.matrix() * t.matrix().adjoint()), true,
        entry.search_space, "T*(" + entry.op_desc + ")*T^-1"};
    e.local = is_local_across(e.op.matrix(), party_dims);
    out.entries.emplace(name, std::move(e));
  }
  return out;
}

MeasurementBasis transform_input(const MeasurementBasis& basis,
                                 const QOperator& r,
                                 const std::vector<QubitLabel>& targets,
                                 const std::vector<QubitLabel>& channel_labels) {
  for (const auto& l : targets) {
    if (std::find(channel_labels.begin(), channel_labels.end(), l) !=
        channel_labels.end()) {
      throw std::invalid_argument(
          "input transformation may not touch channel qubit " + l);
    }
  }
  std::vector<CVector> vectors;
  vectors.reserve(basis.vectors().size());
  for (const auto& v : basis.vectors()) {
    const PureState s(basis.subset(), v);
    vectors.push_back(apply(s, r, targets).amplitudes());
  }
  return MeasurementBasis(basis.subset(), std::move(vectors),
                          basis.outcome_names());
}

namespace {

ChannelSpec ghz4_channel() {
  return ChannelSpec{catalog::ghz(4), {"A"}, {{"B"}, {"C"}, {"D"}}};
}

void require_family(const PureState& input,
                    const std::vector<Eigen::Index>& support,
                    const std::string& what) {
  for (Eigen::Index i = 0; i < input.dim(); ++i) {
    if (std::find(support.begin(), support.end(), i) != support.end()) continue;
    if (std::abs(input.amplitude(i)) > tol::norm) {
      throw std::invalid_argument("input is not of the form " + what);
    }
  }
}

}  // namespace

ProtocolReport teleport_ghz4(const PureState& input, double theta1,
                             double theta2) {
  if (input.num_qubits() != 3) {
    throw std::invalid_argument("teleport_ghz4 expects a 3-qubit input");
  }
  require_family(input, {0, 7}, "alpha|000> + beta|111>");
  const ChannelSpec ch = ghz4_channel();
  std::vector<QubitLabel> subset = input.labels();
  subset.push_back("A");
  const MeasurementBasis basis =
      catalog::ghz4_teleport_basis(theta1, theta2, subset);
  const auto search = find_recovery(
      ch, basis, {SearchSpace::PauliPhaseLocal, {theta1, theta2}, 0, 0},
      ghz_family_probes(input.labels()));
  return teleport(input, ch, basis, search.to_recovery_map(),
                  input.relabeled({"B", "C", "D"}));
}

ProtocolReport teleport_w3_via_ghz4(const PureState& input, double theta1,
                                    double theta2) {
  if (input.num_qubits() != 3) {
    throw std::invalid_argument("teleport_w3_via_ghz4 expects 3 qubits");
  }
  require_family(input, {1, 2, 4}, "alpha|100> + beta|0 Psi+>");
  if (std::abs(input.amplitude(1) - input.amplitude(2)) > tol::norm) {
    throw std::invalid_argument("input is not of the form alpha|100> + beta|0 Psi+>");
  }
  const QOperator v = catalog::v_operator();
  const std::vector<QubitLabel> pair = {input.labels()[1], input.labels()[2]};
  const PureState pre_image = apply(input, adjoint(v), pair);
  require_family(pre_image, {0, 7}, "alpha|000> + beta|111>");

  const ChannelSpec ch = ghz4_channel();
  std::vector<QubitLabel> subset = input.labels();
  subset.push_back("A");
  const MeasurementBasis basis =
      catalog::ghz4_teleport_basis(theta1, theta2, subset);
  const auto search = find_recovery(
      ch, basis, {SearchSpace::PauliPhaseLocal, {theta1, theta2}, 0, 0},
      ghz_family_probes(input.labels()));
  const MeasurementBasis rotated = transform_input(basis, v, pair);
  return teleport(input, ch, rotated, search.to_recovery_map(),
                  pre_image.relabeled({"B", "C", "D"}));
}

DenseEncoding dense_encode(int message) {
  if (message < 0 || message > 7) {
    throw std::invalid_argument("dense message must be 3 bits");
  }
  static const std::array<DenseEncoding, 8> table = [] {
    const PureState ghz3 = catalog::ghz(3);
    const MeasurementBasis basis = catalog::phi_prime_basis();
    std::array<std::optional<DenseEncoding>, 8> found;
    const std::array<Pauli, 4> paulis = {Pauli::I, Pauli::X, Pauli::Y,
                                         Pauli::Z};
    for (int m = 0; m < 8; ++m) {
      const PureState target({"A", "B", "C"}, basis.vectors()[m]);
      for (Pauli pb : paulis) {
        for (Pauli pc : paulis) {
          PureState s = apply(ghz3, catalog::pauli(pb), {"B"});
          s = apply(s, catalog::pauli(pc), {"C"});
          if (equal_up_to_global_phase(s, target, 1e-12)) {
            if (!found[m]) {
              found[m] = DenseEncoding{pb, pc, catalog::pauli(pb),
                                       catalog::pauli(pc)};
            }
          }
        }
      }
    }
    std::array<DenseEncoding, 8> out = {
        *found[0], *found[1], *found[2], *found[3],
        *found[4], *found[5], *found[6], *found[7]};
    return out;
  }();
  return table[message];
}

DenseDecodeResult dense_decode(const PureState& state) {
  if (state.num_qubits() != 3) {
    throw std::invalid_argument("dense_decode expects a 3-qubit state");
  }
  const MeasurementBasis basis = catalog::phi_prime_basis(state.labels());
  const auto outcomes = measure(state, basis);
  DenseDecodeResult result;
  double best = -1.0;
  for (const auto& o : outcomes) {
    result.probabilities.push_back(o.probability);
    if (o.probability > best) {
      best = o.probability;
      result.message = o.outcome_index;
    }
  }
  result.deterministic = best >= 1.0 - tol::prob;
  return result;
}

DenseCodeReport dense_roundtrip(int message, const PureState& channel) {
  if (channel.num_qubits() != 3) {
    throw std::invalid_argument("dense coding needs a 3-qubit channel");
  }
  const DenseEncoding enc = dense_encode(message);
  PureState encoded = apply(channel, enc.b_op, {channel.labels()[1]});
  encoded = apply(encoded, enc.c_op, {channel.labels()[2]});
  const DenseDecodeResult dec = dense_decode(encoded);
  DenseCodeReport report;
  report.message = message;
  report.b_name = catalog::pauli_name(enc.b);
  report.c_name = catalog::pauli_name(enc.c);
  report.decoded = dec.message;
  report.deterministic = dec.deterministic;
  report.success = dec.deterministic && dec.message == message;
  return report;
}

SuitabilityReport check_channel_suitability(
    const ChannelSpec& channel, const MeasurementBasis& basis,
    const std::vector<PureState>& probes, const SearchOptions& options) {
  if (probes.size() < 3) {
    throw std::invalid_argument("at least 3 probe inputs required");
  }
  std::vector<std::vector<double>> probs;  // [probe][outcome]
  for (const auto& probe : probes) {
    const auto outs = measure(tensor(probe, channel.state), basis);
    std::vector<double> row;
    for (const auto& o : outs) row.push_back(o.probability);
    probs.push_back(std::move(row));
  }
  SuitabilityReport report;
  for (std::size_t x = 0; x < basis.outcome_names().size(); ++x) {
    double dev = 0.0;
    for (std::size_t p = 1; p < probes.size(); ++p) {
      dev = std::max(dev, std::abs(probs[p][x] - probs[0][x]));
    }
    report.per_outcome.push_back({basis.outcome_names()[x], dev});
    report.max_probability_deviation =
        std::max(report.max_probability_deviation, dev);
  }
  report.probabilities_input_independent =
      report.max_probability_deviation <= tol::prob;
  report.recovery_found =
      find_recovery(channel, basis, options, probes).all_found;
  report.suitable =
      report.probabilities_input_independent && report.recovery_found;
  return report;
}

bool is_local_across(const CMatrix& m, const std::vector<int>& party_dims) {
  if (party_dims.size() <= 1) return true;
  const int da = party_dims.front();
  int db = 1;
  for (std::size_t i = 1; i < party_dims.size(); ++i) db *= party_dims[i];
  if (da * db != m.rows()) {
    throw std::invalid_argument("party dimensions do not match the matrix");
  }
  CMatrix a(da, da), b(db, db);
  if (!bipartite_factor(m, da, db, a, b)) return false;
  return is_local_across(
      b, std::vector<int>(party_dims.begin() + 1, party_dims.end()));
}

}  // namespace wlab::protocols
