#pragma once

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "wlab/catalog.hpp"
#include "wlab/qcore.hpp"

namespace wlab::protocols {

/// Shared entangled state plus the split of its qubits between the sender
/// (who measures) and the receiving parties (who recover).
struct ChannelSpec {
  PureState state;
  std::vector<QubitLabel> sender;
  std::vector<std::vector<QubitLabel>> receiver_parties;

  /// Receiver qubits in the order they appear in the channel register.
  std::vector<QubitLabel> receiver_labels() const;
  void validate() const;
};

struct RecoveryEntry {
  QOperator op;
  bool local = true;  // tensor product across receiver parties
  std::string search_space;
  std::string op_desc;
};

struct RecoveryMap {
  std::map<std::string, RecoveryEntry> entries;  // keyed by outcome name
};

struct OutcomeRecord {
  std::string name;
  double probability = 0.0;
  std::optional<PureState> residual;   // before recovery
  std::optional<PureState> recovered;  // after recovery
  double fidelity = 0.0;               // vs. the reference state
  bool recovery_local = true;
};

struct ProtocolReport {
  std::vector<OutcomeRecord> outcomes;
  double prob_sum = 0.0;
  double min_fidelity = 0.0;
  double max_prob_deviation = 0.0;  // max |p - 1/N| over outcomes
  bool success = false;             // all fidelities >= 1 - tol::phase
};

/// Runs the full protocol: tensor the input with the channel, measure in the
/// given basis, apply the per-outcome recovery to the residual and score it
/// against the reference state on the receiver qubits.
ProtocolReport teleport(const PureState& input, const ChannelSpec& channel,
                        const MeasurementBasis& basis,
                        const RecoveryMap& recovery,
                        const PureState& reference);

enum class SearchSpace {
  PauliLocal,
  PauliPhaseLocal,   // Paulis composed per qubit with phase_gate(+/- theta)
  VTimesPauli,       // phase-augmented Pauli pair composed with the inverse of
                     // v_operator applied first: candidates (B (x) C) V^-1
  LocalUnitarySample,  // seeded Haar samples of per-qubit unitaries
  FullUnitarySample    // seeded Haar samples on the whole receiver space
};

std::string search_space_name(SearchSpace space);
SearchSpace parse_search_space(const std::string& name);

struct SearchOptions {
  SearchSpace space = SearchSpace::PauliLocal;
  /// Measurement-basis angles; each per-qubit factor may pick up a
  /// phase_gate(+/- theta) for any listed theta. Empty means bare Paulis.
  std::vector<double> thetas = {};
  int samples = 10000;           // sampled spaces only
  unsigned long long seed = 1;   // sampled spaces only
};

struct OutcomeSearch {
  bool found = false;
  double best_fidelity = 0.0;  // min over probes, best over candidates
  std::optional<RecoveryEntry> entry;
};

struct RecoverySearchReport {
  std::map<std::string, OutcomeSearch> outcomes;
  bool all_found = false;
  std::string space;

  RecoveryMap to_recovery_map() const;  // throws unless all_found
};

/// Per-outcome brute-force search for an operator in the requested space
/// that restores every probe input with fidelity >= 1 - tol::phase.
/// Ties are broken by enumeration order, so the result is deterministic.
RecoverySearchReport find_recovery(const ChannelSpec& channel,
                                   const MeasurementBasis& basis,
                                   const SearchOptions& options,
                                   const std::vector<PureState>& probes);

/// Probes spanning the two-qubit family alpha|01> + beta|10>.
std::vector<PureState> epr_family_probes(
    std::vector<QubitLabel> labels = {"1", "2"});
/// Probes spanning the three-qubit family alpha|000> + beta|111>.
std::vector<PureState> ghz_family_probes(
    std::vector<QubitLabel> labels = {"1", "2", "3"});

/// Unitary t applied to receiver qubits turns one channel into another.
ChannelSpec transform_channel(const ChannelSpec& channel, const QOperator& t,
                              const std::vector<QubitLabel>& targets);
/// The matching recovery update: each operator is conjugated, R -> t R t^-1,
/// so the transformed channel reproduces the original probabilities and
/// fidelities against the transformed reference.
RecoveryMap transform_recovery(const RecoveryMap& recovery, const QOperator& t,
                               const std::vector<int>& party_dims);
/// Unitary r applied to the input-qubit slots of each basis vector; the
/// transformed basis teleports r(input) with the original recovery map.
/// Labels listed in channel_labels (typically the sender's) are rejected as
/// targets.
MeasurementBasis transform_input(const MeasurementBasis& basis,
                                 const QOperator& r,
                                 const std::vector<QubitLabel>& targets,
                                 const std::vector<QubitLabel>& channel_labels = {});

/// 4-qubit channel protocol for inputs alpha|000> + beta|111> on (1,2,3).
ProtocolReport teleport_ghz4(const PureState& input, double theta1 = 0.0,
                             double theta2 = 0.0);
/// Same channel carrying the three-qubit family alpha|100> + beta|0 Psi+>,
/// via the basis rotated by v_operator on input qubits (2,3). The receivers
/// end in the pre-rotation state alpha|000> + beta|111>.
ProtocolReport teleport_w3_via_ghz4(const PureState& input, double theta1 = 0.0,
                                    double theta2 = 0.0);

struct DenseEncoding {
  catalog::Pauli b;
  catalog::Pauli c;
  QOperator b_op;
  QOperator c_op;
};

/// Local Pauli pair that maps the 3-qubit GHZ state onto the phi-prime basis
/// vector indexed by the 3-bit message.
DenseEncoding dense_encode(int message);

struct DenseDecodeResult {
  int message = -1;
  bool deterministic = false;
  std::vector<double> probabilities;
};

/// Measures in the phi-prime basis; deterministic iff one outcome carries all
/// probability.
DenseDecodeResult dense_decode(const PureState& state);

struct DenseCodeReport {
  int message = 0;
  std::string b_name;
  std::string c_name;
  int decoded = -1;
  bool deterministic = false;
  bool success = false;
};

DenseCodeReport dense_roundtrip(int message, const PureState& channel);

struct SuitabilityOutcome {
  std::string name;
  double max_probability_deviation = 0.0;  // across probes
};

struct SuitabilityReport {
  std::vector<SuitabilityOutcome> per_outcome;
  double max_probability_deviation = 0.0;
  bool probabilities_input_independent = false;
  bool recovery_found = false;
  bool suitable = false;
};

/// A channel is suitable when outcome probabilities do not depend on the
/// input and a recovery exists in the declared search space.
SuitabilityReport check_channel_suitability(const ChannelSpec& channel,
                                            const MeasurementBasis& basis,
                                            const std::vector<PureState>& probes,
                                            const SearchOptions& options);

/// True when the matrix factors as a Kronecker product over the given
/// party dimensions (left to right).
bool is_local_across(const CMatrix& m, const std::vector<int>& party_dims);

/// Haar-distributed unitary, deterministic for a fixed generator state.
CMatrix haar_unitary(int dim, std::mt19937_64& rng);

}  // namespace wlab::protocols
