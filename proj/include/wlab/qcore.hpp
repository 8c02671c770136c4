#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace wlab {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

using QubitLabel = std::string;

namespace tol {
inline constexpr double norm = 1e-12;
inline constexpr double unitary = 1e-12;
inline constexpr double prob = 1e-10;
inline constexpr double phase = 1e-9;
inline constexpr double zero = 1e-14;
}  // namespace tol

/// Pure state over an ordered register of labeled qubits.
/// Convention: the leftmost label is the most significant bit of the
/// amplitude index, so |q0 q1 ... q_{n-1}> lives at index
/// sum_p bit(q_p) << (n-1-p).
class PureState {
 public:
  PureState(std::vector<QubitLabel> labels, CVector amplitudes);

  /// Rescales the amplitudes to unit norm before constructing.
  static PureState normalized(std::vector<QubitLabel> labels,
                              CVector amplitudes);
  /// Computational basis ket |index> on the given register.
  static PureState basis_ket(std::vector<QubitLabel> labels,
                             Eigen::Index index);

  int num_qubits() const { return static_cast<int>(labels_.size()); }
  Eigen::Index dim() const { return amplitudes_.size(); }
  const std::vector<QubitLabel>& labels() const { return labels_; }
  const CVector& amplitudes() const { return amplitudes_; }
  Complex amplitude(Eigen::Index i) const { return amplitudes_(i); }

  /// Position of a label within the register; throws if absent.
  int position_of(const QubitLabel& label) const;
  bool has_label(const QubitLabel& label) const;

  /// Same amplitudes on a renamed register (index order unchanged).
  PureState relabeled(std::vector<QubitLabel> new_labels) const;

 private:
  std::vector<QubitLabel> labels_;
  CVector amplitudes_;
};

/// Unitary acting on a fixed number of qubits; unitarity is checked at
/// construction within tol::unitary.
class QOperator {
 public:
  explicit QOperator(CMatrix matrix);

  int arity() const { return arity_; }
  const CMatrix& matrix() const { return matrix_; }

 private:
  int arity_;
  CMatrix matrix_;
};

/// Complete orthonormal family on a qubit subset, defining a projective
/// measurement with 2^m named outcomes.
class MeasurementBasis {
 public:
  MeasurementBasis(std::vector<QubitLabel> subset, std::vector<CVector> vectors,
                   std::vector<std::string> outcome_names);

  int subset_size() const { return static_cast<int>(subset_.size()); }
  const std::vector<QubitLabel>& subset() const { return subset_; }
  const std::vector<CVector>& vectors() const { return vectors_; }
  const std::vector<std::string>& outcome_names() const {
    return outcome_names_;
  }

 private:
  std::vector<QubitLabel> subset_;
  std::vector<CVector> vectors_;
  std::vector<std::string> outcome_names_;
};

struct MeasurementOutcome {
  int outcome_index = 0;
  std::string outcome_name;
  double probability = 0.0;
  /// Normalized state on the complement subset; absent when the outcome
  /// probability is below tol::zero.
  std::optional<PureState> residual;
};

/// Kronecker product of two registers with disjoint label sets.
PureState tensor(const PureState& s1, const PureState& s2);

/// Applies op to the listed target qubits (identity elsewhere).
PureState apply(const PureState& state, const QOperator& op,
                const std::vector<QubitLabel>& targets);

/// Projective measurement; residual labels keep their original register
/// order. Probabilities over the full basis sum to 1.
std::vector<MeasurementOutcome> measure(const PureState& state,
                                        const MeasurementBasis& basis);

/// <s1|s2> after reordering s2 onto s1's label order.
Complex overlap(const PureState& s1, const PureState& s2);

/// |<s1|s2>|^2 in [0,1].
double fidelity(const PureState& s1, const PureState& s2);

bool equal_up_to_global_phase(const PureState& s1, const PureState& s2,
                              double tolerance = tol::phase);

/// Reorders the register; the state is logically unchanged.
PureState permute(const PureState& state,
                  const std::vector<QubitLabel>& new_order);

}  // namespace wlab
