#include "wlab/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace wlab {

namespace {

void check_labels_unique(const std::vector<QubitLabel>& labels) {
  std::set<QubitLabel> seen;
  for (const auto& l : labels) {
    if (!seen.insert(l).second) {
      throw std::invalid_argument("duplicate qubit label: " + l);
    }
  }
}

bool is_power_of_two(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(Eigen::Index n) {
  int k = 0;
  while ((Eigen::Index{1} << k) < n) ++k;
  return k;
}

}  // namespace

PureState::PureState(std::vector<QubitLabel> labels, CVector amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes)) {
  check_labels_unique(labels_);
  const Eigen::Index want = Eigen::Index{1} << labels_.size();
  if (amplitudes_.size() != want) {
    throw std::invalid_argument("amplitude vector has size " +
                                std::to_string(amplitudes_.size()) +
                                ", expected " + std::to_string(want));
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::norm) {
    throw std::invalid_argument("state is not normalized: |norm - 1| = " +
                                std::to_string(std::abs(amplitudes_.norm() - 1.0)));
  }
}

PureState PureState::normalized(std::vector<QubitLabel> labels,
                                CVector amplitudes) {
  const double n = amplitudes.norm();
  if (n <= tol::zero) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return PureState(std::move(labels), amplitudes / n);
}

PureState PureState::basis_ket(std::vector<QubitLabel> labels,
                               Eigen::Index index) {
  const Eigen::Index dim = Eigen::Index{1} << labels.size();
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("basis index out of range");
  }
  CVector amps = CVector::Zero(dim);
  amps(index) = 1.0;
  return PureState(std::move(labels), std::move(amps));
}

int PureState::position_of(const QubitLabel& label) const {
  for (std::size_t p = 0; p < labels_.size(); ++p) {
    if (labels_[p] == label) return static_cast<int>(p);
  }
  throw std::invalid_argument("unknown qubit label: " + label);
}

bool PureState::has_label(const QubitLabel& label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

PureState PureState::relabeled(std::vector<QubitLabel> new_labels) const {
  if (new_labels.size() != labels_.size()) {
    throw std::invalid_argument("relabeled: label count mismatch");
  }
  return PureState(std::move(new_labels), amplitudes_);
}

QOperator::QOperator(CMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || !is_power_of_two(matrix_.rows())) {
    throw std::invalid_argument("operator matrix must be square with 2^k rows");
  }
  arity_ = log2_exact(matrix_.rows());
  const CMatrix gram = matrix_.adjoint() * matrix_;
  const double dev =
      (gram - CMatrix::Identity(matrix_.rows(), matrix_.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (dev > tol::unitary) {
    throw std::invalid_argument("operator is not unitary: max |M^dag M - I| = " +
                                std::to_string(dev));
  }
}

MeasurementBasis::MeasurementBasis(std::vector<QubitLabel> subset,
                                   std::vector<CVector> vectors,
                                   std::vector<std::string> outcome_names)
    : subset_(std::move(subset)),
      vectors_(std::move(vectors)),
      outcome_names_(std::move(outcome_names)) {
  check_labels_unique(subset_);
  const std::size_t dim = std::size_t{1} << subset_.size();
  if (vectors_.size() != dim) {
    throw std::invalid_argument("measurement basis must have 2^m vectors");
  }
  if (outcome_names_.size() != vectors_.size()) {
    throw std::invalid_argument("one outcome name per basis vector required");
  }
  for (const auto& v : vectors_) {
    if (static_cast<std::size_t>(v.size()) != dim) {
      throw std::invalid_argument("basis vector dimension mismatch");
    }
  }
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    for (std::size_t j = i; j < vectors_.size(); ++j) {
      const Complex g = vectors_[i].dot(vectors_[j]);
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::abs(g - want) > tol::unitary) {
        throw std::invalid_argument("basis vectors are not orthonormal");
      }
    }
  }
}

PureState tensor(const PureState& s1, const PureState& s2) {
  std::vector<QubitLabel> labels = s1.labels();
  for (const auto& l : s2.labels()) {
    if (s1.has_label(l)) {
      throw std::invalid_argument("tensor: duplicate qubit label: " + l);
    }
    labels.push_back(l);
  }
  const Eigen::Index d1 = s1.dim();
  const Eigen::Index d2 = s2.dim();
  CVector amps(d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i) {
    amps.segment(i * d2, d2) = s1.amplitude(i) * s2.amplitudes();
  }
  return PureState(std::move(labels), std::move(amps));
}

PureState apply(const PureState& state, const QOperator& op,
                const std::vector<QubitLabel>& targets) {
  const int n = state.num_qubits();
  const int k = static_cast<int>(targets.size());
  if (op.arity() != k) {
    throw std::invalid_argument("operator arity " + std::to_string(op.arity()) +
                                " does not match " + std::to_string(k) +
                                " targets");
  }
  check_labels_unique(targets);
  std::vector<int> shift(k);  // bit shift of each target in the full index
  for (int j = 0; j < k; ++j) {
    shift[j] = n - 1 - state.position_of(targets[j]);
  }

  const Eigen::Index dim = state.dim();
  const Eigen::Index sub = Eigen::Index{1} << k;
  const CMatrix& m = op.matrix();
  CVector out = CVector::Zero(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index row = 0;
    Eigen::Index cleared = i;
    for (int j = 0; j < k; ++j) {
      row |= ((i >> shift[j]) & 1) << (k - 1 - j);
      cleared &= ~(Eigen::Index{1} << shift[j]);
    }
    Complex acc = 0.0;
    for (Eigen::Index col = 0; col < sub; ++col) {
      Eigen::Index src = cleared;
      for (int j = 0; j < k; ++j) {
        src |= ((col >> (k - 1 - j)) & 1) << shift[j];
      }
      acc += m(row, col) * state.amplitude(src);
    }
    out(i) = acc;
  }
  return PureState(state.labels(), std::move(out));
}

std::vector<MeasurementOutcome> measure(const PureState& state,
                                        const MeasurementBasis& basis) {
  const int n = state.num_qubits();
  const int m = basis.subset_size();
  std::vector<int> sub_shift(m);
  std::vector<bool> in_subset(n, false);
  for (int j = 0; j < m; ++j) {
    const int p = state.position_of(basis.subset()[j]);
    sub_shift[j] = n - 1 - p;
    in_subset[p] = true;
  }
  std::vector<QubitLabel> rest_labels;
  std::vector<int> rest_shift;
  for (int p = 0; p < n; ++p) {
    if (!in_subset[p]) {
      rest_labels.push_back(state.labels()[p]);
      rest_shift.push_back(n - 1 - p);
    }
  }
  const int r = static_cast<int>(rest_labels.size());
  const Eigen::Index rest_dim = Eigen::Index{1} << r;

  // Per full index: the subset index s and the complement index c.
  const Eigen::Index dim = state.dim();
  std::vector<Eigen::Index> sub_of(dim), rest_of(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    Eigen::Index s = 0, c = 0;
    for (int j = 0; j < m; ++j) s |= ((i >> sub_shift[j]) & 1) << (m - 1 - j);
    for (int j = 0; j < r; ++j) c |= ((i >> rest_shift[j]) & 1) << (r - 1 - j);
    sub_of[i] = s;
    rest_of[i] = c;
  }

  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(basis.vectors().size());
  for (std::size_t x = 0; x < basis.vectors().size(); ++x) {
    const CVector& v = basis.vectors()[x];
    CVector residual = CVector::Zero(rest_dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
      residual(rest_of[i]) += std::conj(v(sub_of[i])) * state.amplitude(i);
    }
    MeasurementOutcome out;
    out.outcome_index = static_cast<int>(x);
    out.outcome_name = basis.outcome_names()[x];
    out.probability = residual.squaredNorm();
    if (out.probability > tol::zero) {
      out.residual =
          PureState(rest_labels, residual / std::sqrt(out.probability));
    }
    outcomes.push_back(std::move(out));
  }
  return outcomes;
}

Complex overlap(const PureState& s1, const PureState& s2) {
  const PureState s2p = permute(s2, s1.labels());
  return s1.amplitudes().dot(s2p.amplitudes());
}

double fidelity(const PureState& s1, const PureState& s2) {
  return std::norm(overlap(s1, s2));
}

bool equal_up_to_global_phase(const PureState& s1, const PureState& s2,
                              double tolerance) {
  return 1.0 - std::abs(overlap(s1, s2)) <= tolerance;
}

PureState permute(const PureState& state,
                  const std::vector<QubitLabel>& new_order) {
  if (new_order == state.labels()) return state;
  const int n = state.num_qubits();
  if (static_cast<int>(new_order.size()) != n) {
    throw std::invalid_argument("permute: label count mismatch");
  }
  check_labels_unique(new_order);
  // new_shift[p] = shift in the new index of the qubit at old position p
  std::vector<int> new_shift(n);
  for (int q = 0; q < n; ++q) {
    new_shift[state.position_of(new_order[q])] = n - 1 - q;
  }
  CVector out(state.dim());
  for (Eigen::Index i = 0; i < state.dim(); ++i) {
    Eigen::Index j = 0;
    for (int p = 0; p < n; ++p) {
      j |= ((i >> (n - 1 - p)) & 1) << new_shift[p];
    }
    out(j) = state.amplitude(i);
  }
  return PureState(new_order, std::move(out));
}

}  // namespace wlab
