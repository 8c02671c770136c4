#include "wlab/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace wlab::catalog {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

std::vector<QubitLabel> default_channel_labels(int n) {
  std::vector<QubitLabel> labels = {"A", "B", "C", "D"};
  labels.resize(n);
  return labels;
}

}  // namespace

std::string bell_name(BellKind kind) {
  switch (kind) {
    case BellKind::PhiPlus:
      return "Phi+";
    case BellKind::PhiMinus:
      return "Phi-";
    case BellKind::PsiPlus:
      return "Psi+";
    case BellKind::PsiMinus:
      return "Psi-";
  }
  throw std::invalid_argument("unknown Bell kind");
}

std::string pauli_name(Pauli kind) {
  switch (kind) {
    case Pauli::I:
      return "I";
    case Pauli::X:
      return "X";
    case Pauli::Y:
      return "Y";
    case Pauli::Z:
      return "Z";
  }
  throw std::invalid_argument("unknown Pauli kind");
}

PureState ghz(int n, std::vector<QubitLabel> labels) {
  if (n != 3 && n != 4) {
    throw std::invalid_argument("ghz: only 3- and 4-qubit channels supported");
  }
  if (labels.empty()) labels = default_channel_labels(n);
  CVector amps = CVector::Zero(Eigen::Index{1} << n);
  amps(0) = kInvSqrt2;
  amps(amps.size() - 1) = kInvSqrt2;
  return PureState(std::move(labels), std::move(amps));
}

PureState f_ghz(std::vector<QubitLabel> labels) {
  return ghz_class({std::sqrt(2.0 / 3.0), 1.0 / std::sqrt(3.0)},
                   std::move(labels));
}

PureState ghz_class(const GhzClassParams& params,
                    std::vector<QubitLabel> labels) {
  if (std::abs(std::norm(params.a) + std::norm(params.b) - 1.0) > tol::norm) {
    throw std::invalid_argument("ghz_class: |a|^2 + |b|^2 must be 1");
  }
  CVector amps = CVector::Zero(8);
  amps(0) = params.a;
  amps(7) = params.b;
  return PureState(std::move(labels), std::move(amps));
}

PureState w_state(std::vector<QubitLabel> labels) {
  const double v = 1.0 / std::sqrt(3.0);
  CVector amps = CVector::Zero(8);
  amps(4) = v;  // |100>
  amps(2) = v;  // |010>
  amps(1) = v;  // |001>
  return PureState(std::move(labels), std::move(amps));
}

PureState w_tilde(std::vector<QubitLabel> labels) {
  CVector amps = CVector::Zero(8);
  amps(4) = kInvSqrt2;  // |100>
  amps(2) = 0.5;        // |0>|Psi+> expands over |010>, |001>
  amps(1) = 0.5;
  return PureState(std::move(labels), std::move(amps));
}

PureState w_class(const WClassParams& params, std::vector<QubitLabel> labels) {
  if (!(params.a > 0.0 && params.b > 0.0 && params.c > 0.0)) {
    throw std::invalid_argument("w_class: a, b, c must be strictly positive");
  }
  if (params.d < 0.0) {
    throw std::invalid_argument("w_class: d must be non-negative");
  }
  if (std::abs(params.a + params.b + params.c + params.d - 1.0) > tol::norm) {
    throw std::invalid_argument("w_class: weights must sum to 1");
  }
  CVector amps = CVector::Zero(8);
  amps(1) = std::sqrt(params.a);  // |001>
  amps(2) = std::sqrt(params.b);  // |010>
  amps(4) = std::sqrt(params.c);  // |100>
  amps(0) = std::sqrt(params.d);  // |000>
  return PureState(std::move(labels), std::move(amps));
}

CVector bell_vector(BellKind kind) {
  CVector v = CVector::Zero(4);
  switch (kind) {
    case BellKind::PhiPlus:
      v(0) = kInvSqrt2;
      v(3) = kInvSqrt2;
      break;
    case BellKind::PhiMinus:
      v(0) = kInvSqrt2;
      v(3) = -kInvSqrt2;
      break;
    case BellKind::PsiPlus:
      v(1) = kInvSqrt2;
      v(2) = kInvSqrt2;
      break;
    case BellKind::PsiMinus:
      v(1) = kInvSqrt2;
      v(2) = -kInvSqrt2;
      break;
  }
  return v;
}

PureState bell(BellKind kind, std::vector<QubitLabel> labels) {
  return PureState(std::move(labels), bell_vector(kind));
}

CVector pi_vector(int sign, double theta) {
  if (sign != 1 && sign != -1) {
    throw std::invalid_argument("pi_vector: sign must be +1 or -1");
  }
  CVector v(2);
  v(0) = kInvSqrt2;
  v(1) = static_cast<double>(sign) * std::polar(kInvSqrt2, theta);
  return v;
}

PureState pi_state(int sign, double theta, QubitLabel label) {
  return PureState({std::move(label)}, pi_vector(sign, theta));
}

MeasurementBasis ghz_teleport_basis(double theta,
                                    std::vector<QubitLabel> subset) {
  std::vector<CVector> vectors;
  std::vector<std::string> names;
  for (int sign : {1, -1}) {
    for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus,
                          BellKind::PsiPlus, BellKind::PsiMinus}) {
      vectors.push_back(kron(pi_vector(sign, theta), bell_vector(kind)));
      names.push_back(std::string("pi") + (sign > 0 ? "+" : "-") + "_" +
                      bell_name(kind));
    }
  }
  return MeasurementBasis(std::move(subset), std::move(vectors),
                          std::move(names));
}

MeasurementBasis ghz4_teleport_basis(double theta1, double theta2,
                                     std::vector<QubitLabel> subset) {
  std::vector<CVector> vectors;
  std::vector<std::string> names;
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      for (BellKind kind : {BellKind::PhiPlus, BellKind::PhiMinus,
                            BellKind::PsiPlus, BellKind::PsiMinus}) {
        vectors.push_back(kron(pi_vector(s1, theta1),
                               kron(pi_vector(s2, theta2), bell_vector(kind))));
        names.push_back(std::string("pi") + (s1 > 0 ? "+" : "-") + "_pi" +
                        (s2 > 0 ? "+" : "-") + "_" + bell_name(kind));
      }
    }
  }
  return MeasurementBasis(std::move(subset), std::move(vectors),
                          std::move(names));
}

MeasurementBasis phi_prime_basis(std::vector<QubitLabel> subset) {
  std::vector<CVector> vectors;
  std::vector<std::string> names;
  for (int x = 0; x < 4; ++x) {
    for (int sign : {1, -1}) {
      CVector v = CVector::Zero(8);
      v(x) = kInvSqrt2;                             // |0>|x>
      v(4 + (x ^ 3)) = sign * kInvSqrt2;            // |1>|xbar>
      vectors.push_back(std::move(v));
      names.push_back(std::string("x") + char('0' + (x >> 1)) +
                      char('0' + (x & 1)) + (sign > 0 ? "+" : "-"));
    }
  }
  return MeasurementBasis(std::move(subset), std::move(vectors),
                          std::move(names));
}

QOperator v_operator() {
  CMatrix m = CMatrix::Zero(4, 4);
  m.col(0) = bell_vector(BellKind::PsiPlus);   // |00> -> |Psi+>
  m(3, 1) = 1.0;                               // |01> -> |11>
  m.col(2) = bell_vector(BellKind::PsiMinus);  // |10> -> |Psi->
  m(0, 3) = 1.0;                               // |11> -> |00>
  return QOperator(std::move(m));
}

QOperator v_network() {
  // C_21: control = second qubit, target = first.
  CMatrix c21 = CMatrix::Identity(4, 4);
  c21.row(1).swap(c21.row(3));
  // X on qubit 2.
  CMatrix x2 = CMatrix::Zero(4, 4);
  x2(0, 1) = x2(1, 0) = x2(2, 3) = x2(3, 2) = 1.0;
  // (C-H)_21: Hadamard on qubit 1 when qubit 2 is |1>.
  CMatrix ch21 = CMatrix::Identity(4, 4);
  ch21(1, 1) = ch21(1, 3) = ch21(3, 1) = kInvSqrt2;
  ch21(3, 3) = -kInvSqrt2;
  // C_12: control = first qubit, target = second.
  CMatrix c12 = CMatrix::Identity(4, 4);
  c12.row(2).swap(c12.row(3));
  return QOperator(c12 * ch21 * x2 * c21);
}

QOperator pauli(Pauli kind) {
  CMatrix m(2, 2);
  switch (kind) {
    case Pauli::I:
      m << 1, 0, 0, 1;
      break;
    case Pauli::X:
      m << 0, 1, 1, 0;
      break;
    case Pauli::Y:
      m << 0, Complex(0, -1), Complex(0, 1), 0;
      break;
    case Pauli::Z:
      m << 1, 0, 0, -1;
      break;
  }
  return QOperator(std::move(m));
}

QOperator phase_gate(double theta) {
  CMatrix m = CMatrix::Identity(2, 2);
  m(1, 1) = std::polar(1.0, theta);
  return QOperator(std::move(m));
}

QOperator hadamard() {
  CMatrix m(2, 2);
  m << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
  return QOperator(std::move(m));
}

QOperator cnot() {
  CMatrix m = CMatrix::Identity(4, 4);
  m.row(2).swap(m.row(3));
  return QOperator(std::move(m));
}

}  // namespace wlab::catalog
