#pragma once

#include <array>
#include <string>
#include <vector>

#include "wlab/qcore.hpp"

namespace wlab::catalog {

struct GhzClassParams {
  Complex a;  // amplitude of |0...0>
  Complex b;  // amplitude of |1...1>
};

/// Standard-form W-class weights: sqrt(a)|001> + sqrt(b)|010> + sqrt(c)|100>
/// + sqrt(d)|000>, with a,b,c > 0, d >= 0, a+b+c+d = 1.
struct WClassParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;
};

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class Pauli { I, X, Y, Z };

std::string bell_name(BellKind kind);
std::string pauli_name(Pauli kind);

/// (|0..0> + |1..1>)/sqrt(2) on n in {3,4} qubits.
PureState ghz(int n, std::vector<QubitLabel> labels = {});
/// (sqrt(2)|000> + |111>)/sqrt(3).
PureState f_ghz(std::vector<QubitLabel> labels = {"A", "B", "C"});
PureState ghz_class(const GhzClassParams& params,
                    std::vector<QubitLabel> labels = {"A", "B", "C"});

/// (|100> + |010> + |001>)/sqrt(3).
PureState w_state(std::vector<QubitLabel> labels = {"A", "B", "C"});
/// (|100> + |0>|Psi+>)/sqrt(2), the first qubit tensored with a Bell pair
/// on the remaining two.
PureState w_tilde(std::vector<QubitLabel> labels = {"A", "B", "C"});
PureState w_class(const WClassParams& params,
                  std::vector<QubitLabel> labels = {"A", "B", "C"});

CVector bell_vector(BellKind kind);
PureState bell(BellKind kind, std::vector<QubitLabel> labels = {"1", "2"});
/// (|0> + sign * exp(i*theta)|1>)/sqrt(2), sign = +1 or -1.
CVector pi_vector(int sign, double theta);
PureState pi_state(int sign, double theta, QubitLabel label = "1");

/// The 8-outcome basis {pi^s tensor Bell} on (input qubit 1, input qubit 2,
/// sender's channel qubit). Outcome names look like "pi+_Phi-".
MeasurementBasis ghz_teleport_basis(
    double theta, std::vector<QubitLabel> subset = {"1", "2", "A"});

/// 16-outcome basis {pi^s1 tensor pi^s2 tensor Bell} for the 4-qubit channel.
MeasurementBasis ghz4_teleport_basis(
    double theta1, double theta2,
    std::vector<QubitLabel> subset = {"1", "2", "3", "A"});

/// The complete three-qubit basis (|0>|x> +/- |1>|xbar>)/sqrt(2),
/// x in {00,01,10,11}. Outcome names "x00+", "x00-", ...
MeasurementBasis phi_prime_basis(std::vector<QubitLabel> subset = {"A", "B",
                                                                   "C"});

/// The entangling two-qubit unitary with column action
/// |00> -> |Psi+>, |01> -> |11>, |10> -> |Psi->, |11> -> |00>.
QOperator v_operator();

/// The same unitary assembled from its conditional-gate network
/// C_12 * (C-H)_21 * X_2 * C_21 (rightmost factor applied first; qubit 1 is
/// the first label of the pair, C_ct has control c and target t).
QOperator v_network();

QOperator pauli(Pauli kind);
QOperator phase_gate(double theta);  // diag(1, exp(i*theta))
QOperator hadamard();
QOperator cnot();  // control = first label

}  // namespace wlab::catalog
