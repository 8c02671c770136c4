#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wlab/catalog.hpp"
#include "wlab/protocols.hpp"
#include "wlab/qcore.hpp"

namespace wlab::analysis {

/// General two-qubit input gamma|00> + alpha|01> + beta|10> + delta|11>.
struct GeneralTwoQubitInput {
  Complex gamma;
  Complex alpha;
  Complex beta;
  Complex delta;

  double norm_sq() const;
  PureState state(std::vector<QubitLabel> labels = {"1", "2"}) const;
};

/// Closed-form outcome probabilities for a W-class channel with weight a on
/// the sender's qubit and no |000> admixture. Output order matches
/// catalog::ghz_teleport_basis. The phase convention: the basis angle theta
/// enters as exp(i*theta) next to beta and delta; this reproduces the
/// simulator for real amplitudes, while complex amplitudes require the
/// conjugate input (see compare_wclass_probabilities).
std::array<double, 8> prob_formula_wclass(const GeneralTwoQubitInput& input,
                                          double a, double theta);

/// Closed-form probabilities 1/8 [1 -/+ (|a|^2-|b|^2)(|alpha|^2-|beta|^2)]
/// for the channel a|000> + b|111> carrying alpha|01> + beta|10>.
/// Sign map (frozen against simulation): Phi-type outcomes take the minus
/// branch, Psi-type the plus branch.
std::array<double, 8> prob_formula_ghzclass(Complex alpha, Complex beta,
                                            Complex a, Complex b);

struct ProbabilityComparison {
  std::string outcome;
  double formula = 0.0;
  double simulated = 0.0;
  double abs_diff = 0.0;
};

struct ComparisonReport {
  std::vector<ProbabilityComparison> rows;
  double max_abs_diff = 0.0;
  double simulated_sum = 0.0;
};

/// Simulates the measurement of input (x) w_class(params) in the theta basis
/// and pairs each outcome with the closed-form value. The assignment lists
/// the channel labels carrying the standard-form slots (sqrt(a)-term qubit
/// last by default, which places it on the sender).
ComparisonReport compare_wclass_probabilities(
    const GeneralTwoQubitInput& input, const catalog::WClassParams& params,
    double theta, const std::vector<QubitLabel>& assignment = {"B", "C", "A"});

ComparisonReport compare_ghzclass_probabilities(
    Complex alpha, Complex beta, const catalog::GhzClassParams& params,
    double theta);

struct ConvertVerdict {
  bool convertible = false;
  std::optional<QOperator> t;  // two-qubit witness when convertible
  std::string reason;
};

/// Whether 1 (x) T can turn src into dst for some two-qubit unitary T:
/// possible iff |a_src| = |a_dst|, in which case a diagonal-phase T is
/// exhibited.
ConvertVerdict convertible_two_particle(const catalog::GhzClassParams& src,
                                        const catalog::GhzClassParams& dst);

/// Best fidelity between (1 (x) T)|src> and |dst> over seeded Haar samples
/// of T; a sampled refutation for negative verdicts.
double best_sampled_conversion_fidelity(const catalog::GhzClassParams& src,
                                        const catalog::GhzClassParams& dst,
                                        int samples, unsigned long long seed);

/// The eight W-class channels obtained by applying v_operator to the
/// receiver pair of each phi-prime basis state.
std::vector<protocols::ChannelSpec> w_channel_family();

}  // namespace wlab::analysis
