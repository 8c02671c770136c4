#include "wlab/analysis.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace wlab::analysis {

namespace {

void check_ghz_class_params(const catalog::GhzClassParams& p,
                            const char* who) {
  if (std::abs(std::norm(p.a) + std::norm(p.b) - 1.0) > tol::norm) {
    throw std::invalid_argument(std::string(who) +
                                ": |a|^2 + |b|^2 must be 1");
  }
}

}  // namespace

double GeneralTwoQubitInput::norm_sq() const {
  return std::norm(gamma) + std::norm(alpha) + std::norm(beta) +
         std::norm(delta);
}

PureState GeneralTwoQubitInput::state(std::vector<QubitLabel> labels) const {
  CVector amps(4);
  amps << gamma, alpha, beta, delta;
  return PureState(std::move(labels), std::move(amps));
}

std::array<double, 8> prob_formula_wclass(const GeneralTwoQubitInput& input,
                                          double a, double theta) {
  if (!(a > 0.0 && a < 1.0)) {
    throw std::invalid_argument("prob_formula_wclass: a must be in (0,1)");
  }
  const Complex phase = std::polar(1.0, theta);
  std::array<double, 8> out{};
  int i = 0;
  for (int sign : {1, -1}) {
    const double s = static_cast<double>(sign);
    const double t_gb = std::norm(input.gamma + s * phase * input.beta);
    const double t_ad = std::norm(input.alpha + s * phase * input.delta);
    const double phi_row = (t_gb * (1.0 - a) + a * t_ad) / 4.0;
    const double psi_row = (t_gb * a + (1.0 - a) * t_ad) / 4.0;
    out[i++] = phi_row;  // Phi+
    out[i++] = phi_row;  // Phi-
    out[i++] = psi_row;  // Psi+
    out[i++] = psi_row;  // Psi-
  }
  return out;
}

std::array<double, 8> prob_formula_ghzclass(Complex alpha, Complex beta,
                                            Complex a, Complex b) {
  if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol::norm ||
      std::abs(std::norm(alpha) + std::norm(beta) - 1.0) > tol::norm) {
    throw std::invalid_argument(
        "prob_formula_ghzclass: channel and input must be normalized");
  }
  const double d = (std::norm(a) - std::norm(b)) *
                   (std::norm(alpha) - std::norm(beta));
  std::array<double, 8> out{};
  int i = 0;
  for (int sign : {1, -1}) {
    (void)sign;
    out[i++] = (1.0 - d) / 8.0;  // Phi+
    out[i++] = (1.0 - d) / 8.0;  // Phi-
    out[i++] = (1.0 + d) / 8.0;  // Psi+
    out[i++] = (1.0 + d) / 8.0;  // Psi-
  }
  return out;
}

ComparisonReport compare_wclass_probabilities(
    const GeneralTwoQubitInput& input, const catalog::WClassParams& params,
    double theta, const std::vector<QubitLabel>& assignment) {
  if (std::abs(input.norm_sq() - 1.0) > tol::norm) {
    throw std::invalid_argument("input state must be normalized");
  }
  if (assignment.size() != 3) {
    throw std::invalid_argument("assignment must list three channel labels");
  }
  // The closed form carries exp(+i*theta); the projective amplitude carries
  // the conjugate, so the formula is fed the conjugated input. The two
  // coincide for real amplitudes.
  const GeneralTwoQubitInput conjugated{
      std::conj(input.gamma), std::conj(input.alpha), std::conj(input.beta),
      std::conj(input.delta)};
  const auto formula = prob_formula_wclass(conjugated, params.a, theta);

  const PureState channel = catalog::w_class(params, assignment);
  const PureState total = tensor(input.state(), channel);
  const MeasurementBasis basis =
      catalog::ghz_teleport_basis(theta, {"1", "2", assignment.back()});
  const auto outcomes = measure(total, basis);

  ComparisonReport report;
  for (std::size_t x = 0; x < outcomes.size(); ++x) {
    ProbabilityComparison row;
    row.outcome = outcomes[x].outcome_name;
    row.formula = formula[x];
    row.simulated = outcomes[x].probability;
    row.abs_diff = std::abs(row.formula - row.simulated);
    report.simulated_sum += row.simulated;
    report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ComparisonReport compare_ghzclass_probabilities(
    Complex alpha, Complex beta, const catalog::GhzClassParams& params,
    double theta) {
  check_ghz_class_params(params, "compare_ghzclass_probabilities");
  const auto formula = prob_formula_ghzclass(alpha, beta, params.a, params.b);

  CVector amps = CVector::Zero(4);
  amps(1) = alpha;
  amps(2) = beta;
  const PureState input({"1", "2"}, amps);
  const PureState total = tensor(input, catalog::ghz_class(params));
  const auto outcomes =
      measure(total, catalog::ghz_teleport_basis(theta));

  ComparisonReport report;
  for (std::size_t x = 0; x < outcomes.size(); ++x) {
    ProbabilityComparison row;
    row.outcome = outcomes[x].outcome_name;
    row.formula = formula[x];
    row.simulated = outcomes[x].probability;
    row.abs_diff = std::abs(row.formula - row.simulated);
    report.simulated_sum += row.simulated;
    report.max_abs_diff = std::max(report.max_abs_diff, row.abs_diff);
    report.rows.push_back(std::move(row));
  }
  return report;
}

ConvertVerdict convertible_two_particle(const catalog::GhzClassParams& src,
                                        const catalog::GhzClassParams& dst) {
  check_ghz_class_params(src, "convertible_two_particle src");
  check_ghz_class_params(dst, "convertible_two_particle dst");
  ConvertVerdict verdict;
  const double gap = std::abs(std::abs(src.a) - std::abs(dst.a));
  if (gap > tol::phase) {
    verdict.convertible = false;
    verdict.reason = "no single-pair unitary preserves the amplitude split: "
                     "| |a_src| - |a_dst| | = " +
                     std::to_string(gap);
    return verdict;
  }
  verdict.convertible = true;
  verdict.reason = "amplitude magnitudes agree; a diagonal-phase pair "
                   "operator realizes the conversion";
  const double phi =
      (std::abs(src.a) > tol::zero) ? std::arg(dst.a) - std::arg(src.a) : 0.0;
  const double psi =
      (std::abs(src.b) > tol::zero) ? std::arg(dst.b) - std::arg(src.b) : 0.0;
  CMatrix t = CMatrix::Identity(4, 4);
  t(0, 0) = std::polar(1.0, phi);
  t(3, 3) = std::polar(1.0, psi);
  verdict.t = QOperator(std::move(t));
  return verdict;
}

double best_sampled_conversion_fidelity(const catalog::GhzClassParams& src,
                                        const catalog::GhzClassParams& dst,
                                        int samples, unsigned long long seed) {
  check_ghz_class_params(src, "best_sampled_conversion_fidelity src");
  check_ghz_class_params(dst, "best_sampled_conversion_fidelity dst");
  const PureState source = catalog::ghz_class(src);
  const CVector target = catalog::ghz_class(dst).amplitudes();
  std::mt19937_64 rng(seed);
  double best = 0.0;
  for (int s = 0; s < samples; ++s) {
    const QOperator t(protocols::haar_unitary(4, rng));
    const PureState converted = apply(source, t, {"B", "C"});
    best = std::max(best, std::norm(target.dot(converted.amplitudes())));
  }
  return best;
}

std::vector<protocols::ChannelSpec> w_channel_family() {
  const MeasurementBasis basis = catalog::phi_prime_basis();
  const QOperator v = catalog::v_operator();
  std::vector<protocols::ChannelSpec> family;
  for (const auto& vec : basis.vectors()) {
    PureState state({"A", "B", "C"}, vec);
    state = apply(state, v, {"B", "C"});
    family.push_back({std::move(state), {"A"}, {{"B"}, {"C"}}});
  }
  return family;
}

}  // namespace wlab::analysis
