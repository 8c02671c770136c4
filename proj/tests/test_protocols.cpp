// Teleportation and dense-coding protocols: end-to-end runs against hand
// oracles, recovery search across the operator spaces, and the channel / basis
// transformation identities.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wlab/catalog.hpp"
#include "wlab/protocols.hpp"
#include "wlab/qcore.hpp"

using namespace wlab;
using namespace wlab::protocols;

namespace {

ChannelSpec ghz3_channel() {
  return ChannelSpec{catalog::ghz(3), {"A"}, {{"B"}, {"C"}}};
}

ChannelSpec w_tilde_channel() {
  return ChannelSpec{catalog::w_tilde(), {"A"}, {{"B"}, {"C"}}};
}

PureState epr_input(Complex alpha, Complex beta,
                    std::vector<QubitLabel> labels = {"1", "2"}) {
  CVector v = CVector::Zero(4);
  v(1) = alpha;
  v(2) = beta;
  return PureState(std::move(labels), std::move(v));
}

PureState ghz_family_input(Complex alpha, Complex beta) {
  CVector v = CVector::Zero(8);
  v(0) = alpha;
  v(7) = beta;
  return PureState({"1", "2", "3"}, std::move(v));
}

}  // namespace

TEST_CASE("channel bookkeeping: receiver order and partition checks") {
  const ChannelSpec ch = ghz3_channel();
  CHECK(ch.receiver_labels() == std::vector<QubitLabel>{"B", "C"});
  CHECK_NOTHROW(ch.validate());

  ChannelSpec missing = ch;
  missing.sender = {"Z"};
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);

  ChannelSpec twice = ch;
  twice.receiver_parties = {{"B"}, {"B"}};
  CHECK_THROWS_AS(twice.validate(), std::invalid_argument);

  ChannelSpec partial = ch;
  partial.receiver_parties = {{"B"}};
  CHECK_THROWS_AS(partial.validate(), std::invalid_argument);
}

TEST_CASE("probe families span their subspaces") {
  const auto epr = epr_family_probes();
  REQUIRE(epr.size() == 4);
  for (const auto& p : epr) {
    CHECK(std::abs(p.amplitudes().norm() - 1.0) < 1e-14);
    CHECK(std::abs(p.amplitude(0)) < 1e-14);
    CHECK(std::abs(p.amplitude(3)) < 1e-14);
  }
  const auto ghz = ghz_family_probes();
  REQUIRE(ghz.size() == 4);
  for (const auto& p : ghz) {
    for (Eigen::Index i = 1; i < 7; ++i) {
      CHECK(std::abs(p.amplitude(i)) < 1e-14);
    }
  }
}

TEST_CASE("GHZ channel teleportation at theta = 0 is uniform and exact") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const auto search =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes());
  REQUIRE(search.all_found);
  for (const auto& [name, res] : search.outcomes) {
    CHECK(res.best_fidelity > 1.0 - 1e-12);
    CHECK(res.entry->local);
  }

  const PureState input = epr_input(0.6, 0.8);
  const auto report = teleport(input, ch, basis, search.to_recovery_map(),
                               input.relabeled({"B", "C"}));
  CHECK(report.success);
  CHECK(std::abs(report.prob_sum - 1.0) < 1e-12);
  REQUIRE(report.outcomes.size() == 8);
  for (const auto& o : report.outcomes) {
    CHECK(std::abs(o.probability - 0.125) < 1e-12);
    CHECK(o.fidelity > 1.0 - 1e-12);
    CHECK(o.recovery_local);
  }
}

TEST_CASE("nonzero basis angle needs the phase-augmented Pauli space") {
  const double theta = 0.7;
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(theta);

  const auto bare =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes());
  CHECK_FALSE(bare.all_found);

  const auto phased = find_recovery(
      ch, basis, {SearchSpace::PauliPhaseLocal, {theta}}, epr_family_probes());
  REQUIRE(phased.all_found);

  std::mt19937_64 rng(7);
  const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
  const PureState input = epr_input(alpha, beta);
  const auto report = teleport(input, ch, basis, phased.to_recovery_map(),
                               input.relabeled({"B", "C"}));
  CHECK(report.min_fidelity > 1.0 - 1e-10);
  for (const auto& o : report.outcomes) {
    CHECK(std::abs(o.probability - 0.125) < 1e-12);
  }
}

TEST_CASE("recovery search is deterministic") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.7);
  const SearchOptions opts{SearchSpace::PauliPhaseLocal, {0.7}};
  const auto a = find_recovery(ch, basis, opts, epr_family_probes());
  const auto b = find_recovery(ch, basis, opts, epr_family_probes());
  REQUIRE(a.all_found);
  for (const auto& [name, res] : a.outcomes) {
    CHECK_FALSE(res.entry->op_desc.empty());
    CHECK(res.entry->op_desc == b.outcomes.at(name).entry->op_desc);
    CHECK((res.entry->op.matrix() - b.outcomes.at(name).entry->op.matrix())
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("the w_tilde channel defeats local Pauli recovery") {
  const ChannelSpec ch = w_tilde_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);

  const auto local =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes());
  CHECK_FALSE(local.all_found);

  // On a failing outcome even ten thousand sampled local-unitary pairs stay
  // short of fidelity 1.
  SearchOptions sampled{SearchSpace::LocalUnitarySample};
  sampled.samples = 10000;
  sampled.seed = 42;
  const auto samples = find_recovery(ch, basis, sampled, epr_family_probes());
  CHECK_FALSE(samples.all_found);
  bool saw_failing = false;
  for (const auto& [name, res] : local.outcomes) {
    if (res.found) continue;
    saw_failing = true;
    CHECK(samples.outcomes.at(name).best_fidelity < 1.0 - 1e-6);
  }
  CHECK(saw_failing);
}

TEST_CASE("the w_tilde channel works with V-composed recovery operators") {
  const ChannelSpec ch = w_tilde_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const auto search = find_recovery(ch, basis, {SearchSpace::VTimesPauli},
                                    epr_family_probes());
  REQUIRE(search.all_found);
  int non_local = 0;
  for (const auto& [name, res] : search.outcomes) {
    if (!res.entry->local) ++non_local;
  }
  CHECK(non_local >= 1);

  const PureState input = epr_input(0.6, 0.8);
  const auto report = teleport(input, ch, basis, search.to_recovery_map(),
                               input.relabeled({"B", "C"}));
  CHECK(report.success);
  CHECK(report.min_fidelity > 1.0 - 1e-10);
  for (const auto& o : report.outcomes) {
    CHECK(std::abs(o.probability - 0.125) < 1e-12);
  }
}

TEST_CASE("channel and recovery transform together") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const auto search =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes());
  const RecoveryMap base = search.to_recovery_map();

  const QOperator v = catalog::v_operator();
  const ChannelSpec moved = transform_channel(ch, v, {"B", "C"});
  CHECK(fidelity(moved.state, catalog::w_tilde()) > 1.0 - 1e-12);

  const RecoveryMap lifted = transform_recovery(base, v, {2, 2});
  std::mt19937_64 rng(11);
  const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
  const PureState input = epr_input(alpha, beta);
  const PureState reference =
      apply(input.relabeled({"B", "C"}), v, {"B", "C"});
  const auto report = teleport(input, moved, basis, lifted, reference);
  CHECK(report.min_fidelity > 1.0 - 1e-10);

  CHECK_THROWS_AS(transform_channel(ch, v, {"A", "B"}), std::invalid_argument);
}

TEST_CASE("input rotation moves into the basis: general unitary") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const RecoveryMap recovery =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes())
          .to_recovery_map();

  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const QOperator r(haar_unitary(4, rng));
    const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
    const PureState base_input = epr_input(alpha, beta);
    const PureState rotated_input = apply(base_input, r, {"1", "2"});
    const MeasurementBasis rotated =
        transform_input(basis, r, {"1", "2"}, ch.state.labels());
    const auto report = teleport(rotated_input, ch, rotated, recovery,
                                 base_input.relabeled({"B", "C"}));
    CHECK(report.min_fidelity > 1.0 - 1e-10);
    CHECK(std::abs(report.prob_sum - 1.0) < 1e-10);
  }

  CHECK_THROWS_AS(
      transform_input(basis, catalog::pauli(catalog::Pauli::X), {"A"},
                      ch.state.labels()),
      std::invalid_argument);
}

TEST_CASE("the V-rotated basis teleports alpha|11> + beta|Psi->") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const RecoveryMap recovery =
      find_recovery(ch, basis, {SearchSpace::PauliLocal}, epr_family_probes())
          .to_recovery_map();
  const MeasurementBasis rotated = transform_input(
      basis, catalog::v_operator(), {"1", "2"}, ch.state.labels());

  std::mt19937_64 rng(13);
  for (int rep = 0; rep < 20; ++rep) {
    const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
    const double s = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(4);
    v(3) = alpha;
    v(1) = beta * s;
    v(2) = -beta * s;
    const PureState input({"1", "2"}, v);
    const auto report = teleport(input, ch, rotated, recovery,
                                 epr_input(alpha, beta, {"B", "C"}));
    CHECK(report.min_fidelity > 1.0 - 1e-10);
  }
}

TEST_CASE("four-qubit channel teleports the GHZ family") {
  std::mt19937_64 rng(17);
  for (const auto [t1, t2] : {std::pair{0.0, 0.0}, std::pair{0.4, 1.2}}) {
    const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
    const auto report = teleport_ghz4(ghz_family_input(alpha, beta), t1, t2);
    CHECK(report.success);
    REQUIRE(report.outcomes.size() == 16);
    for (const auto& o : report.outcomes) {
      CHECK(std::abs(o.probability - 1.0 / 16.0) < 1e-12);
      CHECK(o.fidelity > 1.0 - 1e-10);
    }
  }
  CHECK_THROWS_AS(teleport_ghz4(catalog::w_state({"1", "2", "3"})),
                  std::invalid_argument);
}

TEST_CASE("four-qubit channel carries alpha|100> + beta|0 Psi+>") {
  std::mt19937_64 rng(19);
  for (const auto [t1, t2] : {std::pair{0.0, 0.0}, std::pair{0.9, 0.3}}) {
    const auto [alpha, beta] = test_helpers::random_amplitude_pair(rng);
    const double s = 1.0 / std::sqrt(2.0);
    CVector v = CVector::Zero(8);
    v(4) = alpha;
    v(1) = beta * s;
    v(2) = beta * s;
    const PureState input({"1", "2", "3"}, v);
    const auto report = teleport_w3_via_ghz4(input, t1, t2);
    CHECK(report.min_fidelity > 1.0 - 1e-10);
    for (const auto& o : report.outcomes) {
      CHECK(std::abs(o.probability - 1.0 / 16.0) < 1e-12);
    }
  }
  // |001> and |010> weights must agree for the Psi+ component.
  CVector bad = CVector::Zero(8);
  bad(4) = std::sqrt(0.5);
  bad(1) = std::sqrt(0.5);
  CHECK_THROWS_AS(teleport_w3_via_ghz4(PureState({"1", "2", "3"}, bad)),
                  std::invalid_argument);
}

TEST_CASE("dense coding round-trips all eight messages over GHZ") {
  for (int m = 0; m < 8; ++m) {
    const auto report = dense_roundtrip(m, catalog::ghz(3));
    CHECK(report.success);
    CHECK(report.decoded == m);
    CHECK(report.deterministic);
  }
  // Message 0 targets the GHZ state itself, so the identity pair encodes it.
  const auto enc0 = dense_encode(0);
  CHECK(catalog::pauli_name(enc0.b) == "I");
  CHECK(catalog::pauli_name(enc0.c) == "I");
  CHECK_THROWS_AS((void)dense_encode(8), std::invalid_argument);
}

TEST_CASE("dense decoding probabilities form a distribution") {
  const auto dec = dense_decode(catalog::w_state());
  double sum = 0.0;
  for (double p : dec.probabilities) sum += p;
  CHECK(std::abs(sum - 1.0) < 1e-12);
  CHECK_FALSE(dec.deterministic);
}

TEST_CASE("a lopsided GHZ-class channel breaks the encoded basis") {
  // |a|^2 - |b|^2 = 0.2.
  const PureState channel =
      catalog::ghz_class({std::sqrt(0.6), std::sqrt(0.4)});
  std::vector<PureState> encoded;
  for (int m = 0; m < 8; ++m) {
    const auto enc = dense_encode(m);
    PureState s = apply(channel, enc.b_op, {"B"});
    encoded.push_back(apply(s, enc.c_op, {"C"}));
  }
  double gram_dev = 0.0;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const Complex g = overlap(encoded[i], encoded[j]);
      gram_dev = std::max(gram_dev, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  CHECK(gram_dev > 0.01);

  bool any_failure = false;
  for (int m = 0; m < 8; ++m) {
    if (!dense_roundtrip(m, channel).success) any_failure = true;
  }
  CHECK(any_failure);
}

TEST_CASE("suitability: GHZ passes, the lopsided channel fails") {
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const auto good = check_channel_suitability(
      ghz3_channel(), basis, epr_family_probes(), {SearchSpace::PauliLocal});
  CHECK(good.suitable);
  CHECK(good.probabilities_input_independent);
  CHECK(good.max_probability_deviation < 1e-12);

  const ChannelSpec skew{catalog::f_ghz(), {"A"}, {{"B"}, {"C"}}};
  const auto bad = check_channel_suitability(
      skew, basis, epr_family_probes(), {SearchSpace::PauliLocal});
  CHECK_FALSE(bad.suitable);
  CHECK_FALSE(bad.probabilities_input_independent);
  // Probes |01> and |10> flip the population imbalance: the outcome
  // probabilities (1 -/+ 1/3)/8 differ by 1/12.
  CHECK(std::abs(bad.max_probability_deviation - 1.0 / 12.0) < 1e-9);
}

TEST_CASE("locality detection across party splits") {
  std::mt19937_64 rng(3);
  const CMatrix u1 = haar_unitary(2, rng);
  const CMatrix u2 = haar_unitary(2, rng);
  CMatrix prod(4, 4);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      prod.block(2 * i, 2 * j, 2, 2) = u1(i, j) * u2;
    }
  }
  CHECK(is_local_across(prod, {2, 2}));
  CHECK_FALSE(is_local_across(catalog::cnot().matrix(), {2, 2}));
  CHECK_FALSE(is_local_across(catalog::v_operator().matrix(), {2, 2}));
  CHECK(is_local_across(catalog::v_operator().matrix(), {4}));
}

TEST_CASE("haar_unitary is unitary and seed-deterministic") {
  std::mt19937_64 a(99), b(99);
  const CMatrix ua = haar_unitary(4, a);
  const CMatrix ub = haar_unitary(4, b);
  CHECK((ua - ub).cwiseAbs().maxCoeff() == 0.0);
  CHECK((ua * ua.adjoint() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-12);
}

TEST_CASE("search guard rails") {
  const ChannelSpec ch = ghz3_channel();
  const MeasurementBasis basis = catalog::ghz_teleport_basis(0.0);
  const std::vector<PureState> two = {epr_input(1.0, 0.0), epr_input(0.0, 1.0)};
  CHECK_THROWS_AS(find_recovery(ch, basis, {SearchSpace::PauliLocal}, two),
                  std::invalid_argument);

  const ChannelSpec four{catalog::ghz(4), {"A"}, {{"B"}, {"C"}, {"D"}}};
  CHECK_THROWS_AS(
      find_recovery(four, catalog::ghz4_teleport_basis(0.0, 0.0),
                    {SearchSpace::VTimesPauli}, ghz_family_probes()),
      std::invalid_argument);

  CHECK(parse_search_space("v-times-pauli") == SearchSpace::VTimesPauli);
  CHECK_THROWS_AS((void)parse_search_space("frobnicate"),
                  std::invalid_argument);
  CHECK(search_space_name(SearchSpace::LocalUnitarySample) ==
        "local-unitary-sample");
}
