#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "test_helpers.hpp"
#include "wlab/catalog.hpp"
#include "wlab/protocols.hpp"
#include "wlab/qcore.hpp"

using namespace wlab;
using test_helpers::kron_oracle;
using test_helpers::random_state;

namespace {

PureState ket(std::vector<QubitLabel> labels, Eigen::Index idx) {
  return PureState::basis_ket(std::move(labels), idx);
}

}  // namespace

TEST_CASE("tensor of basis kets concatenates registers") {
  const PureState s = tensor(ket({"1"}, 0), ket({"2"}, 0));
  CHECK(s.labels() == std::vector<QubitLabel>{"1", "2"});
  CHECK(s.amplitude(0) == Complex(1.0));
}

TEST_CASE("tensor of |+> and |0>") {
  const double r = 1.0 / std::sqrt(2.0);
  CVector plus(2);
  plus << r, r;
  const PureState s = tensor(PureState({"1"}, plus), ket({"2"}, 0));
  CHECK(std::abs(s.amplitude(0) - r) < 1e-15);
  CHECK(std::abs(s.amplitude(2) - r) < 1e-15);
  CHECK(std::abs(s.amplitude(1)) < 1e-15);
  CHECK(std::abs(s.amplitude(3)) < 1e-15);
}

TEST_CASE("tensor of an EPR-like input with the GHZ channel") {
  const double r = 1.0 / std::sqrt(2.0);
  CVector in = CVector::Zero(4);
  in(1) = r;
  in(2) = r;
  const PureState input({"1", "2"}, in);
  const PureState channel = catalog::ghz(3);
  const PureState total = tensor(input, channel);

  const CVector expect = kron_oracle(in, channel.amplitudes());
  CHECK((total.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-15);

  int nonzero = 0;
  for (Eigen::Index i = 0; i < total.dim(); ++i) {
    if (std::abs(total.amplitude(i)) > 1e-15) {
      CHECK(std::abs(std::abs(total.amplitude(i)) - 0.5) < 1e-15);
      ++nonzero;
    }
  }
  CHECK(nonzero == 4);
}

TEST_CASE("tensor rejects duplicate labels, naming the offender") {
  try {
    tensor(ket({"1", "Q"}, 0), ket({"Q"}, 0));
    FAIL("expected rejection");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("Q") != std::string::npos);
  }
}

TEST_CASE("apply: bit flip on the first qubit") {
  const PureState s = apply(ket({"1", "2"}, 0), catalog::pauli(catalog::Pauli::X), {"1"});
  CHECK(std::abs(s.amplitude(2) - 1.0) < 1e-15);
}

TEST_CASE("apply: identity leaves the state alone") {
  std::mt19937_64 rng(7);
  const PureState s = random_state({"a", "b", "c"}, rng);
  CMatrix id4 = CMatrix::Identity(4, 4);
  const PureState t = apply(s, QOperator(id4), {"b", "c"});
  CHECK((t.amplitudes() - s.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("apply: V converts the GHZ state into the W-tilde state") {
  const PureState s = apply(catalog::ghz(3), catalog::v_operator(), {"B", "C"});
  CHECK(equal_up_to_global_phase(s, catalog::w_tilde(), 1e-12));
}

TEST_CASE("apply validates labels and arity") {
  const PureState s = ket({"1", "2"}, 0);
  CHECK_THROWS_AS(apply(s, catalog::pauli(catalog::Pauli::X), {"nope"}),
                  std::invalid_argument);
  CHECK_THROWS_AS(apply(s, catalog::cnot(), {"1"}), std::invalid_argument);
}

TEST_CASE("measure: Bell eigenstate gives its outcome with certainty") {
  const PureState phi_plus = catalog::bell(catalog::BellKind::PhiPlus);
  std::vector<CVector> vectors;
  std::vector<std::string> names;
  for (auto kind : {catalog::BellKind::PhiPlus, catalog::BellKind::PhiMinus,
                    catalog::BellKind::PsiPlus, catalog::BellKind::PsiMinus}) {
    vectors.push_back(catalog::bell_vector(kind));
    names.push_back(catalog::bell_name(kind));
  }
  const MeasurementBasis bell_basis({"1", "2"}, vectors, names);
  const auto outcomes = measure(phi_plus, bell_basis);
  CHECK(std::abs(outcomes[0].probability - 1.0) < 1e-14);
  for (int x = 1; x < 4; ++x) CHECK(outcomes[x].probability < 1e-14);
  // Full-register measurement leaves the trivial scalar residual.
  REQUIRE(outcomes[0].residual.has_value());
  CHECK(outcomes[0].residual->num_qubits() == 0);
  CHECK(std::abs(outcomes[0].residual->amplitude(0)) - 1.0 < 1e-14);
}

TEST_CASE("measure: EPR input over GHZ channel gives eight outcomes of 1/8") {
  const double r = 1.0 / std::sqrt(2.0);
  CVector in = CVector::Zero(4);
  in(1) = 0.6;
  in(2) = 0.8;
  const PureState total = tensor(PureState({"1", "2"}, in), catalog::ghz(3));
  const auto outcomes = measure(total, catalog::ghz_teleport_basis(0.0));
  double sum = 0.0;
  for (const auto& o : outcomes) {
    CHECK(std::abs(o.probability - 0.125) < 1e-12);
    sum += o.probability;
    REQUIRE(o.residual.has_value());
    CHECK(o.residual->labels() == std::vector<QubitLabel>{"B", "C"});
  }
  CHECK(std::abs(sum - 1.0) < 1e-12);
  (void)r;
}

TEST_CASE("measure rejects unknown subset labels") {
  const PureState s = ket({"1", "2"}, 0);
  std::vector<CVector> vectors = {catalog::pi_vector(1, 0.0),
                                  catalog::pi_vector(-1, 0.0)};
  const MeasurementBasis basis({"x"}, vectors, {"+", "-"});
  CHECK_THROWS_AS(measure(s, basis), std::invalid_argument);
}

TEST_CASE("fidelity basics") {
  std::mt19937_64 rng(11);
  const PureState s = random_state({"1", "2"}, rng);
  CHECK(std::abs(fidelity(s, s) - 1.0) < 1e-14);
  CHECK(fidelity(ket({"q"}, 0), ket({"q"}, 1)) < 1e-14);
  CHECK_THROWS_AS(fidelity(ket({"a"}, 0), ket({"b"}, 0)),
                  std::invalid_argument);
}

TEST_CASE("fidelity of W and W-tilde matches the direct dot product") {
  const PureState w = catalog::w_state();
  const PureState wt = catalog::w_tilde();
  // Independent oracle: eight-component dot product by hand.
  Complex dot = 0.0;
  for (Eigen::Index i = 0; i < 8; ++i) {
    dot += std::conj(w.amplitude(i)) * wt.amplitude(i);
  }
  CHECK(std::abs(fidelity(w, wt) - std::norm(dot)) < 1e-14);
  CHECK(fidelity(w, wt) > 0.0);
}

TEST_CASE("fidelity is label-order insensitive") {
  std::mt19937_64 rng(13);
  const PureState s = random_state({"1", "2", "3"}, rng);
  const PureState p = permute(s, {"3", "1", "2"});
  CHECK(std::abs(fidelity(s, p) - 1.0) < 1e-13);
}

TEST_CASE("equal_up_to_global_phase") {
  const PureState a = ket({"1", "2"}, 1);
  CVector phased = a.amplitudes() * std::polar(1.0, M_PI / 3.0);
  CHECK(equal_up_to_global_phase(a, PureState({"1", "2"}, phased)));
  CHECK_FALSE(equal_up_to_global_phase(a, ket({"1", "2"}, 2)));
  CHECK_FALSE(equal_up_to_global_phase(
      catalog::bell(catalog::BellKind::PhiPlus),
      catalog::bell(catalog::BellKind::PhiMinus)));
}

TEST_CASE("permute reorders amplitudes consistently") {
  const PureState s = ket({"1", "2"}, 1);  // |01>
  const PureState p = permute(s, {"2", "1"});
  CHECK(std::abs(p.amplitude(2) - 1.0) < 1e-15);  // |10> in (2,1) order

  const PureState wt = catalog::w_tilde();
  const PureState q = permute(wt, {"C", "A", "B"});
  // Index-arithmetic oracle: bit of A lands in the middle, B last, C first.
  CVector expect = CVector::Zero(8);
  for (Eigen::Index i = 0; i < 8; ++i) {
    const Eigen::Index a = (i >> 2) & 1, b = (i >> 1) & 1, c = i & 1;
    expect((c << 2) | (a << 1) | b) = wt.amplitude(i);
  }
  CHECK((q.amplitudes() - expect).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(fidelity(q, wt) - 1.0) < 1e-14);

  const PureState back = permute(q, {"A", "B", "C"});
  CHECK((back.amplitudes() - wt.amplitudes()).cwiseAbs().maxCoeff() < 1e-15);

  CHECK_THROWS_AS(permute(s, {"1", "1"}), std::invalid_argument);
  CHECK_THROWS_AS(permute(s, {"1", "3"}), std::invalid_argument);
}

TEST_CASE("property: unitaries preserve the norm") {
  std::mt19937_64 rng(101);
  for (int it = 0; it < 50; ++it) {
    const PureState s = random_state({"1", "2", "3"}, rng);
    const QOperator u(protocols::haar_unitary(4, rng));
    const PureState t = apply(s, u, {"3", "1"});
    CHECK(std::abs(t.amplitudes().norm() - 1.0) < tol::norm);
  }
}

TEST_CASE("property: complete measurements have unit total probability") {
  std::mt19937_64 rng(103);
  for (int it = 0; it < 25; ++it) {
    const PureState s = random_state({"1", "2", "A", "B", "C"}, rng);
    const auto outcomes = measure(s, catalog::ghz_teleport_basis(0.4));
    double sum = 0.0;
    for (const auto& o : outcomes) sum += o.probability;
    CHECK(std::abs(sum - 1.0) < tol::prob);
  }
}

TEST_CASE("property: measuring a basis vector yields that outcome surely") {
  const auto basis = catalog::ghz_teleport_basis(1.1);
  for (std::size_t x = 0; x < basis.vectors().size(); ++x) {
    const PureState s({"1", "2", "A"}, basis.vectors()[x]);
    const auto outcomes = measure(s, basis);
    for (std::size_t y = 0; y < outcomes.size(); ++y) {
      CHECK(std::abs(outcomes[y].probability - (x == y ? 1.0 : 0.0)) <
            tol::prob);
    }
  }
}

TEST_CASE("property: apply distributes over tensor factors") {
  std::mt19937_64 rng(107);
  for (int it = 0; it < 25; ++it) {
    const PureState a = random_state({"1", "2"}, rng);
    const PureState b = random_state({"3"}, rng);
    const QOperator u(protocols::haar_unitary(4, rng));
    const QOperator w(protocols::haar_unitary(2, rng));
    CMatrix uw(8, 8);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        uw.block(2 * i, 2 * j, 2, 2) = u.matrix()(i, j) * w.matrix();
      }
    }
    const PureState lhs = apply(tensor(a, b), QOperator(uw), {"1", "2", "3"});
    const PureState rhs = tensor(apply(a, u, {"1", "2"}), apply(b, w, {"3"}));
    CHECK((lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff() <
          1e-12);
  }
}

TEST_CASE("property: fidelity 1 exactly when equal up to global phase") {
  std::mt19937_64 rng(109);
  for (int it = 0; it < 50; ++it) {
    const PureState s = random_state({"1", "2"}, rng);
    const double f = fidelity(s, random_state({"1", "2"}, rng));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0 + 1e-15);
    CVector phased = s.amplitudes() * std::polar(1.0, 0.5 + it * 0.1);
    const PureState t({"1", "2"}, phased);
    CHECK(std::abs(fidelity(s, t) - 1.0) < 1e-14);
    CHECK(equal_up_to_global_phase(s, t, tol::phase));
  }
}

TEST_CASE("states validate their invariants at construction") {
  CVector bad(3);
  bad << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(PureState({"1"}, bad), std::invalid_argument);
  CVector unnorm(2);
  unnorm << 2.0, 0.0;
  CHECK_THROWS_AS(PureState({"1"}, unnorm), std::invalid_argument);
  const PureState fixed = PureState::normalized({"1"}, unnorm);
  CHECK(std::abs(fixed.amplitude(0) - 1.0) < 1e-15);
  CMatrix not_unitary = CMatrix::Ones(2, 2);
  CHECK_THROWS_AS((void)QOperator(not_unitary), std::invalid_argument);
}
