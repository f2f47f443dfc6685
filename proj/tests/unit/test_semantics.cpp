#include "doctest.h"
#include "generators.hpp"
#include "oracle.hpp"

using namespace hdql;
using namespace hdql::semantics;
using syntax::parse_action;
using syntax::parse_sentence;
using hdqltest::Rng;

namespace {

Signature qubit() {
    Signature sig(2);
    sig.add_unitary("h", hilbert::gates::hadamard());
    sig.add_unitary("x", hilbert::gates::pauli_x());
    sig.add_measurement("m", {Vector{1, 0}});
    sig.add_vector("w", Vector{0.6, 0.8});
    sig.add_prop("p");
    sig.add_prop("q");
    sig.add_prop("r", true);
    return sig;
}

QuantumModel sample() {
    return QuantumModel(qubit(), {{"p", Region::finite({Vector{1, 0}, Vector{0.8, 0.6}})},
                                  {"q", Region::finite({Vector::zero(2)})},
                                  {"r", Region::span(hilbert::orthonormalize(2, {Vector{1, 0}}))}});
}

}  // namespace

TEST_CASE("propositions, at, and box") {
    const auto m = sample();
    CHECK(sat_at(m, Vector{1, 0}, parse_sentence("p")));
    CHECK_FALSE(sat_at(m, Vector{0, 1}, parse_sentence("p")));
    CHECK(sat_at(m, Vector{0, 1}, parse_sentence("[x] p")));
    CHECK(sat_at(m, Vector{0, 1}, parse_sentence("@(x(w)) p")));
    CHECK(sat_at(m, Vector{0, 1}, parse_sentence("[x | x ; x ; x] p")));
    CHECK_FALSE(sat_at(m, Vector{0, 1}, parse_sentence("[x | h] p")));
}

TEST_CASE("a measurement that annihilates the state leads to 0") {
    const auto m = sample();
    CHECK(sat_at(m, Vector{0, 1}, parse_sentence("[m] q")));
    CHECK(sat_at(m, Vector{0.6, 0.8}, parse_sentence("[m] p")));
}

TEST_CASE("store and here") {
    const auto m = sample();
    CHECK(sat_at(m, Vector{0.6, 0.8}, parse_sentence("store z. [x ; x] here(z)")));
    CHECK_FALSE(sat_at(m, Vector{0.6, 0.8}, parse_sentence("store z. [x] here(z)")));
    CHECK(sat_at(m, Vector{0.6, 0.8}, parse_sentence("store z. [x] @z !here(x(z)) => [x] p")));
}

TEST_CASE("star visits the whole orbit") {
    const auto m = sample();
    CHECK_FALSE(sat_at(m, Vector{1, 0}, parse_sentence("[x*] p")));
    CHECK(sat_at(m, Vector{1, 0}, parse_sentence("<x*> [x] !p")));
    CHECK(sat_at(m, Vector{1, 0}, parse_sentence("until[x](!q, p)")));
    const auto succ = successors(m.sig(), parse_action("(x ; h)*"), Vector{1, 0});
    CHECK_FALSE(succ.truncated);
    CHECK(succ.states.size() >= 2);
}

TEST_CASE("a star orbit that does not close runs out of budget") {
    Signature sig(2);
    const double t = 1.0;  // irrational multiple of pi
    sig.add_unitary("rot", Operator::from_rows({{std::cos(t), -std::sin(t)}, {std::sin(t), std::cos(t)}}));
    sig.add_prop("p");
    const QuantumModel m(sig, {});
    CHECK(successors(sig, parse_action("rot*"), Vector{1, 0}, {16}).truncated);
    CHECK_THROWS_AS((void)sat_at(m, Vector{1, 0}, parse_sentence("[rot*] p"), {16}), BudgetExhausted);
}

TEST_CASE("quantum negation is only defined on closed sentences") {
    const auto m = sample();
    CHECK(sat_at(m, Vector{0, 1}, parse_sentence("~r")));
    CHECK_FALSE(sat_at(m, Vector{1, 1}, parse_sentence("~r")));
    CHECK_THROWS_AS((void)sat_at(m, Vector{0, 1}, parse_sentence("~p")), NotRepresentable);
}

TEST_CASE("closed extensions") {
    const auto m = sample();
    const Subspace hr = closed_extension(m, parse_sentence("[h] r"));
    CHECK(hr.rank() == 1);
    CHECK(hilbert::member(hr, Vector{1, 1}));
    CHECK(closed_extension(m, parse_sentence("r (+) ~r")).rank() == 2);
    CHECK(closed_extension(m, parse_sentence("r /\\ [h] r")).rank() == 0);
    // sasaki hook with r1 = [h]r, r2 = r: only the part orthogonal to [h]r survives
    const Subspace hook = closed_extension(m, parse_sentence("[h] r ~> r"));
    CHECK(hook.rank() == 1);
    CHECK(hilbert::member(hook, Vector{1, -1}));
}

TEST_CASE("global satisfaction") {
    const auto m = sample();
    CHECK(global_sat(m, parse_sentence("@w [m] r")));
    CHECK(global_sat(m, parse_sentence("r ~> r")));
    CHECK_FALSE(global_sat(m, parse_sentence("r")));
    CHECK_FALSE(global_sat(m, parse_sentence("@(x(w)) p => @w q")));
    CHECK_FALSE(global_sat(m, parse_sentence("p")));
    CHECK_THROWS_AS((void)global_sat(m, parse_sentence("[x] p")), NotRepresentable);
    CHECK(state_independent(parse_sentence("@w p /\\ @w q")));
}

TEST_CASE("star fixpoint of a swap") {
    Signature sig(3);
    sig.add_unitary("s", Operator::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    const Subspace s = hilbert::orthonormalize(3, {Vector{1, 0, 0}, Vector{0, 0, 1}});
    const auto fp = star_fixpoint(sig, parse_action("s"), s);
    CHECK(fp.result.rank() == 1);
    CHECK(hilbert::member(fp.result, Vector{0, 0, 1}));
    CHECK(fp.iterations <= 4);
}

TEST_CASE("property: closed extensions match the projector oracle") {
    Rng rng(31);
    for (int i = 0; i < 100; ++i) {
        Signature sig(3);
        sig.add_unitary("u", hdqltest::random_unitary(3, rng));
        sig.add_unitary("v", hdqltest::random_finite_order_unitary(3, rng));
        sig.add_prop("r1", true);
        sig.add_prop("r2", true);
        const QuantumModel m(sig, {{"r1", Region::span(hdqltest::random_subspace(3, rng))},
                                   {"r2", Region::span(hdqltest::random_subspace(3, rng))}});
        const auto rho = hdqltest::random_closed({"r1", "r2"}, {"u", "v"}, 4, rng);
        const auto gap = (hilbert::projector(closed_extension(m, rho)) -
                          hdqltest::oracle_projector(sig, hdqltest::prop_projectors(m), rho))
                             .norm();
        CHECK(gap < 1e-7);
    }
}

TEST_CASE("property: reducts agree with the renamed sentence") {
    Rng rng(32);
    for (int i = 0; i < 50; ++i) {
        Signature sig(2);
        sig.add_unitary("u", hdqltest::random_unitary(2, rng));
        sig.add_prop("r", true);
        const Morphism chi({{"u", "U"}, {"r", "R"}});
        const QuantumModel target(translate(sig, chi), {{"R", Region::span(hdqltest::random_subspace(2, rng))}});
        const QuantumModel source = reduct(target, chi);
        const auto rho = hdqltest::random_closed({"r"}, {"u"}, 3, rng);
        const Vector w = hdqltest::random_unit(2, rng);
        CHECK(sat_at(source, w, rho) == sat_at(target, w, apply_morphism(chi, rho)));
    }
}
