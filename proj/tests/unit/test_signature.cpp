#include "doctest.h"
#include "generators.hpp"

using namespace hdql;
using syntax::parse_sentence;
using syntax::parse_term;

namespace {

Signature qubit() {
    Signature sig(2);
    sig.add_unitary("h", hilbert::gates::hadamard());
    sig.add_unitary("x", hilbert::gates::pauli_x());
    sig.add_measurement("m", {Vector{1, 0}});
    sig.add_vector("w", Vector{0.6, 0.8});
    sig.add_scalar("c", Complex(0, 2));
    sig.add_prop("p");
    sig.add_prop("r", true);
    return sig;
}

}  // namespace

TEST_CASE("symbols share one namespace") {
    Signature sig = qubit();
    CHECK_THROWS_AS(sig.add_prop("h"), Error);
    CHECK_THROWS_AS(sig.add_vector("p", Vector{1, 0}), Error);
    CHECK(sig.has_symbol("m"));
    CHECK_FALSE(sig.has_symbol("zz"));
}

TEST_CASE("frame validation reports non-unitary matrices") {
    Signature sig(2);
    sig.add_unitary("bad", Operator::from_rows({{1, 1}, {0, 1}}));
    const auto v = sig.validate();
    REQUIRE(v.size() == 1);
    CHECK(v[0].symbol == "bad");
    CHECK(v[0].check == "unitarity");
    CHECK(describe(v[0]).find("bad: unitarity") == 0);
    CHECK(qubit().validate().empty());
}

TEST_CASE("wrong dimensions are refused") {
    Signature sig(2);
    CHECK_THROWS_AS(sig.add_vector("v", Vector{1, 0, 0}), DimensionMismatch);
    CHECK_THROWS_AS(sig.add_unitary("u", Operator::identity(4)), DimensionMismatch);
}

TEST_CASE("term evaluation") {
    const Signature sig = qubit();
    CHECK(hilbert::approx_equal(eval_term(sig, parse_term("x(w)")), Vector{0.8, 0.6}));
    CHECK(hilbert::approx_equal(eval_term(sig, parse_term("m(w)")), Vector{1, 0}));
    CHECK(hilbert::approx_equal(eval_term(sig, parse_term("c*w + 0")), Vector{Complex(0, 1.2), Complex(0, 1.6)}));
    CHECK(hilbert::approx_equal(eval_term(sig, parse_term("m(x(m(w)))")), Vector::zero(2)));
    CHECK_THROWS_AS((void)eval_term(sig, parse_term("y(w)")), ResolutionError);
}

TEST_CASE("diagram equality compares values") {
    const Signature sig = qubit();
    CHECK(diagram_eq(sig, parse_term("h(h(w))"), parse_term("w")));
    CHECK(diagram_eq(sig, parse_term("x(x(w))"), parse_term("{1}*w")));
    CHECK_FALSE(diagram_eq(sig, parse_term("x(w)"), parse_term("w")));
    CHECK(diagram_residual(sig, parse_term("x(w)"), parse_term("w")) > 0.1);
}

TEST_CASE("morphisms rename symbols but not bound variables") {
    const Signature sig = qubit();
    const Morphism chi({{"h", "H1"}, {"x", "X1"}, {"m", "M1"}, {"w", "W1"}, {"c", "C1"}, {"p", "P1"}, {"r", "R1"}});
    const auto s = apply_morphism(chi, parse_sentence("store w. [h ; m] @w p /\\ @(c*w) r"));
    CHECK(to_string(s) == to_string(parse_sentence("store w. [H1 ; M1] @w P1 /\\ @(C1*w) R1")));
    const Signature t = translate(sig, chi);
    CHECK(t.is_closed("R1"));
    CHECK(t.is_measurement("M1"));
    const Signature back = reduct(t, chi);
    CHECK(back.is_unitary("h"));
    CHECK(hilbert::approx_equal(back.vectors().at("w"), sig.vectors().at("w")));
    CHECK(chi.inverse()("P1") == "p");
    CHECK_THROWS_AS(Morphism({{"a", "b"}, {"c", "b"}}), InvalidMorphism);
}
