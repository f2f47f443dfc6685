#include "doctest.h"
#include "generators.hpp"
#include "hdql/initial_model.hpp"

using namespace hdql;
using namespace hdql::initial;
using syntax::parse_sentence;
using syntax::parse_term;

namespace {

Signature space3() {
    Signature sig(3);
    sig.add_unitary("s", Operator::from_rows({{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
    sig.add_vector("v1", Vector{1, 0, 0});
    sig.add_vector("v2", Vector{0, 1, 0});
    sig.add_vector("v3", Vector{0, 0, 1});
    sig.add_prop("p");
    sig.add_prop("r", true);
    return sig;
}

}  // namespace

TEST_CASE("empty context: closed props hold only at the origin") {
    const auto im = build_initial(space3(), {});
    CHECK(im.model.region("r").subspace().rank() == 0);
    CHECK(im.model.region("p").states().empty());
    CHECK(holds(im, "r", Term::origin()) == Verdict::Holds);
    CHECK(holds(im, "r", parse_term("v1")) == Verdict::Fails);
}

TEST_CASE("two orthogonal facts span a plane") {
    const auto im = build_initial(space3(), {parse_sentence("@v1 r"), parse_sentence("@v2 r")});
    const Subspace& r = im.model.region("r").subspace();
    CHECK(r.rank() == 2);
    CHECK(hilbert::member(r, Vector{1, 1, 0}));
    CHECK(holds(im, "r", parse_term("{0.5}*v1 + v2")) == Verdict::Holds);
    CHECK(holds(im, "r", parse_term("v3")) == Verdict::Fails);
}

TEST_CASE("finite props hold exactly on derived states") {
    const auto im = build_initial(space3(), {parse_sentence("@v1 [s] p")});
    CHECK(holds(im, "p", parse_term("v2")) == Verdict::Holds);
    CHECK(holds(im, "p", parse_term("s(s(v2))")) == Verdict::Holds);
    CHECK(holds(im, "p", parse_term("v1")) == Verdict::Fails);
    REQUIRE(im.model.region("p").states().size() == 1);
    CHECK(hilbert::approx_equal(im.model.region("p").states()[0], Vector{0, 1, 0}));
}

TEST_CASE("the universe is closed under the actions and deduplicated") {
    Signature sig(2);
    sig.add_unitary("x", hilbert::gates::pauli_x());
    sig.add_vector("w", Vector{0.6, 0.8});
    sig.add_prop("p");
    const auto u = term_universe(sig, {parse_sentence("@w p")}, 6);
    CHECK(u.size() == 3);  // 0, w, x(w)
}

TEST_CASE("minimality against other models of the context") {
    const Signature sig = space3();
    const std::vector<syntax::Sentence> gamma{parse_sentence("@v1 r"), parse_sentence("@v1 [s] p")};
    const auto im = build_initial(sig, gamma);
    const std::vector<Term> samples{parse_term("v1"), parse_term("v2"), parse_term("v3"), Term::origin()};

    const semantics::QuantumModel bigger(
        sig, {{"p", semantics::Region::finite({Vector{0, 1, 0}, Vector{0, 0, 1}})},
              {"r", semantics::Region::span(hilbert::orthonormalize(3, {Vector{1, 0, 0}, Vector{0, 0, 1}}))}});
    CHECK(check_minimality(im, bigger, samples));

    const semantics::QuantumModel not_a_model(sig, {{"r", semantics::Region::span(Subspace::full(3))}});
    const auto rep = check_minimality(im, not_a_model, samples);
    CHECK_FALSE(rep.precondition);
    CHECK_FALSE(rep);
}
