#include "doctest.h"
#include "generators.hpp"
#include "hdql/calculus.hpp"
#include "oracle.hpp"

using namespace hdql;
using namespace hdql::calculus;
using syntax::parse_sentence;
using syntax::parse_term;
using hdqltest::Rng;

namespace {

Signature qubit() {
    Signature sig(2);
    sig.add_unitary("h", hilbert::gates::hadamard());
    sig.add_unitary("x", hilbert::gates::pauli_x());
    sig.add_measurement("m", {Vector{1, 0}});
    sig.add_vector("v0", Vector{1, 0});
    sig.add_vector("v1", Vector{0, 1});
    sig.add_vector("w", Vector{0.6, 0.8});
    sig.add_prop("p");
    sig.add_prop("q");
    sig.add_prop("r1", true);
    sig.add_prop("r2", true);
    return sig;
}

std::vector<syntax::Sentence> sentences(std::initializer_list<const char*> texts) {
    std::vector<syntax::Sentence> out;
    for (const char* t : texts) out.push_back(parse_sentence(t));
    return out;
}

Outcome run(const std::vector<syntax::Sentence>& gamma, const char* k, const char* goal,
            const ProverOptions& options = {}) {
    const Signature sig = qubit();
    const auto r = prove(sig, gamma, parse_term(k), parse_sentence(goal), options);
    if (r.proof) CHECK(check_proof(sig, *r.proof));
    return r.outcome;
}

}  // namespace

TEST_CASE("facts from the context") {
    const auto g = sentences({"@w p", "@v0 (p /\\ [h] q)"});
    CHECK(run(g, "w", "p") == Outcome::Proved);
    CHECK(run(g, "v0", "[h] q") == Outcome::Proved);
    CHECK(run(g, "x(x(w))", "p") == Outcome::Proved);
    CHECK(run(g, "h(v0)", "q") == Outcome::Proved);
    CHECK(run(g, "w", "q") == Outcome::Failed);
}

TEST_CASE("a goal outside the context fails with a reason") {
    const Signature sig = qubit();
    const auto r = prove(sig, sentences({"@w p"}), parse_term("w"), parse_sentence("q"));
    CHECK(r.outcome == Outcome::Failed);
    CHECK_FALSE(r.proof);
    CHECK(r.report.find("no derivation") != std::string::npos);
}

TEST_CASE("boxes, choice and composition") {
    const auto g = sentences({"@v1 p", "@v0 p", "@(h(v1)) q"});
    CHECK(run(g, "v0", "[x] p") == Outcome::Proved);
    CHECK(run(g, "v0", "[x | x ; x] p") == Outcome::Proved);
    CHECK(run(g, "v0", "[x ; h] q") == Outcome::Proved);
    CHECK(run(g, "v0", "[x | h] p") == Outcome::Failed);
}

TEST_CASE("measurement successors") {
    const auto g = sentences({"@v0 p", "@(0) q"});
    CHECK(run(g, "w", "[m] p") == Outcome::Proved);
    CHECK(run(g, "v1", "[m] q") == Outcome::Proved);
    CHECK(run(g, "v1", "[m] p") == Outcome::Failed);
}

TEST_CASE("store binds the current state") {
    const auto g = sentences({"store z. @z p", "@w q"});
    CHECK(run(g, "v1", "p") == Outcome::Proved);
    CHECK(run(g, "w", "store y. [x ; x] @y q") == Outcome::Proved);
}

TEST_CASE("implications and modus ponens") {
    const auto g = sentences({"@w p", "@w (p => [x] q)", "p => r1"});
    CHECK(run(g, "w", "[x] q") == Outcome::Proved);
    CHECK(run(g, "w", "r1") == Outcome::Proved);
    CHECK(run(g, "w", "q => q") == Outcome::Proved);
    CHECK(run(g, "v0", "r1") == Outcome::Failed);
}

TEST_CASE("closed sentences: origin, sums and scaling") {
    const auto g = sentences({"@v0 r1", "@v1 r1"});
    CHECK(run({}, "0", "r1") == Outcome::Proved);
    CHECK(run(g, "w", "r1") == Outcome::Proved);
    CHECK(run(g, "{2i}*v0 + v1", "r1") == Outcome::Proved);
    CHECK(run(sentences({"@v0 r1"}), "w", "r1") == Outcome::Failed);
}

TEST_CASE("sasaki hook introduction") {
    CHECK(run({}, "w", "r1 ~> r1") == Outcome::Proved);
    CHECK(run(sentences({"r1 ~> r2"}), "w", "r1 ~> r2") == Outcome::Proved);
    // one instance of r2 says nothing about the hook at another state
    CHECK(run(sentences({"@v0 r2"}), "v1", "r1 ~> r2") == Outcome::Failed);
}

TEST_CASE("star goals") {
    const auto g = sentences({"@v0 p", "@v1 p"});
    CHECK(run(g, "v0", "[x*] p") == Outcome::Proved);
    CHECK(run(sentences({"@v0 p"}), "v0", "[x*] p") == Outcome::Failed);
    CHECK(run(g, "v0", "[x*] p", {.star = {1}}) == Outcome::Unknown);
}

TEST_CASE("a tiny node budget gives unknown") {
    const auto g = sentences({"@v1 p", "@v0 p"});
    const Signature sig = qubit();
    const auto r = prove(sig, g, parse_term("v0"), parse_sentence("[x ; x ; x] p"), {.node_budget = 2});
    CHECK(r.outcome == Outcome::Unknown);
    CHECK(r.report.find("budget") != std::string::npos);
}

TEST_CASE("inputs outside the clause fragment are refused") {
    const Signature sig = qubit();
    CHECK_THROWS_AS((void)prove(sig, {}, parse_term("w"), parse_sentence("!p")), Error);
    CHECK_THROWS_AS((void)prove(sig, sentences({"~p"}), parse_term("w"), parse_sentence("p")), Error);
    CHECK_THROWS_AS((void)prove(sig, {}, parse_term("z"), parse_sentence("p")), Error);
}

TEST_CASE("property: provable iff true in the least model") {
    Rng rng(41);
    const std::vector<std::string> actions{"h", "x", "m"};
    hdqltest::BasicVocabulary voc{{"p", "q", "r1"}, actions, {parse_term("v0"), parse_term("v1"), parse_term("w")}};
    const Signature sig = qubit();
    for (int i = 0; i < 150; ++i) {
        std::vector<syntax::Sentence> gamma;
        for (std::size_t n = hdqltest::uniform(rng, 1, 4); n > 0; --n) {
            gamma.push_back(syntax::Sentence::at(hdqltest::random_term(voc, actions, 2, rng),
                                                 hdqltest::random_basic(voc, 3, rng, 2)));
        }
        const auto k = hdqltest::random_term(voc, actions, 2, rng);
        const auto goal = hdqltest::random_basic(voc, 3, rng, 2);
        const hdqltest::LeastModel least(sig, gamma);
        const bool truth = least.sat(least.eval(k), goal);
        const auto r = prove(sig, gamma, k, goal);
        REQUIRE(r.outcome != Outcome::Unknown);
        CAPTURE(syntax::to_string(goal));
        CHECK((r.outcome == Outcome::Proved) == truth);
    }
}
