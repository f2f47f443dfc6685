#include "doctest.h"
#include "hdql/spec_file.hpp"
#include "hdql/trace_io.hpp"

using namespace hdql;
using namespace hdql::calculus;
using syntax::parse_sentence;
using syntax::parse_term;

namespace {

Signature qubit() {
    Signature sig(2);
    sig.add_unitary("x", hilbert::gates::pauli_x());
    sig.add_vector("v0", Vector{1, 0});
    sig.add_vector("v1", Vector{0, 1});
    sig.add_prop("p");
    sig.add_prop("r1", true);
    sig.add_prop("r2", true);
    return sig;
}

ProofTree sample_proof() {
    const auto r = prove(qubit(), {parse_sentence("@v1 p"), parse_sentence("@v0 r1")}, parse_term("v0"),
                         parse_sentence("[x] p /\\ (r1 ~> r1)"));
    REQUIRE(r.proof);
    return *r.proof;
}

}  // namespace

TEST_CASE("text traces round-trip byte for byte") {
    const ProofTree t = sample_proof();
    const std::string text = trace::to_text(t);
    CHECK(text.rfind("hdql-proof 1\n", 0) == 0);
    const ProofTree back = trace::from_text(text);
    CHECK(trace::to_text(back) == text);
    CHECK(check_proof(qubit(), back));
}

TEST_CASE("json traces round-trip") {
    const ProofTree t = sample_proof();
    const std::string json = trace::to_json(t);
    const ProofTree back = trace::parse(json);
    CHECK(trace::to_json(back) == json);
    CHECK(trace::to_text(back) == trace::to_text(t));
    CHECK(check_proof(qubit(), back));
}

TEST_CASE("the teleportation proof survives serialization") {
    const auto f = spec::load_spec(std::string(HDQL_DATA_DIR) + "/teleport.hdql");
    const auto r = prove(f.sig, f.axioms, f.goals[0].at, f.goals[0].sentence);
    REQUIRE(r.proof);
    const ProofTree back = trace::parse(trace::to_text(*r.proof));
    CHECK(check_proof(f.sig, back));
}

TEST_CASE("edited traces are caught by the kernel") {
    std::string text = trace::to_text(sample_proof());
    const auto at = text.find("[x] p");
    REQUIRE(at != std::string::npos);
    text.replace(at, 5, "[x] r1");
    // still well-formed, but the proof no longer goes through
    const ProofTree t = trace::from_text(text);
    CHECK_FALSE(check_proof(qubit(), t));
}

TEST_CASE("malformed traces") {
    CHECK_THROWS_AS((void)trace::from_text("not a trace"), Error);
    CHECK_THROWS_AS((void)trace::from_text("hdql-proof 1\ngamma 0\ntree\nCutRule v0 |- p #[]\n"), Error);
    CHECK_THROWS_AS((void)trace::from_json("{\"format\": \"hdql-proof\"}"), Error);
}
