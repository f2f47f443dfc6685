#include <algorithm>

#include "doctest.h"
#include "hdql/spec_file.hpp"

using namespace hdql;
using namespace hdql::spec;

namespace {

const char* kSmall = R"(# a qubit
SPACE 2
SCALARS
  c = 0.5 + 0.5i
VECTORS
  w = 0.6*|0> + 0.8*|1>
  v = (1, i) / sqrt(2)
UNITARY
  h = H
  t = [[1, 0], [0, exp(i*pi/4)]]
MEASURE
  q0 = |0>
  all = span(|0>, |1>)
PROPS
  p, r closed
AXIOMS
  @w p
  @(q0(w)) r
GOAL AT w PROVE p
GOAL
  AT h(h(w)) PROVE p
VALUATION
  p = w
  r = span(|0>)
)";

bool mentions(const SpecError& e, const std::string& what) {
    return std::any_of(e.problems().begin(), e.problems().end(),
                       [&](const std::string& p) { return p.find(what) != std::string::npos; });
}

}  // namespace

TEST_CASE("a complete file") {
    const SpecFile f = parse_spec(kSmall);
    CHECK(f.sig.dim() == 2);
    CHECK(f.sig.is_unitary("t"));
    CHECK(f.sig.is_measurement("all"));
    CHECK(f.sig.measurements().at("all").subspace.rank() == 2);
    CHECK(f.sig.is_closed("r"));
    CHECK_FALSE(f.sig.is_closed("p"));
    CHECK(f.sig.scalars().at("c") == Complex(0.5, 0.5));
    CHECK(hilbert::approx_equal(f.sig.vectors().at("v"), Vector{Complex(1 / std::sqrt(2.0), 0),
                                                                Complex(0, 1 / std::sqrt(2.0))}));
    CHECK(f.axioms.size() == 2);
    REQUIRE(f.goals.size() == 2);
    CHECK(f.goals[0].line == 19);
    CHECK(syntax::to_string(f.goals[1].at) == "h(h(w))");
    REQUIRE(f.has_valuation);
    const auto m = model_of(f);
    CHECK(semantics::sat_at(m, f.sig.vectors().at("w"), syntax::parse_sentence("p")));
}

TEST_CASE("helpers and tensor products") {
    const SpecFile f = parse_spec(R"(SPACE 4
DEFINE
  a = (|0> + |1>) / sqrt(2)
VECTORS
  bell = (|00> + |11>) / sqrt(2)
  pa = a (x) |1>
UNITARY
  hx = H (x) X
  cx = CNOT
PROPS
  p
)");
    CHECK_FALSE(f.sig.has_symbol("a"));
    CHECK(hilbert::approx_equal(f.sig.vectors().at("pa"), Vector{0, 1 / std::sqrt(2.0), 0, 1 / std::sqrt(2.0)}));
    CHECK(f.sig.validate().empty());
}

TEST_CASE("missing SPACE") {
    try {
        (void)parse_spec("PROPS\n  p\n");
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(mentions(e, "missing SPACE"));
    }
}

TEST_CASE("a non-unitary matrix is reported at its line") {
    try {
        (void)parse_spec("SPACE 2\nUNITARY\n  ok = X\n  bad = [[1, 1], [0, 1]]\nPROPS\n  p\n");
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(mentions(e, "4:1: bad: unitarity"));
    }
}

TEST_CASE("every problem is collected with its position") {
    try {
        (void)parse_spec("SPACE 2\nVECTORS\n  w = |012>\n  u = |000>\nPROPS\n  p\nAXIOMS\n  @w q\n  @w [zz] p\n");
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(e.problems().size() >= 4);
        CHECK(mentions(e, "3:"));
        CHECK(mentions(e, "4:"));
        CHECK(mentions(e, "undeclared proposition q"));
        CHECK(mentions(e, "undeclared action symbol zz"));
    }
}

TEST_CASE("bad sentences point into the line") {
    try {
        (void)parse_spec("SPACE 2\nPROPS\n  p\nAXIOMS\n  p /\\ \n");
        FAIL("expected an error");
    } catch (const SpecError& e) {
        CHECK(mentions(e, "5:"));
    }
}

TEST_CASE("valuation entries must match the props") {
    CHECK_THROWS_AS((void)parse_spec("SPACE 2\nPROPS\n  p\nVALUATION\n  p = span(|0>)\n"), SpecError);
    CHECK_THROWS_AS((void)parse_spec("SPACE 2\nPROPS\n  p\nVALUATION\n  s = |0>\n"), SpecError);
}

TEST_CASE("missing files") {
    CHECK_THROWS_AS((void)load_spec("/nonexistent/file.hdql"), IoError);
}

TEST_CASE("the teleportation file") {
    const SpecFile f = load_spec(std::string(HDQL_DATA_DIR) + "/teleport.hdql");
    CHECK(f.sig.dim() == 8);
    CHECK(f.sig.measurements().size() == 4);
    CHECK(f.sig.unitaries().size() == 6);
    CHECK(f.goals.size() == 1);
    CHECK(f.sig.validate().empty());
}

TEST_CASE("standalone vector and operator parsing") {
    CHECK(hilbert::approx_equal(parse_vector("|1> * 2", 2), Vector{0, 2}));
    CHECK(hilbert::is_unitary(parse_operator("H * X", 2)));
    CHECK_THROWS_AS((void)parse_vector("|1>", 4), Error);
}
