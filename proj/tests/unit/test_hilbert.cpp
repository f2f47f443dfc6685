#include "doctest.h"
#include "generators.hpp"

using namespace hdql;
using namespace hdql::hilbert;
using hdqltest::Rng;

TEST_CASE("kets are big-endian computational basis vectors") {
    const Vector v = Vector::ket("01");
    REQUIRE(v.dim() == 4);
    CHECK(v[1] == Complex(1, 0));
    CHECK(v[0] == Complex(0, 0));
    CHECK(Vector::ket("110") == Vector::basis(8, 6));
}

TEST_CASE("tolerance scales with the operand norm") {
    const Tolerance t(1e-9);
    CHECK(t.scaled(0.5) == doctest::Approx(1e-9));
    CHECK(t.scaled(100.0) == doctest::Approx(1e-7));
    CHECK(approx_equal(Vector{1e6, 0}, Vector{1e6 + 1e-4, 0}));
    CHECK_FALSE(approx_equal(Vector{1, 0}, Vector{1 + 1e-6, 0}));
}

TEST_CASE("orthonormalize drops dependent vectors") {
    const Subspace s = orthonormalize(3, {Vector{1, 1, 0}, Vector{2, 2, 0}, Vector{0, 0, 1}});
    CHECK(s.rank() == 2);
    CHECK(s.orthonormality_residual() < 1e-12);
    CHECK(member(s, Vector{3, 3, -1}));
    CHECK_FALSE(member(s, Vector{1, 0, 0}));
}

TEST_CASE("zero vectors span the zero subspace") {
    const Subspace s = orthonormalize(2, {Vector::zero(2)});
    CHECK(s.rank() == 0);
    CHECK(member(s, Vector::zero(2)));
}

TEST_CASE("measurement normalizes the projection and sends orthogonal states to 0") {
    const Subspace q = orthonormalize(2, {Vector{1, 0}});
    const Vector out = apply_measurement(q, Vector{0.6, 0.8});
    CHECK(approx_equal(out, Vector{1, 0}));
    CHECK(approx_equal(apply_measurement(q, Vector{0, 1}), Vector::zero(2)));
    // dividing by sqrt(<w, Pw>) leaves |Pw| = 1 / probability = 1 here
    CHECK(approx_equal(apply_measurement(q, Vector{3, 4}), Vector{1, 0}));
}

TEST_CASE("standard gates are unitary and act as expected") {
    CHECK(is_unitary(gates::hadamard()));
    CHECK(is_unitary(gates::pauli_y()));
    CHECK(is_unitary(gates::cnot()));
    CHECK(approx_equal(gates::cnot().apply(Vector::ket("10")), Vector::ket("11")));
    CHECK(approx_equal(gates::pauli_z().apply(Vector::ket("1")), Complex(-1, 0) * Vector::ket("1")));
    CHECK_FALSE(is_unitary(Operator::from_rows({{1, 1}, {0, 1}})));
}

TEST_CASE("tensor products follow the kron layout") {
    const Vector v = tensor(Vector::ket("1"), Vector{0.6, 0.8});
    CHECK(approx_equal(v, Vector{0, 0, 0.6, 0.8}));
    const Operator x1 = tensor_op(Operator::identity(2), gates::pauli_x());
    CHECK(approx_equal(x1.apply(Vector::ket("00")), Vector::ket("01")));
}

TEST_CASE("mixing dimensions is refused") {
    const Vector a{1, 0}, b{1, 0, 0};
    CHECK_THROWS_AS((void)(a + b), DimensionMismatch);
    CHECK_THROWS_AS(intersect(Subspace::full(2), Subspace::full(3)), DimensionMismatch);
}

TEST_CASE("property: complement is an involution and splits the space") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const std::size_t dim = hdqltest::uniform(rng, 1, 6);
        const Subspace x = hdqltest::random_subspace(dim, rng);
        const Subspace xp = orthocomplement(x);
        CHECK(x.rank() + xp.rank() == dim);
        CHECK((projector(orthocomplement(xp)) - projector(x)).norm() < 1e-9);
        CHECK(contains(x, intersect(x, hdqltest::random_subspace(dim, rng))));
    }
}

TEST_CASE("property: image under a unitary preserves rank and membership") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const std::size_t dim = hdqltest::uniform(rng, 2, 5);
        const Operator u = hdqltest::random_unitary(dim, rng);
        CHECK(unitarity_residual(u) < 1e-10);
        const Subspace s = hdqltest::random_subspace(dim, rng);
        const Subspace img = image(u, s);
        CHECK(img.rank() == s.rank());
        CHECK(member(img, u.apply(hdqltest::random_member(s, rng))));
    }
}
