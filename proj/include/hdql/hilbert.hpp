#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hdql/error.hpp"

// Finite-dimensional complex inner-product spaces: state vectors, square
// operators (gates), and subspaces carried by orthonormal bases.
namespace hdql::hilbert {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-9;

/// Single global comparison threshold. Equality checks scale it by operand
/// norms as `eps * max(1, |v|)`.
class Tolerance {
public:
    constexpr Tolerance() = default;
    explicit Tolerance(double eps);

    [[nodiscard]] constexpr double eps() const noexcept { return eps_; }
    [[nodiscard]] double scaled(double norm) const noexcept;

private:
    double eps_ = kDefaultTolerance;
};

class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t dim);
    explicit Vector(Eigen::VectorXcd coords);
    Vector(std::initializer_list<Complex> coords);

    static Vector zero(std::size_t dim) { return Vector(dim); }
    /// Computational basis vector |index> of a `dim`-dimensional space.
    static Vector basis(std::size_t dim, std::size_t index);
    /// Ket from a bit string, e.g. "01" -> |01> in C^4 (big-endian).
    static Vector ket(const std::string& bits);

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(coords_.size()); }
    [[nodiscard]] const Eigen::VectorXcd& coords() const noexcept { return coords_; }
    [[nodiscard]] Complex operator[](std::size_t i) const { return coords_(static_cast<Eigen::Index>(i)); }

    [[nodiscard]] double norm() const { return coords_.norm(); }
    [[nodiscard]] Vector normalized() const;

    friend Vector operator+(const Vector& a, const Vector& b);
    friend Vector operator-(const Vector& a, const Vector& b);
    friend Vector operator*(Complex s, const Vector& v);

    /// Exact coordinate equality; use `approx_equal` for numeric comparisons.
    friend bool operator==(const Vector& a, const Vector& b);

private:
    Eigen::VectorXcd coords_;
};

class Operator {
public:
    Operator() = default;
    explicit Operator(Eigen::MatrixXcd entries);

    static Operator identity(std::size_t dim);
    /// Row-major construction; throws unless `rows` is square.
    static Operator from_rows(const std::vector<std::vector<Complex>>& rows);

    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(entries_.rows()); }
    [[nodiscard]] const Eigen::MatrixXcd& entries() const noexcept { return entries_; }

    [[nodiscard]] Vector apply(const Vector& v) const;
    [[nodiscard]] Operator adjoint() const;

    friend Operator operator*(const Operator& a, const Operator& b);

private:
    Eigen::MatrixXcd entries_;
};

/// A subspace of C^dim given by an orthonormal basis (columns of `basis()`).
class Subspace {
public:
    Subspace() = default;
    /// Takes the vectors as-is. Callers with arbitrary spanning sets should
    /// go through `orthonormalize`.
    Subspace(std::size_t dim, std::vector<Vector> orthonormal_basis);

    static Subspace zero(std::size_t dim) { return Subspace(dim, {}); }
    static Subspace full(std::size_t dim);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] std::size_t rank() const noexcept { return basis_.size(); }
    [[nodiscard]] const std::vector<Vector>& basis() const noexcept { return basis_; }

    /// Largest deviation of the basis Gram matrix from the identity.
    [[nodiscard]] double orthonormality_residual() const;

private:
    std::size_t dim_ = 0;
    std::vector<Vector> basis_;
};

// Inner product, conjugate-linear in the first argument.
Complex inner_product(const Vector& v, const Vector& w);

bool approx_equal(const Vector& a, const Vector& b, Tolerance tol = {});

/// Gram-Schmidt (with one re-orthogonalisation pass). Vectors whose residual
/// norm is <= eps are dropped, so duplicates and zero vectors collapse.
Subspace orthonormalize(std::size_t dim, const std::vector<Vector>& vs, Tolerance tol = {});

Subspace orthocomplement(const Subspace& s, Tolerance tol = {});
Vector project(const Subspace& s, const Vector& v);
bool member(const Subspace& s, const Vector& v, Tolerance tol = {});

Subspace direct_sum(const Subspace& a, const Subspace& b, Tolerance tol = {});
Subspace intersect(const Subspace& a, const Subspace& b, Tolerance tol = {});
/// a is contained in b, tested on a's basis vectors.
bool contains(const Subspace& b, const Subspace& a, Tolerance tol = {});
/// Orthogonal projector P = B B^dagger onto the subspace.
Eigen::MatrixXcd projector(const Subspace& s);
/// Image {U x : x in s}; for a unitary this is again orthonormal.
Subspace image(const Operator& u, const Subspace& s, Tolerance tol = {});

/// Projective measurement  w |-> P(w) / sqrt(<w, P(w)>).
/// Inputs orthogonal to `s` (|P(w)| <= eps) map to the origin.
Vector apply_measurement(const Subspace& s, const Vector& w, Tolerance tol = {});

/// max-norm residual of U^dagger U - I and U U^dagger - I.
double unitarity_residual(const Operator& u);
bool is_unitary(const Operator& u, Tolerance tol = {});

Vector tensor(const Vector& v, const Vector& w);
Operator tensor_op(const Operator& a, const Operator& b);

namespace gates {
Operator hadamard();
Operator pauli_x();
Operator pauli_y();
Operator pauli_z();
Operator cnot();
}  // namespace gates

}  // namespace hdql::hilbert
