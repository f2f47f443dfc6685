#include "hdql/hilbert.hpp"

#include <algorithm>
#include <cmath>

namespace hdql::hilbert {

namespace {

void require_same_dim(std::size_t expected, std::size_t actual) {
    if (expected != actual) throw DimensionMismatch(expected, actual);
}

// Removes the components of `v` along `basis` (two passes).
Eigen::VectorXcd residual_against(const std::vector<Vector>& basis, Eigen::VectorXcd v) {
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
            v -= b.coords().dot(v) * b.coords();
        }
    }
    return v;
}

}  // namespace

Tolerance::Tolerance(double eps) : eps_(eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error("tolerance must lie in (0, 1)");
}

double Tolerance::scaled(double norm) const noexcept { return eps_ * std::max(1.0, norm); }

// ---------------------------------------------------------------- Vector

Vector::Vector(std::size_t dim) : coords_(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim))) {
    if (dim == 0) throw Error("vector dimension must be positive");
}

Vector::Vector(Eigen::VectorXcd coords) : coords_(std::move(coords)) {
    if (coords_.size() == 0) throw Error("vector dimension must be positive");
}

Vector::Vector(std::initializer_list<Complex> coords) : coords_(static_cast<Eigen::Index>(coords.size())) {
    if (coords.size() == 0) throw Error("vector dimension must be positive");
    Eigen::Index i = 0;
    for (const auto& c : coords) coords_(i++) = c;
}

Vector Vector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw Error("basis index out of range");
    Vector v(dim);
    v.coords_(static_cast<Eigen::Index>(index)) = 1.0;
    return v;
}

Vector Vector::ket(const std::string& bits) {
    if (bits.empty() || bits.size() > 24) throw Error("ket needs 1..24 bits");
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') throw Error("ket bits must be 0 or 1: " + bits);
        index = (index << 1U) | static_cast<std::size_t>(c - '0');
    }
    return basis(std::size_t{1} << bits.size(), index);
}

Vector Vector::normalized() const {
    const double n = norm();
    if (n == 0.0) throw Error("cannot normalise the zero vector");
    return Vector(Eigen::VectorXcd(coords_ / n));
}

Vector operator+(const Vector& a, const Vector& b) {
    require_same_dim(a.dim(), b.dim());
    return Vector(Eigen::VectorXcd(a.coords_ + b.coords_));
}

Vector operator-(const Vector& a, const Vector& b) {
    require_same_dim(a.dim(), b.dim());
    return Vector(Eigen::VectorXcd(a.coords_ - b.coords_));
}

Vector operator*(Complex s, const Vector& v) { return Vector(Eigen::VectorXcd(s * v.coords_)); }

bool operator==(const Vector& a, const Vector& b) {
    return a.dim() == b.dim() && a.coords_ == b.coords_;
}

// ---------------------------------------------------------------- Operator

Operator::Operator(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
    if (entries_.rows() == 0 || entries_.rows() != entries_.cols()) {
        throw Error("operator must be a non-empty square matrix");
    }
}

Operator Operator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return Operator(Eigen::MatrixXcd::Identity(n, n));
}

Operator Operator::from_rows(const std::vector<std::vector<Complex>>& rows) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i)];
        if (static_cast<Eigen::Index>(row.size()) != n) throw Error("operator rows must form a square matrix");
        for (Eigen::Index j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
    }
    return Operator(std::move(m));
}

Vector Operator::apply(const Vector& v) const {
    require_same_dim(dim(), v.dim());
    return Vector(Eigen::VectorXcd(entries_ * v.coords()));
}

Operator Operator::adjoint() const { return Operator(Eigen::MatrixXcd(entries_.adjoint())); }

Operator operator*(const Operator& a, const Operator& b) {
    require_same_dim(a.dim(), b.dim());
    return Operator(Eigen::MatrixXcd(a.entries_ * b.entries_));
}

// ---------------------------------------------------------------- Subspace

Subspace::Subspace(std::size_t dim, std::vector<Vector> orthonormal_basis)
    : dim_(dim), basis_(std::move(orthonormal_basis)) {
    if (dim_ == 0) throw Error("subspace dimension must be positive");
    if (basis_.size() > dim_) throw Error("subspace basis longer than the space dimension");
    for (const auto& b : basis_) require_same_dim(dim_, b.dim());
}

Subspace Subspace::full(std::size_t dim) {
    std::vector<Vector> basis;
    basis.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) basis.push_back(Vector::basis(dim, i));
    return Subspace(dim, std::move(basis));
}

double Subspace::orthonormality_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = i; j < basis_.size(); ++j) {
            const Complex g = inner_product(basis_[i], basis_[j]);
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - target));
        }
    }
    return worst;
}

// ---------------------------------------------------------------- operations

Complex inner_product(const Vector& v, const Vector& w) {
    require_same_dim(v.dim(), w.dim());
    // Eigen's dot() conjugates its left operand.
    return v.coords().dot(w.coords());
}

bool approx_equal(const Vector& a, const Vector& b, Tolerance tol) {
    require_same_dim(a.dim(), b.dim());
    return (a - b).norm() <= tol.scaled(std::max(a.norm(), b.norm()));
}

Subspace orthonormalize(std::size_t dim, const std::vector<Vector>& vs, Tolerance tol) {
    std::vector<Vector> basis;
    for (const auto& v : vs) {
        require_same_dim(dim, v.dim());
        if (basis.size() == dim) break;
        Eigen::VectorXcd r = residual_against(basis, v.coords());
        const double n = r.norm();
        if (n <= tol.scaled(v.norm())) continue;
        basis.emplace_back(Eigen::VectorXcd(r / n));
    }
    return Subspace(dim, std::move(basis));
}

Subspace orthocomplement(const Subspace& s, Tolerance tol) {
    const std::size_t n = s.dim();
    const std::size_t wanted = n - s.rank();
    std::vector<Vector> known = s.basis();
    std::vector<Vector> result;
    // Pivoted selection over the standard basis keeps the chosen residuals
    // well away from zero.
    while (result.size() < wanted) {
        double best_norm = 0.0;
        Eigen::VectorXcd best;
        for (std::size_t i = 0; i < n; ++i) {
            Eigen::VectorXcd r = residual_against(known, Vector::basis(n, i).coords());
            const double rn = r.norm();
            if (rn > best_norm) {
                best_norm = rn;
                best = std::move(r);
            }
        }
        if (best_norm <= tol.eps()) break;
        Vector b(Eigen::VectorXcd(best / best_norm));
        known.push_back(b);
        result.push_back(std::move(b));
    }
    return Subspace(n, std::move(result));
}

Vector project(const Subspace& s, const Vector& v) {
    require_same_dim(s.dim(), v.dim());
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(s.dim()));
    for (const auto& b : s.basis()) acc += b.coords().dot(v.coords()) * b.coords();
    return Vector(std::move(acc));
}

bool member(const Subspace& s, const Vector& v, Tolerance tol) {
    return (project(s, v) - v).norm() <= tol.scaled(v.norm());
}

Subspace direct_sum(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a.dim(), b.dim());
    std::vector<Vector> all = a.basis();
    all.insert(all.end(), b.basis().begin(), b.basis().end());
    return orthonormalize(a.dim(), all, tol);
}

Subspace intersect(const Subspace& a, const Subspace& b, Tolerance tol) {
    require_same_dim(a.dim(), b.dim());
    return orthocomplement(direct_sum(orthocomplement(a, tol), orthocomplement(b, tol), tol), tol);
}

bool contains(const Subspace& b, const Subspace& a, Tolerance tol) {
    require_same_dim(a.dim(), b.dim());
    return std::all_of(a.basis().begin(), a.basis().end(),
                       [&](const Vector& v) { return member(b, v, tol); });
}

Eigen::MatrixXcd projector(const Subspace& s) {
    const auto n = static_cast<Eigen::Index>(s.dim());
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(n, n);
    for (const auto& b : s.basis()) p += b.coords() * b.coords().adjoint();
    return p;
}

Subspace image(const Operator& u, const Subspace& s, Tolerance tol) {
    std::vector<Vector> mapped;
    mapped.reserve(s.rank());
    for (const auto& b : s.basis()) mapped.push_back(u.apply(b));
    return orthonormalize(s.dim(), mapped, tol);
}

Vector apply_measurement(const Subspace& s, const Vector& w, Tolerance tol) {
    Vector p = project(s, w);
    if (p.norm() <= tol.eps()) return Vector::zero(w.dim());
    const double denom = std::sqrt(inner_product(w, p).real());
    return Complex(1.0 / denom) * p;
}

double unitarity_residual(const Operator& u) {
    const auto& m = u.entries();
    const auto id = Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    const double left = (m.adjoint() * m - id).cwiseAbs().maxCoeff();
    const double right = (m * m.adjoint() - id).cwiseAbs().maxCoeff();
    return std::max(left, right);
}

bool is_unitary(const Operator& u, Tolerance tol) { return unitarity_residual(u) <= tol.eps(); }

Vector tensor(const Vector& v, const Vector& w) {
    const auto dv = static_cast<Eigen::Index>(v.dim());
    const auto dw = static_cast<Eigen::Index>(w.dim());
    Eigen::VectorXcd out(dv * dw);
    for (Eigen::Index i = 0; i < dv; ++i) out.segment(i * dw, dw) = v.coords()(i) * w.coords();
    return Vector(std::move(out));
}

Operator tensor_op(const Operator& a, const Operator& b) {
    const auto da = static_cast<Eigen::Index>(a.dim());
    const auto db = static_cast<Eigen::Index>(b.dim());
    Eigen::MatrixXcd out(da * db, da * db);
    for (Eigen::Index i = 0; i < da; ++i) {
        for (Eigen::Index j = 0; j < da; ++j) out.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
    }
    return Operator(std::move(out));
}

namespace gates {

Operator hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return Operator::from_rows({{h, h}, {h, -h}});
}

Operator pauli_x() { return Operator::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

Operator pauli_y() {
    const Complex i(0.0, 1.0);
    return Operator::from_rows({{0.0, -i}, {i, 0.0}});
}

Operator pauli_z() { return Operator::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

Operator cnot() {
    return Operator::from_rows({{1.0, 0.0, 0.0, 0.0},
                                {0.0, 1.0, 0.0, 0.0},
                                {0.0, 0.0, 0.0, 1.0},
                                {0.0, 0.0, 1.0, 0.0}});
}

}  // namespace gates

}  // namespace hdql::hilbert
