#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "hdql/hilbert.hpp"
#include "hdql/syntax.hpp"

namespace hdql {

using hilbert::Complex;
using hilbert::Operator;
using hilbert::Subspace;
using hilbert::Tolerance;
using hilbert::Vector;

struct Measurement {
    std::vector<Vector> declared;  // as written in the input
    Subspace subspace;             // orthonormalised span of `declared`
};

struct Violation {
    std::string symbol;
    std::string check;
    double residual = 0.0;
};

/// A concrete signature over a fixed Hilbert space: unitary and measurement
/// symbols with their interpretation, named vectors and scalars, and the
/// propositional symbols (some of them closed).
///
/// All symbol names share one namespace.
class Signature {
public:
    explicit Signature(std::size_t dim, Tolerance tol = {});

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] Tolerance tolerance() const noexcept { return tol_; }

    void add_unitary(const std::string& name, Operator u);
    void add_measurement(const std::string& name, std::vector<Vector> basis);
    void add_vector(const std::string& name, Vector v);
    void add_scalar(const std::string& name, Complex c);
    void add_prop(const std::string& name, bool closed = false);

    [[nodiscard]] const std::map<std::string, Operator>& unitaries() const noexcept { return unitaries_; }
    [[nodiscard]] const std::map<std::string, Measurement>& measurements() const noexcept { return measurements_; }
    [[nodiscard]] const std::map<std::string, Vector>& vectors() const noexcept { return vectors_; }
    [[nodiscard]] const std::map<std::string, Complex>& scalars() const noexcept { return scalars_; }
    [[nodiscard]] const std::set<std::string>& props() const noexcept { return props_; }
    [[nodiscard]] const std::set<std::string>& closed_props() const noexcept { return closed_; }

    [[nodiscard]] bool has_symbol(const std::string& name) const;
    [[nodiscard]] bool is_unitary(const std::string& f) const { return unitaries_.count(f) != 0; }
    [[nodiscard]] bool is_measurement(const std::string& f) const { return measurements_.count(f) != 0; }
    [[nodiscard]] bool is_closed(const std::string& p) const { return closed_.count(p) != 0; }

    [[nodiscard]] syntax::Vocabulary vocabulary() const;

    /// Applies the interpretation of f in U or Q.
    [[nodiscard]] Vector apply(const std::string& f, const Vector& w) const;
    [[nodiscard]] Complex scalar_value(const syntax::ScalarTerm& s) const;

    /// Every check failure of the frame data; empty means the signature is usable.
    [[nodiscard]] std::vector<Violation> validate() const;

private:
    void claim(const std::string& name);

    std::size_t dim_;
    Tolerance tol_;
    std::map<std::string, Operator> unitaries_;
    std::map<std::string, Measurement> measurements_;
    std::map<std::string, Vector> vectors_;
    std::map<std::string, Complex> scalars_;
    std::set<std::string> props_;
    std::set<std::string> closed_;
};

/// Structural evaluation of a ground term.
Vector eval_term(const Signature& sig, const syntax::Term& k);

/// |eval(k1) - eval(k2)|, the quantity the diagram oracle thresholds.
double diagram_residual(const Signature& sig, const syntax::Term& k1, const syntax::Term& k2);

/// k1 = k2 holds in the positive diagram of the frame, up to tolerance.
bool diagram_eq(const Signature& sig, const syntax::Term& k1, const syntax::Term& k2);

std::string describe(const Violation& v);

/// Injective renaming of signature symbols. The frame (space, matrices,
/// vectors) is carried along unchanged.
class Morphism {
public:
    Morphism() = default;
    explicit Morphism(std::map<std::string, std::string> mapping);

    static Morphism identity(const Signature& sig);

    [[nodiscard]] const std::map<std::string, std::string>& mapping() const noexcept { return map_; }
    [[nodiscard]] bool maps(const std::string& symbol) const { return map_.count(symbol) != 0; }
    /// Throws ResolutionError for symbols outside the domain.
    [[nodiscard]] const std::string& operator()(const std::string& symbol) const;
    [[nodiscard]] Morphism inverse() const;

private:
    std::map<std::string, std::string> map_;
};

/// Identifiers in `bound` are variables and stay as they are.
syntax::Term apply_morphism(const Morphism& chi, const syntax::Term& t, const std::set<std::string>& bound = {});
syntax::Action apply_morphism(const Morphism& chi, const syntax::Action& a);
syntax::Sentence apply_morphism(const Morphism& chi, const syntax::Sentence& s,
                                const std::set<std::string>& bound = {});

/// The target signature chi(sig): every symbol of sig renamed.
Signature translate(const Signature& sig, const Morphism& chi);

/// The source signature of chi read off the target: each source symbol gets
/// the interpretation of its image.
Signature reduct(const Signature& target, const Morphism& chi);

}  // namespace hdql
