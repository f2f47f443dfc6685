#include "hdql/signature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hdql {

using syntax::Action;
using syntax::Sentence;
using syntax::Term;

Signature::Signature(std::size_t dim, Tolerance tol) : dim_(dim), tol_(tol) {
    if (dim == 0) throw Error("space dimension must be positive");
}

bool Signature::has_symbol(const std::string& name) const {
    return unitaries_.count(name) || measurements_.count(name) || vectors_.count(name) || scalars_.count(name) ||
           props_.count(name);
}

void Signature::claim(const std::string& name) {
    if (name.empty()) throw Error("empty symbol name");
    if (has_symbol(name)) throw Error("symbol declared twice: " + name);
}

void Signature::add_unitary(const std::string& name, Operator u) {
    claim(name);
    if (u.dim() != dim_) throw DimensionMismatch(dim_, u.dim());
    unitaries_.emplace(name, std::move(u));
}

void Signature::add_measurement(const std::string& name, std::vector<Vector> basis) {
    claim(name);
    for (const auto& b : basis) {
        if (b.dim() != dim_) throw DimensionMismatch(dim_, b.dim());
    }
    Subspace s = hilbert::orthonormalize(dim_, basis, tol_);
    measurements_.emplace(name, Measurement{std::move(basis), std::move(s)});
}

void Signature::add_vector(const std::string& name, Vector v) {
    claim(name);
    if (v.dim() != dim_) throw DimensionMismatch(dim_, v.dim());
    vectors_.emplace(name, std::move(v));
}

void Signature::add_scalar(const std::string& name, Complex c) {
    claim(name);
    scalars_.emplace(name, c);
}

void Signature::add_prop(const std::string& name, bool closed) {
    claim(name);
    props_.insert(name);
    if (closed) closed_.insert(name);
}

syntax::Vocabulary Signature::vocabulary() const {
    syntax::Vocabulary v;
    v.closed_props = closed_;
    for (const auto& [name, m] : measurements_) v.measurements.insert(name);
    return v;
}

Vector Signature::apply(const std::string& f, const Vector& w) const {
    if (auto it = unitaries_.find(f); it != unitaries_.end()) return it->second.apply(w);
    if (auto it = measurements_.find(f); it != measurements_.end()) {
        return hilbert::apply_measurement(it->second.subspace, w, tol_);
    }
    throw ResolutionError("unknown action symbol: " + f);
}

Complex Signature::scalar_value(const syntax::ScalarTerm& s) const {
    if (!s.is_named()) return s.value;
    auto it = scalars_.find(s.name);
    if (it == scalars_.end()) throw ResolutionError("unknown scalar: " + s.name);
    return it->second;
}

std::vector<Violation> Signature::validate() const {
    std::vector<Violation> out;
    for (const auto& [name, u] : unitaries_) {
        const double r = hilbert::unitarity_residual(u);
        if (!(r <= tol_.eps())) out.push_back({name, "unitarity", r});
    }
    for (const auto& [name, m] : measurements_) {
        if (m.subspace.rank() < m.declared.size()) {
            out.push_back({name, "measurement basis is not orthonormal (linearly dependent input)",
                           static_cast<double>(m.declared.size() - m.subspace.rank())});
            continue;
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < m.declared.size(); ++i) {
            for (std::size_t j = i; j < m.declared.size(); ++j) {
                const Complex g = hilbert::inner_product(m.declared[i], m.declared[j]);
                worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
        }
        if (worst > tol_.eps()) out.push_back({name, "measurement basis is not orthonormal", worst});
    }
    const auto finite = [](const Vector& v) { return v.coords().allFinite(); };
    for (const auto& [name, v] : vectors_) {
        if (!finite(v)) out.push_back({name, "non-finite coordinates", 0.0});
    }
    for (const auto& [name, c] : scalars_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) out.push_back({name, "non-finite scalar", 0.0});
    }
    return out;
}

std::string describe(const Violation& v) {
    std::ostringstream os;
    os.precision(6);
    os << v.symbol << ": " << v.check << " (residual " << v.residual << ")";
    return os.str();
}

Vector eval_term(const Signature& sig, const Term& k) {
    switch (k.kind()) {
        case Term::Kind::Ident: {
            auto it = sig.vectors().find(k.name());
            if (it == sig.vectors().end()) throw ResolutionError("unbound vector name or free variable: " + k.name());
            return it->second;
        }
        case Term::Kind::Literal:
            if (k.literal_value().dim() != sig.dim()) throw DimensionMismatch(sig.dim(), k.literal_value().dim());
            return k.literal_value();
        case Term::Kind::Origin: return Vector::zero(sig.dim());
        case Term::Kind::Sum: return eval_term(sig, k.lhs()) + eval_term(sig, k.rhs());
        case Term::Kind::Scale: return sig.scalar_value(k.scalar()) * eval_term(sig, k.arg());
        case Term::Kind::Apply: return sig.apply(k.name(), eval_term(sig, k.arg()));
    }
    throw Error("unreachable term kind");
}

double diagram_residual(const Signature& sig, const Term& k1, const Term& k2) {
    return (eval_term(sig, k1) - eval_term(sig, k2)).norm();
}

bool diagram_eq(const Signature& sig, const Term& k1, const Term& k2) {
    const Vector a = eval_term(sig, k1);
    const Vector b = eval_term(sig, k2);
    return (a - b).norm() <= sig.tolerance().scaled(a.norm());
}

// ---------------------------------------------------------------- morphisms

Morphism::Morphism(std::map<std::string, std::string> mapping) : map_(std::move(mapping)) {
    std::map<std::string, std::string> seen;
    for (const auto& [from, to] : map_) {
        auto [it, fresh] = seen.emplace(to, from);
        if (!fresh) throw InvalidMorphism("morphism is not injective: " + it->second + " and " + from + " both map to " + to);
    }
}

Morphism Morphism::identity(const Signature& sig) {
    std::map<std::string, std::string> m;
    for (const auto& [n, u] : sig.unitaries()) m.emplace(n, n);
    for (const auto& [n, q] : sig.measurements()) m.emplace(n, n);
    for (const auto& [n, v] : sig.vectors()) m.emplace(n, n);
    for (const auto& [n, c] : sig.scalars()) m.emplace(n, n);
    for (const auto& p : sig.props()) m.emplace(p, p);
    return Morphism(std::move(m));
}

const std::string& Morphism::operator()(const std::string& symbol) const {
    auto it = map_.find(symbol);
    if (it == map_.end()) throw ResolutionError("symbol not in the morphism domain: " + symbol);
    return it->second;
}

Morphism Morphism::inverse() const {
    std::map<std::string, std::string> inv;
    for (const auto& [from, to] : map_) inv.emplace(to, from);
    return Morphism(std::move(inv));
}

namespace {

Term rename_term(const Morphism& chi, const Term& t, const std::set<std::string>& bound) {
    switch (t.kind()) {
        case Term::Kind::Ident: return bound.count(t.name()) ? t : Term::ident(chi(t.name()));
        case Term::Kind::Literal:
        case Term::Kind::Origin: return t;
        case Term::Kind::Sum: return Term::sum(rename_term(chi, t.lhs(), bound), rename_term(chi, t.rhs(), bound));
        case Term::Kind::Scale: {
            syntax::ScalarTerm s = t.scalar();
            if (s.is_named()) s.name = chi(s.name);
            return Term::scale(s, rename_term(chi, t.arg(), bound));
        }
        case Term::Kind::Apply: return Term::apply(chi(t.name()), rename_term(chi, t.arg(), bound));
    }
    return t;
}

Sentence rename_sentence(const Morphism& chi, const Sentence& s, std::set<std::string> bound) {
    using K = Sentence::Kind;
    const auto rec = [&](const Sentence& x) { return rename_sentence(chi, x, bound); };
    switch (s.kind()) {
        case K::Prop: return Sentence::prop(chi(s.name()));
        case K::At: return Sentence::at(rename_term(chi, s.term(), bound), rec(s.body()));
        case K::Here: return Sentence::here(rename_term(chi, s.term(), bound));
        case K::And: return Sentence::conj(rec(s.lhs()), rec(s.rhs()));
        case K::Not: return Sentence::neg(rec(s.body()));
        case K::QNot: return Sentence::qneg(rec(s.body()));
        case K::Nec: return Sentence::nec(apply_morphism(chi, s.action()), rec(s.body()));
        case K::Diamond: return Sentence::diamond(apply_morphism(chi, s.action()), rec(s.body()));
        case K::Imp: return Sentence::imp(rec(s.lhs()), rec(s.rhs()));
        case K::QImp: return Sentence::qimp(rec(s.lhs()), rec(s.rhs()));
        case K::QOr: return Sentence::qor(rec(s.lhs()), rec(s.rhs()));
        case K::Until: return Sentence::until(apply_morphism(chi, s.action()), rec(s.lhs()), rec(s.rhs()));
        case K::Store: {
            // A binder that collides with a renamed vector name would capture it.
            std::string var = s.name();
            Sentence body = s.body();
            std::set<std::string> images;
            for (const auto& [from, to] : chi.mapping()) images.insert(to);
            if (images.count(var) != 0) {
                std::set<std::string> avoid = images;
                for (const auto& n : syntax::free_idents(body)) avoid.insert(n);
                std::string fresh = var + "'";
                while (avoid.count(fresh) || chi.maps(fresh)) fresh += "'";
                body = syntax::substitute(body, var, Term::ident(fresh));
                var = fresh;
            }
            bound.insert(var);
            return Sentence::store(var, rename_sentence(chi, body, bound));
        }
    }
    return s;
}

}  // namespace

Term apply_morphism(const Morphism& chi, const Term& t, const std::set<std::string>& bound) {
    return rename_term(chi, t, bound);
}

Action apply_morphism(const Morphism& chi, const Action& a) {
    switch (a.kind()) {
        case Action::Kind::Symbol: return Action::symbol(chi(a.name()));
        case Action::Kind::Comp: return Action::comp(apply_morphism(chi, a.lhs()), apply_morphism(chi, a.rhs()));
        case Action::Kind::Union: return Action::choice(apply_morphism(chi, a.lhs()), apply_morphism(chi, a.rhs()));
        case Action::Kind::Star: return Action::star(apply_morphism(chi, a.body()));
    }
    return a;
}

Sentence apply_morphism(const Morphism& chi, const Sentence& s, const std::set<std::string>& bound) {
    return rename_sentence(chi, s, bound);
}

Signature translate(const Signature& sig, const Morphism& chi) {
    Signature out(sig.dim(), sig.tolerance());
    for (const auto& [n, u] : sig.unitaries()) out.add_unitary(chi(n), u);
    for (const auto& [n, q] : sig.measurements()) out.add_measurement(chi(n), q.declared);
    for (const auto& [n, v] : sig.vectors()) out.add_vector(chi(n), v);
    for (const auto& [n, c] : sig.scalars()) out.add_scalar(chi(n), c);
    for (const auto& p : sig.props()) out.add_prop(chi(p), sig.is_closed(p));
    return out;
}

Signature reduct(const Signature& target, const Morphism& chi) {
    Signature out(target.dim(), target.tolerance());
    for (const auto& [from, to] : chi.mapping()) {
        if (auto u = target.unitaries().find(to); u != target.unitaries().end()) {
            out.add_unitary(from, u->second);
        } else if (auto q = target.measurements().find(to); q != target.measurements().end()) {
            out.add_measurement(from, q->second.declared);
        } else if (auto v = target.vectors().find(to); v != target.vectors().end()) {
            out.add_vector(from, v->second);
        } else if (auto c = target.scalars().find(to); c != target.scalars().end()) {
            out.add_scalar(from, c->second);
        } else if (target.props().count(to)) {
            out.add_prop(from, target.is_closed(to));
        } else {
            throw ResolutionError("morphism target not in signature: " + to);
        }
    }
    return out;
}

}  // namespace hdql
