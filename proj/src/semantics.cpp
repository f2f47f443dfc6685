#include "hdql/semantics.hpp"

#include <algorithm>

namespace hdql::semantics {

using SK = Sentence::Kind;

namespace {

bool contains_state(const std::vector<Vector>& states, const Vector& w, Tolerance tol) {
    return std::any_of(states.begin(), states.end(), [&](const Vector& s) { return hilbert::approx_equal(s, w, tol); });
}

}  // namespace

Region Region::finite(std::vector<Vector> states) {
    Region r;
    r.kind_ = Kind::Finite;
    r.states_ = std::move(states);
    return r;
}

Region Region::span(Subspace s) {
    Region r;
    r.kind_ = Kind::Span;
    r.subspace_ = std::move(s);
    return r;
}

bool Region::contains(const Vector& w, Tolerance tol) const {
    if (kind_ == Kind::Span) return hilbert::member(subspace_, w, tol);
    return contains_state(states_, w, tol);
}

QuantumModel::QuantumModel(Signature sig, std::map<std::string, Region> valuation)
    : sig_(std::move(sig)), valuation_(std::move(valuation)) {
    for (const auto& [p, region] : valuation_) {
        if (!sig_.props().count(p)) throw ResolutionError("valuation for an undeclared proposition: " + p);
        if (region.kind() == Region::Kind::Span) {
            if (region.subspace().dim() != sig_.dim()) throw DimensionMismatch(sig_.dim(), region.subspace().dim());
        } else {
            if (sig_.is_closed(p)) throw Error("closed proposition " + p + " needs a subspace region");
            for (const auto& v : region.states()) {
                if (v.dim() != sig_.dim()) throw DimensionMismatch(sig_.dim(), v.dim());
            }
        }
    }
    for (const auto& p : sig_.props()) {
        if (valuation_.count(p)) continue;
        valuation_.emplace(p, sig_.is_closed(p) ? Region::span(Subspace::zero(sig_.dim())) : Region::finite({}));
    }
}

const Region& QuantumModel::region(const std::string& p) const {
    auto it = valuation_.find(p);
    if (it == valuation_.end()) throw ResolutionError("unknown proposition: " + p);
    return it->second;
}

// ---------------------------------------------------------------- actions

Successors successors(const Signature& sig, const Action& a, const Vector& w, StarBudget budget) {
    using AK = Action::Kind;
    switch (a.kind()) {
        case AK::Symbol: return {{sig.apply(a.name(), w)}, false};
        case AK::Union: {
            Successors l = successors(sig, a.lhs(), w, budget);
            Successors r = successors(sig, a.rhs(), w, budget);
            l.states.insert(l.states.end(), r.states.begin(), r.states.end());
            l.truncated = l.truncated || r.truncated;
            return l;
        }
        case AK::Comp: {
            Successors out;
            const Successors mid = successors(sig, a.lhs(), w, budget);
            out.truncated = mid.truncated;
            for (const auto& m : mid.states) {
                Successors next = successors(sig, a.rhs(), m, budget);
                out.states.insert(out.states.end(), next.states.begin(), next.states.end());
                out.truncated = out.truncated || next.truncated;
            }
            return out;
        }
        case AK::Star: {
            Successors out;
            out.states.push_back(w);
            std::vector<Vector> frontier{w};
            for (std::size_t step = 0; step < budget.max_iterations; ++step) {
                std::vector<Vector> fresh;
                for (const auto& x : frontier) {
                    const Successors next = successors(sig, a.body(), x, budget);
                    out.truncated = out.truncated || next.truncated;
                    for (const auto& y : next.states) {
                        if (!contains_state(out.states, y, sig.tolerance()) &&
                            !contains_state(fresh, y, sig.tolerance())) {
                            fresh.push_back(y);
                        }
                    }
                }
                if (fresh.empty()) return out;
                out.states.insert(out.states.end(), fresh.begin(), fresh.end());
                frontier = std::move(fresh);
            }
            out.truncated = true;
            return out;
        }
    }
    throw Error("unreachable action kind");
}

// ---------------------------------------------------------------- pointwise

namespace {

void require_closed(const Signature& sig, const Sentence& s) {
    if (!syntax::is_closed(s, sig.vocabulary())) {
        throw NotRepresentable("quantum negation needs a closed sentence: " + syntax::to_string(s));
    }
}

}  // namespace

bool sat_at(const QuantumModel& model, const Vector& w, const Sentence& s, StarBudget budget) {
    const Signature& sig = model.sig();
    if (w.dim() != sig.dim()) throw DimensionMismatch(sig.dim(), w.dim());
    switch (s.kind()) {
        case SK::Prop: return model.region(s.name()).contains(w, sig.tolerance());
        case SK::At: return sat_at(model, eval_term(sig, s.term()), s.body(), budget);
        case SK::Here: return hilbert::approx_equal(w, eval_term(sig, s.term()), sig.tolerance());
        case SK::And: return sat_at(model, w, s.lhs(), budget) && sat_at(model, w, s.rhs(), budget);
        case SK::Not: return !sat_at(model, w, s.body(), budget);
        case SK::Imp: return !sat_at(model, w, s.lhs(), budget) || sat_at(model, w, s.rhs(), budget);
        case SK::Nec: {
            const Successors next = successors(sig, s.action(), w, budget);
            if (next.truncated) {
                throw BudgetExhausted("star orbit did not close within " + std::to_string(budget.max_iterations) +
                                      " steps");
            }
            return std::all_of(next.states.begin(), next.states.end(),
                               [&](const Vector& v) { return sat_at(model, v, s.body(), budget); });
        }
        case SK::Store:
            return sat_at(model, w, syntax::substitute(s.body(), s.name(), Term::literal(w)), budget);
        case SK::QNot:
            require_closed(sig, s.body());
            return hilbert::member(hilbert::orthocomplement(closed_extension(model, s.body()), sig.tolerance()), w,
                                   sig.tolerance());
        case SK::QImp:
            require_closed(sig, s);
            return hilbert::member(closed_extension(model, s), w, sig.tolerance());
        case SK::QOr:
        case SK::Diamond:
        case SK::Until: return sat_at(model, w, syntax::desugar(s), budget);
    }
    throw Error("unreachable sentence kind");
}

// ---------------------------------------------------------------- subspaces

Subspace preimage(const Signature& sig, const Action& b, const Subspace& s) {
    using AK = Action::Kind;
    const Tolerance tol = sig.tolerance();
    switch (b.kind()) {
        case AK::Symbol: {
            auto it = sig.unitaries().find(b.name());
            if (it == sig.unitaries().end()) {
                throw NotRepresentable("preimage needs a unitary action, got " + b.name());
            }
            return hilbert::image(it->second.adjoint(), s, tol);
        }
        case AK::Comp: return preimage(sig, b.lhs(), preimage(sig, b.rhs(), s));
        case AK::Union: return hilbert::intersect(preimage(sig, b.lhs(), s), preimage(sig, b.rhs(), s), tol);
        case AK::Star: return star_fixpoint(sig, b.body(), s).result;
    }
    throw Error("unreachable action kind");
}

Fixpoint star_fixpoint(const Signature& sig, const Action& b, const Subspace& s) {
    Fixpoint fp{s, 0};
    for (;;) {
        Subspace next = hilbert::intersect(fp.result, preimage(sig, b, fp.result), sig.tolerance());
        ++fp.iterations;
        const bool stable = next.rank() == fp.result.rank();
        fp.result = std::move(next);
        if (stable) return fp;
    }
}

Subspace closed_extension(const QuantumModel& model, const Sentence& rho) {
    const Signature& sig = model.sig();
    const Tolerance tol = sig.tolerance();
    switch (rho.kind()) {
        case SK::Prop: {
            if (!sig.is_closed(rho.name())) {
                throw NotRepresentable("proposition " + rho.name() + " is not closed");
            }
            return model.region(rho.name()).subspace();
        }
        case SK::QNot: return hilbert::orthocomplement(closed_extension(model, rho.body()), tol);
        case SK::And:
            return hilbert::intersect(closed_extension(model, rho.lhs()), closed_extension(model, rho.rhs()), tol);
        case SK::QImp: {
            const Sentence& a = rho.lhs();
            const Sentence& b = rho.rhs();
            return closed_extension(
                model, Sentence::qneg(Sentence::conj(a, Sentence::qneg(Sentence::conj(a, b)))));
        }
        case SK::QOr: return closed_extension(model, syntax::desugar(rho));
        case SK::Nec: return preimage(sig, rho.action(), closed_extension(model, rho.body()));
        default: throw NotRepresentable("not a closed sentence: " + syntax::to_string(rho));
    }
}

// ---------------------------------------------------------------- global

bool state_independent(const Sentence& s) {
    switch (s.kind()) {
        case SK::At: return true;
        case SK::And:
        case SK::Imp: return state_independent(s.lhs()) && state_independent(s.rhs());
        case SK::Not:
        case SK::Nec:
        case SK::Diamond: return state_independent(s.body());
        case SK::Store: return state_independent(s.body()) && syntax::free_idents(s.body()).count(s.name()) == 0;
        default: return false;
    }
}

bool global_sat(const QuantumModel& model, const Sentence& s, StarBudget budget) {
    const Signature& sig = model.sig();
    if (syntax::is_closed(s, sig.vocabulary())) {
        return closed_extension(model, s).rank() == sig.dim();
    }
    if (state_independent(s)) return sat_at(model, Vector::zero(sig.dim()), s, budget);
    switch (s.kind()) {
        case SK::Prop: {
            const Region& r = model.region(s.name());
            return r.kind() == Region::Kind::Span && r.subspace().rank() == sig.dim();
        }
        case SK::And: return global_sat(model, s.lhs(), budget) && global_sat(model, s.rhs(), budget);
        default:
            throw NotRepresentable("global satisfaction is not decidable for " + syntax::to_string(s));
    }
}

QuantumModel reduct(const QuantumModel& target, const Morphism& chi) {
    Signature sig = hdql::reduct(target.sig(), chi);
    std::map<std::string, Region> valuation;
    for (const auto& p : sig.props()) valuation.emplace(p, target.region(chi(p)));
    return QuantumModel(std::move(sig), std::move(valuation));
}

}  // namespace hdql::semantics
