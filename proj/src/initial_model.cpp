#include "hdql/initial_model.hpp"

#include <algorithm>

namespace hdql::initial {

using SK = Sentence::Kind;

namespace {

void terms_of(const Term& t, std::vector<Term>& out) {
    out.push_back(t);
    switch (t.kind()) {
        case Term::Kind::Sum:
            terms_of(t.lhs(), out);
            terms_of(t.rhs(), out);
            break;
        case Term::Kind::Scale:
        case Term::Kind::Apply: terms_of(t.arg(), out); break;
        default: break;
    }
}

void terms_of(const Sentence& s, std::vector<Term>& out) {
    switch (s.kind()) {
        case SK::Prop: return;
        case SK::Here: terms_of(s.term(), out); return;
        case SK::At:
            terms_of(s.term(), out);
            terms_of(s.body(), out);
            return;
        case SK::Not:
        case SK::QNot:
        case SK::Nec:
        case SK::Store:
        case SK::Diamond: terms_of(s.body(), out); return;
        default:
            terms_of(s.lhs(), out);
            terms_of(s.rhs(), out);
            return;
    }
}

std::optional<Vector> value(const Signature& sig, const Term& t) {
    try {
        return eval_term(sig, t);
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Unknown: return "unknown";
    }
    return "?";
}

std::vector<Term> term_universe(const Signature& sig, const std::vector<Sentence>& gamma, std::size_t depth,
                                const std::vector<Term>& seeds) {
    std::vector<Term> candidates;
    for (const auto& s : gamma) terms_of(s, candidates);
    for (const auto& t : seeds) terms_of(t, candidates);
    candidates.push_back(Term::origin());

    std::vector<Term> universe;
    std::vector<Vector> values;
    const auto admit = [&](const Term& t) -> bool {
        auto v = value(sig, t);
        if (!v) return false;
        for (const auto& w : values) {
            if (hilbert::approx_equal(w, *v, sig.tolerance())) return false;
        }
        universe.push_back(t);
        values.push_back(*v);
        return true;
    };
    std::vector<Term> frontier;
    for (const auto& t : candidates) {
        if (admit(t)) frontier.push_back(t);
    }
    std::vector<std::string> symbols;
    for (const auto& [f, u] : sig.unitaries()) symbols.push_back(f);
    for (const auto& [q, m] : sig.measurements()) symbols.push_back(q);
    for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
        std::vector<Term> next;
        for (const auto& t : frontier) {
            for (const auto& f : symbols) {
                Term applied = Term::apply(f, t);
                if (admit(applied)) next.push_back(std::move(applied));
            }
        }
        frontier = std::move(next);
    }
    return universe;
}

InitialModel build_initial(const Signature& sig, const std::vector<Sentence>& gamma, std::size_t depth,
                           const calculus::ProverOptions& options, const std::vector<Term>& seeds) {
    std::vector<Term> universe = term_universe(sig, gamma, depth, seeds);
    std::map<std::pair<std::string, std::size_t>, Verdict> derived;
    std::map<std::string, semantics::Region> valuation;
    for (const auto& p : sig.props()) {
        std::vector<Vector> states;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            const auto result = calculus::prove(sig, gamma, universe[i], Sentence::prop(p), options);
            Verdict v = Verdict::Fails;
            if (result.outcome == calculus::Outcome::Proved) v = Verdict::Holds;
            if (result.outcome == calculus::Outcome::Unknown) v = Verdict::Unknown;
            derived[{p, i}] = v;
            if (v == Verdict::Holds) states.push_back(eval_term(sig, universe[i]));
        }
        if (sig.is_closed(p)) {
            valuation.emplace(p, semantics::Region::span(hilbert::orthonormalize(sig.dim(), states, sig.tolerance())));
        } else {
            valuation.emplace(p, semantics::Region::finite(std::move(states)));
        }
    }
    semantics::QuantumModel model(sig, std::move(valuation));
    return InitialModel{sig, gamma, std::move(universe), std::move(derived), std::move(model), options};
}

Verdict holds(const InitialModel& im, const std::string& p, const Term& k) {
    if (!im.sig.props().count(p)) throw ResolutionError("unknown proposition: " + p);
    const Vector w = eval_term(im.sig, k);
    for (std::size_t i = 0; i < im.universe.size(); ++i) {
        if (!(im.universe[i] == k)) continue;
        auto it = im.derived.find({p, i});
        if (it != im.derived.end() && it->second != Verdict::Fails) return it->second;
    }
    if (im.sig.is_closed(p) && im.model.region(p).contains(w, im.sig.tolerance())) return Verdict::Holds;
    const auto result = calculus::prove(im.sig, im.gamma, k, Sentence::prop(p), im.options);
    switch (result.outcome) {
        case calculus::Outcome::Proved: return Verdict::Holds;
        case calculus::Outcome::Unknown: return Verdict::Unknown;
        case calculus::Outcome::Failed: return Verdict::Fails;
    }
    return Verdict::Unknown;
}

MinimalityReport check_minimality(const InitialModel& im, const semantics::QuantumModel& other,
                                  const std::vector<Term>& samples) {
    MinimalityReport report;
    for (const auto& g : im.gamma) {
        bool ok = true;
        try {
            ok = semantics::global_sat(other, g);
        } catch (const NotRepresentable&) {
            for (const auto& k : samples) {
                if (!semantics::sat_at(other, eval_term(other.sig(), k), g)) {
                    ok = false;
                    break;
                }
            }
        } catch (const BudgetExhausted& e) {
            report.precondition = false;
            report.detail = "could not evaluate " + syntax::to_string(g) + ": " + e.what();
            return report;
        }
        if (!ok) {
            report.precondition = false;
            report.detail = "other model does not satisfy " + syntax::to_string(g);
            return report;
        }
    }
    for (const auto& k : samples) {
        const Vector w = eval_term(im.sig, k);
        for (const auto& p : im.sig.props()) {
            if (holds(im, p, k) != Verdict::Holds) continue;
            if (!other.region(p).contains(w, other.sig().tolerance())) {
                report.minimal = false;
                report.detail = p + " is derivable at " + syntax::to_string(k) + " but fails in the other model";
                return report;
            }
        }
    }
    return report;
}

}  // namespace hdql::initial
