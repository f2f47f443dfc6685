#include "hdql/calculus.hpp"

#include <algorithm>
#include <array>
#include <sstream>

namespace hdql::calculus {

using SK = Sentence::Kind;
using syntax::Action;

namespace {

constexpr std::array<std::string_view, kRuleCount> kRuleNames = {
    "Monotonicity", "Unions", "Translation", "Origin", "Mult",  "Add",  "SpanClosure",   "EQ",    "RetI",
    "RetE",         "StoreI", "StoreE",      "ConjI",  "ConjE", "FTI",  "FTE",           "CompI", "CompE",
    "UnionI",       "UnionE", "StarI_bounded", "StarE", "MP",   "MPc",  "Imp",           "Impc",
};

}  // namespace

std::string_view rule_name(RuleId r) { return kRuleNames.at(static_cast<std::size_t>(r)); }

std::optional<RuleId> rule_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kRuleNames.size(); ++i) {
        if (kRuleNames[i] == name) return static_cast<RuleId>(i);
    }
    return std::nullopt;
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Proved: return "proved";
        case Outcome::Failed: return "failed";
        case Outcome::Unknown: return "unknown";
    }
    return "?";
}

// ---------------------------------------------------------------- contexts

Gamma make_gamma(std::vector<Sentence> sentences) {
    return std::make_shared<const std::vector<Sentence>>(std::move(sentences));
}

bool gamma_contains(const std::vector<Sentence>& g, const Sentence& s) {
    return std::any_of(g.begin(), g.end(), [&](const Sentence& x) { return syntax::alpha_equal(x, s); });
}

bool gamma_subset(const std::vector<Sentence>& a, const std::vector<Sentence>& b) {
    return std::all_of(a.begin(), a.end(), [&](const Sentence& x) { return gamma_contains(b, x); });
}

bool gamma_equal(const Gamma& a, const Gamma& b) {
    if (a == b) return true;
    return gamma_subset(*a, *b) && gamma_subset(*b, *a);
}

Gamma gamma_with(const Gamma& g, const Sentence& s) {
    if (gamma_contains(*g, s)) return g;
    std::vector<Sentence> out = *g;
    out.push_back(s);
    return make_gamma(std::move(out));
}

std::size_t ProofTree::size() const {
    std::size_t n = 1;
    for (const auto& p : premises) n += p.size();
    return n;
}

// ---------------------------------------------------------------- orbits

std::optional<std::size_t> star_period(const Signature& sig, const Action& a, const Vector& w,
                                       semantics::StarBudget budget) {
    const Tolerance tol = sig.tolerance();
    const auto seen_in = [&](const std::vector<Vector>& set, const Vector& v) {
        return std::any_of(set.begin(), set.end(), [&](const Vector& x) { return hilbert::approx_equal(x, v, tol); });
    };
    std::vector<Vector> reached{w};
    std::vector<Vector> level{w};
    for (std::size_t n = 1; n <= budget.max_iterations; ++n) {
        std::vector<Vector> next;
        for (const auto& x : level) {
            const semantics::Successors s = semantics::successors(sig, a, x, budget);
            if (s.truncated) return std::nullopt;
            for (const auto& y : s.states) {
                if (!seen_in(next, y)) next.push_back(y);
            }
        }
        if (std::all_of(next.begin(), next.end(), [&](const Vector& y) { return seen_in(reached, y); })) return n;
        for (const auto& y : next) {
            if (!seen_in(reached, y)) reached.push_back(y);
        }
        level = std::move(next);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- kernel

namespace {

struct Reject {
    std::string reason;
};

[[noreturn]] void reject(std::string reason) { throw Reject{std::move(reason)}; }

void require(bool cond, const char* reason) {
    if (!cond) reject(reason);
}

std::string show(const Sequent& s) {
    return syntax::to_string(s.k) + " |- " + syntax::to_string(s.goal);
}

std::size_t cert_number(const Certificate& c, const std::string& key) {
    auto it = c.find(key);
    if (it == c.end()) reject("certificate lacks '" + key + "'");
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(key);
        return v;
    } catch (const std::exception&) {
        reject("certificate entry '" + key + "' is not a number");
    }
}

class Kernel {
public:
    Kernel(semantics::StarBudget budget) : budget_(budget) {}

    CheckResult run(const Signature& sig, const ProofTree& t) {
        CheckResult result;
        std::vector<std::size_t> path;
        walk(sig, t, path, result);
        return result;
    }

private:
    bool walk(const Signature& sig, const ProofTree& t, std::vector<std::size_t>& path, CheckResult& result) {
        try {
            node(sig, t);
        } catch (const Reject& r) {
            return fail(result, path, std::string(rule_name(t.rule)) + " at " + show(t.conclusion) + ": " + r.reason);
        } catch (const Error& e) {
            return fail(result, path, std::string(rule_name(t.rule)) + " at " + show(t.conclusion) + ": " + e.what());
        }
        const Signature* premise_sig = &sig;
        std::optional<Signature> source;
        if (t.rule == RuleId::Translation) {
            source.emplace(hdql::reduct(sig, parse_morphism(t.certificate.at("map"))));
            premise_sig = &*source;
        }
        for (std::size_t i = 0; i < t.premises.size(); ++i) {
            path.push_back(i);
            if (!walk(*premise_sig, t.premises[i], path, result)) return false;
            path.pop_back();
        }
        return true;
    }

    static bool fail(CheckResult& result, const std::vector<std::size_t>& path, std::string reason) {
        result.ok = false;
        result.path = path;
        result.reason = std::move(reason);
        return false;
    }

    void arity(const ProofTree& t, std::size_t n) const {
        if (t.premises.size() != n) {
            reject("expected " + std::to_string(n) + " premise(s), found " + std::to_string(t.premises.size()));
        }
    }

    static void same_context(const ProofTree& t) {
        for (const auto& p : t.premises) {
            require(gamma_equal(p.conclusion.gamma, t.conclusion.gamma), "premise context differs");
        }
    }

    static void premise_is(const ProofTree& p, const Term& k, const Sentence& goal) {
        if (!(p.conclusion.k == k)) {
            reject("premise term is " + syntax::to_string(p.conclusion.k) + ", expected " + syntax::to_string(k));
        }
        if (!syntax::alpha_equal(p.conclusion.goal, goal)) {
            reject("premise goal is " + syntax::to_string(p.conclusion.goal) + ", expected " + syntax::to_string(goal));
        }
    }

    static void closed_prop(const Signature& sig, const Sentence& g) {
        require(g.kind() == SK::Prop && sig.is_closed(g.name()), "goal is not a closed proposition");
    }

    void node(const Signature& sig, const ProofTree& t) {
        const Sequent& c = t.conclusion;
        const Sentence& g = c.goal;
        const Term& k = c.k;
        const auto& P = t.premises;
        switch (t.rule) {
            case RuleId::Monotonicity:
                arity(t, 0);
                require(gamma_contains(*c.gamma, g), "goal is not in the context");
                return;
            case RuleId::Unions:
                arity(t, 1);
                require(gamma_subset(*P[0].conclusion.gamma, *c.gamma), "premise context is not a subset");
                premise_is(P[0], k, g);
                return;
            case RuleId::Translation: {
                arity(t, 1);
                auto it = t.certificate.find("map");
                require(it != t.certificate.end(), "certificate lacks 'map'");
                const Morphism chi = parse_morphism(it->second);
                const Sequent image = apply_morphism(chi, P[0].conclusion);
                require(image.k == k, "term is not the image of the premise term");
                require(syntax::alpha_equal(image.goal, g), "goal is not the image of the premise goal");
                require(gamma_equal(image.gamma, c.gamma), "context is not the image of the premise context");
                return;
            }
            case RuleId::Origin:
                arity(t, 0);
                closed_prop(sig, g);
                require(k.kind() == Term::Kind::Origin || diagram_eq(sig, k, Term::origin()),
                        "term does not denote the origin");
                return;
            case RuleId::Mult:
                arity(t, 1);
                same_context(t);
                closed_prop(sig, g);
                require(k.kind() == Term::Kind::Scale, "term is not a scalar multiple");
                premise_is(P[0], k.arg(), g);
                return;
            case RuleId::Add:
                arity(t, 2);
                same_context(t);
                closed_prop(sig, g);
                require(k.kind() == Term::Kind::Sum, "term is not a sum");
                premise_is(P[0], k.lhs(), g);
                premise_is(P[1], k.rhs(), g);
                return;
            case RuleId::SpanClosure: {
                require(!P.empty(), "needs at least one premise");
                same_context(t);
                closed_prop(sig, g);
                std::vector<Vector> family;
                for (const auto& p : P) {
                    premise_is(p, p.conclusion.k, g);
                    family.push_back(eval_term(sig, p.conclusion.k));
                }
                const Subspace span = hilbert::orthonormalize(sig.dim(), family, sig.tolerance());
                require(hilbert::member(span, eval_term(sig, k), sig.tolerance()),
                        "term is not in the span of the premise terms");
                return;
            }
            case RuleId::EQ:
                arity(t, 1);
                same_context(t);
                require(syntax::alpha_equal(P[0].conclusion.goal, g), "premise goal differs");
                require(P[0].conclusion.k == k || diagram_eq(sig, P[0].conclusion.k, k),
                        "terms are not equal in the diagram");
                return;
            case RuleId::RetI:
                arity(t, 1);
                same_context(t);
                require(g.kind() == SK::At, "goal is not a retrieve");
                premise_is(P[0], g.term(), g.body());
                return;
            case RuleId::RetE:
                arity(t, 1);
                same_context(t);
                premise_is(P[0], P[0].conclusion.k, Sentence::at(k, g));
                require(P[0].conclusion.goal.term() == k, "retrieve term differs from the conclusion term");
                return;
            case RuleId::StoreI:
                arity(t, 1);
                same_context(t);
                require(g.kind() == SK::Store, "goal is not a store");
                premise_is(P[0], k, syntax::substitute(g.body(), g.name(), k));
                return;
            case RuleId::StoreE: {
                arity(t, 1);
                same_context(t);
                const Sentence& s = P[0].conclusion.goal;
                require(s.kind() == SK::Store, "premise goal is not a store");
                require(P[0].conclusion.k == k, "premise term differs");
                require(syntax::alpha_equal(syntax::substitute(s.body(), s.name(), k), g),
                        "goal is not the instantiated store body");
                return;
            }
            case RuleId::ConjI:
                arity(t, 2);
                same_context(t);
                require(g.kind() == SK::And, "goal is not a conjunction");
                premise_is(P[0], k, g.lhs());
                premise_is(P[1], k, g.rhs());
                return;
            case RuleId::ConjE: {
                arity(t, 1);
                same_context(t);
                const Sentence& s = P[0].conclusion.goal;
                require(s.kind() == SK::And, "premise goal is not a conjunction");
                require(P[0].conclusion.k == k, "premise term differs");
                require(syntax::alpha_equal(s.lhs(), g) || syntax::alpha_equal(s.rhs(), g),
                        "goal is neither conjunct");
                return;
            }
            case RuleId::FTI:
                arity(t, 1);
                same_context(t);
                require(g.kind() == SK::Nec && g.action().kind() == Action::Kind::Symbol, "goal is not [f] _");
                require(sig.is_unitary(g.action().name()) || sig.is_measurement(g.action().name()),
                        "unknown action symbol");
                premise_is(P[0], Term::apply(g.action().name(), k), g.body());
                return;
            case RuleId::FTE: {
                arity(t, 1);
                same_context(t);
                require(k.kind() == Term::Kind::Apply, "term is not an application");
                premise_is(P[0], k.arg(), Sentence::nec(Action::symbol(k.name()), g));
                return;
            }
            case RuleId::CompI: {
                arity(t, 1);
                same_context(t);
                require(g.kind() == SK::Nec && g.body().kind() == SK::Nec, "goal is not [a1][a2] _");
                const Action a = Action::comp(g.action(), g.body().action());
                premise_is(P[0], k, Sentence::nec(a, g.body().body()));
                return;
            }
            case RuleId::CompE:
                arity(t, 1);
                same_context(t);
                require(g.kind() == SK::Nec && g.action().kind() == Action::Kind::Comp, "goal is not [a1 ; a2] _");
                premise_is(P[0], k,
                           Sentence::nec(g.action().lhs(), Sentence::nec(g.action().rhs(), g.body())));
                return;
            case RuleId::UnionI:
                arity(t, 2);
                same_context(t);
                require(g.kind() == SK::Nec && g.action().kind() == Action::Kind::Union, "goal is not [a1 | a2] _");
                premise_is(P[0], k, Sentence::nec(g.action().lhs(), g.body()));
                premise_is(P[1], k, Sentence::nec(g.action().rhs(), g.body()));
                return;
            case RuleId::UnionE: {
                arity(t, 1);
                same_context(t);
                const Sentence& s = P[0].conclusion.goal;
                require(s.kind() == SK::Nec && s.action().kind() == Action::Kind::Union,
                        "premise goal is not [a1 | a2] _");
                require(P[0].conclusion.k == k, "premise term differs");
                const Sentence left = Sentence::nec(s.action().lhs(), s.body());
                const Sentence right = Sentence::nec(s.action().rhs(), s.body());
                require(syntax::alpha_equal(left, g) || syntax::alpha_equal(right, g), "goal is neither branch");
                return;
            }
            case RuleId::StarE: {
                arity(t, 1);
                same_context(t);
                const Sentence& s = P[0].conclusion.goal;
                require(s.kind() == SK::Nec && s.action().kind() == Action::Kind::Star, "premise goal is not [a*] _");
                require(P[0].conclusion.k == k, "premise term differs");
                const std::size_t n = cert_number(t.certificate, "n");
                require(syntax::alpha_equal(syntax::power_box(s.action().body(), n, s.body()), g),
                        "goal is not the certified power");
                return;
            }
            case RuleId::StarI_bounded: {
                same_context(t);
                require(g.kind() == SK::Nec && g.action().kind() == Action::Kind::Star, "goal is not [a*] _");
                const Action& a = g.action().body();
                const std::size_t period = cert_number(t.certificate, "period");
                require(period >= 1, "period must be positive");
                arity(t, period);
                for (std::size_t n = 0; n < period; ++n) premise_is(P[n], k, syntax::power_box(a, n, g.body()));
                const auto actual = star_period(sig, a, eval_term(sig, k), budget_);
                if (!actual) reject("orbit does not close within the star budget");
                require(*actual <= period, "orbit is not closed at the certified period");
                return;
            }
            case RuleId::MP: {
                arity(t, 2);
                same_context(t);
                const Sentence& phi = P[1].conclusion.goal;
                require(syntax::is_basic(phi), "antecedent is not basic");
                premise_is(P[0], k, Sentence::imp(phi, g));
                premise_is(P[1], k, phi);
                return;
            }
            case RuleId::MPc: {
                arity(t, 2);
                same_context(t);
                const Sentence& rho = P[1].conclusion.goal;
                require(syntax::is_closed_basic(rho, sig.vocabulary()), "antecedent is not closed basic");
                premise_is(P[0], k, Sentence::qimp(rho, g));
                premise_is(P[1], k, rho);
                return;
            }
            case RuleId::Imp: {
                arity(t, 1);
                require(g.kind() == SK::Imp, "goal is not an implication");
                premise_is(P[0], k, g.rhs());
                const Gamma expected = gamma_with(c.gamma, Sentence::at(k, g.lhs()));
                require(gamma_equal(P[0].conclusion.gamma, expected), "premise context is not Gamma + @k phi");
                return;
            }
            case RuleId::Impc: {
                arity(t, 1);
                require(g.kind() == SK::QImp, "goal is not a quantum implication");
                const auto voc = sig.vocabulary();
                require(syntax::is_closed(g.lhs(), voc) && syntax::is_closed(g.rhs(), voc), "operands are not closed");
                auto it = t.certificate.find("var");
                require(it != t.certificate.end(), "certificate lacks 'var'");
                const std::string& x = it->second;
                require(!sig.has_symbol(x), "generic variable clashes with a signature symbol");
                for (const auto& s : *c.gamma) {
                    require(syntax::free_idents(s).count(x) == 0, "generic variable occurs in the context");
                }
                premise_is(P[0], Term::ident(x), g.rhs());
                const Gamma expected = gamma_with(c.gamma, Sentence::at(Term::ident(x), g.lhs()));
                require(gamma_equal(P[0].conclusion.gamma, expected), "premise context is not Gamma + @x rho1");
                return;
            }
        }
        reject("unknown rule");
    }

    semantics::StarBudget budget_;
};

}  // namespace

CheckResult check_proof(const Signature& sig, const ProofTree& tree, semantics::StarBudget budget) {
    return Kernel(budget).run(sig, tree);
}

// ---------------------------------------------------------------- premises

namespace {

void collect_used(const ProofTree& t, const std::vector<Sentence>& root, const Morphism* to_root,
                  std::vector<Sentence>& out) {
    if (t.rule == RuleId::Monotonicity) {
        Sentence s = to_root ? apply_morphism(*to_root, t.conclusion.goal) : t.conclusion.goal;
        for (const auto& r : root) {
            if (syntax::alpha_equal(r, s) && !gamma_contains(out, r)) out.push_back(r);
        }
        return;
    }
    if (t.rule == RuleId::Translation) {
        const Morphism chi = parse_morphism(t.certificate.at("map"));
        std::map<std::string, std::string> composed;
        for (const auto& [from, to] : chi.mapping()) composed.emplace(from, to_root ? (*to_root)(to) : to);
        const Morphism m(std::move(composed));
        for (const auto& p : t.premises) collect_used(p, root, &m, out);
        return;
    }
    for (const auto& p : t.premises) collect_used(p, root, to_root, out);
}

ProofTree rebase_node(const ProofTree& t, const Gamma& old_gamma, const Gamma& new_gamma) {
    ProofTree out;
    out.conclusion = {new_gamma, t.conclusion.k, t.conclusion.goal};
    out.rule = t.rule;
    out.certificate = t.certificate;
    for (const auto& p : t.premises) {
        const Gamma& pg = p.conclusion.gamma;
        if (t.rule == RuleId::Translation) {
            // Keep the premise context members whose image survives.
            const Morphism chi = parse_morphism(t.certificate.at("map"));
            std::vector<Sentence> kept;
            for (const auto& s : *pg) {
                if (gamma_contains(*new_gamma, apply_morphism(chi, s))) kept.push_back(s);
            }
            out.premises.push_back(rebase_node(p, pg, make_gamma(std::move(kept))));
            continue;
        }
        if (t.rule == RuleId::Imp || t.rule == RuleId::Impc) {
            const Sentence& g = t.conclusion.goal;
            const Term at = t.rule == RuleId::Imp ? t.conclusion.k : Term::ident(t.certificate.at("var"));
            const Gamma next = gamma_with(new_gamma, Sentence::at(at, g.lhs()));
            out.premises.push_back(rebase_node(p, pg, next));
            continue;
        }
        if (pg == old_gamma) {
            out.premises.push_back(rebase_node(p, pg, new_gamma));
            continue;
        }
        std::vector<Sentence> next;
        for (const auto& s : *pg) {
            if (!gamma_contains(*old_gamma, s) || gamma_contains(*new_gamma, s)) {
                if (!gamma_contains(next, s)) next.push_back(s);
            }
        }
        out.premises.push_back(rebase_node(p, pg, make_gamma(std::move(next))));
    }
    return out;
}

}  // namespace

std::vector<Sentence> used_premises(const ProofTree& tree) {
    std::vector<Sentence> out;
    collect_used(tree, *tree.conclusion.gamma, nullptr, out);
    return out;
}

ProofTree rebase(const ProofTree& tree, const std::vector<Sentence>& subset) {
    return rebase_node(tree, tree.conclusion.gamma, make_gamma(subset));
}

// ---------------------------------------------------------------- renaming

Sequent apply_morphism(const Morphism& chi, const Sequent& s, const std::set<std::string>& bound) {
    std::vector<Sentence> g;
    g.reserve(s.gamma->size());
    for (const auto& x : *s.gamma) g.push_back(hdql::apply_morphism(chi, x, bound));
    return {make_gamma(std::move(g)), hdql::apply_morphism(chi, s.k, bound),
            hdql::apply_morphism(chi, s.goal, bound)};
}

namespace {

ProofTree rename_tree(const Morphism& chi, const ProofTree& t, std::set<std::string> bound,
                      std::map<const std::vector<Sentence>*, Gamma>& shared) {
    ProofTree out;
    const Sequent renamed = apply_morphism(chi, t.conclusion, bound);
    // Keep pointer sharing between nodes that shared a context.
    auto [it, fresh] = shared.emplace(t.conclusion.gamma.get(), renamed.gamma);
    out.conclusion = {it->second, renamed.k, renamed.goal};
    out.rule = t.rule;
    out.certificate = t.certificate;
    if (t.rule == RuleId::Translation) {
        const Morphism inner = parse_morphism(t.certificate.at("map"));
        std::map<std::string, std::string> composed;
        for (const auto& [from, to] : inner.mapping()) composed.emplace(from, chi(to));
        out.certificate["map"] = format_morphism(Morphism(std::move(composed)));
        out.premises = t.premises;
        return out;
    }
    if (t.rule == RuleId::Impc) bound.insert(t.certificate.at("var"));
    for (const auto& p : t.premises) out.premises.push_back(rename_tree(chi, p, bound, shared));
    return out;
}

}  // namespace

ProofTree apply_morphism(const Morphism& chi, const ProofTree& tree) {
    std::map<const std::vector<Sentence>*, Gamma> shared;
    return rename_tree(chi, tree, {}, shared);
}

ProofTree translation_step(const Morphism& chi, ProofTree premise) {
    ProofTree out;
    out.conclusion = apply_morphism(chi, premise.conclusion);
    out.rule = RuleId::Translation;
    out.certificate["map"] = format_morphism(chi);
    out.premises.push_back(std::move(premise));
    return out;
}

std::string format_morphism(const Morphism& chi) {
    std::string out;
    for (const auto& [from, to] : chi.mapping()) {
        if (!out.empty()) out += ',';
        out += from + "->" + to;
    }
    return out;
}

Morphism parse_morphism(std::string_view text) {
    std::map<std::string, std::string> m;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view entry = text.substr(pos, end - pos);
        const std::size_t arrow = entry.find("->");
        if (arrow == std::string_view::npos || arrow == 0 || arrow + 2 >= entry.size()) {
            throw Error("malformed morphism entry: " + std::string(entry));
        }
        m.emplace(std::string(entry.substr(0, arrow)), std::string(entry.substr(arrow + 2)));
        pos = end + 1;
    }
    return Morphism(std::move(m));
}

}  // namespace hdql::calculus
