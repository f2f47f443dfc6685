#include <algorithm>
#include <functional>

#include "hdql/calculus.hpp"

namespace hdql::calculus {

using SK = Sentence::Kind;
using syntax::Action;

namespace {

// Placeholder for the (not yet known) term a chain starts from. Not a legal
// identifier, so it never meets user names.
const std::string kHole = "?k0";

bool mentions(const Term& t, const std::string& v) { return syntax::free_idents(t).count(v) != 0; }

bool includes(const std::set<std::string>& big, const std::set<std::string>& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

void collect_terms(const Term& t, std::vector<Term>& out) {
    out.push_back(t);
    switch (t.kind()) {
        case Term::Kind::Sum:
            collect_terms(t.lhs(), out);
            collect_terms(t.rhs(), out);
            break;
        case Term::Kind::Scale:
        case Term::Kind::Apply: collect_terms(t.arg(), out); break;
        default: break;
    }
}

void collect_terms(const Sentence& s, std::vector<Term>& out) {
    switch (s.kind()) {
        case SK::Prop: return;
        case SK::Here: collect_terms(s.term(), out); return;
        case SK::At:
            collect_terms(s.term(), out);
            collect_terms(s.body(), out);
            return;
        case SK::Not:
        case SK::QNot:
        case SK::Nec:
        case SK::Store:
        case SK::Diamond: collect_terms(s.body(), out); return;
        default:
            collect_terms(s.lhs(), out);
            collect_terms(s.rhs(), out);
            return;
    }
}

struct Step {
    RuleId rule;
    std::size_t index = 0;  // branch for ConjE / UnionE, power for StarE
};

struct Frame {
    const std::vector<Sentence>* gamma;
    Term k;
    Sentence goal;
};

using Matcher = std::function<std::optional<ProofTree>(const Sentence& axiom, const std::vector<Step>&, const Term&)>;

class Prover {
public:
    Prover(const Signature& sig, const ProverOptions& options) : sig_(sig), opt_(options) {}

    void add_seeds(const std::vector<Sentence>& gamma, const Term& k) {
        std::vector<Term> all;
        for (const auto& s : gamma) collect_terms(s, all);
        collect_terms(k, all);
        for (const auto& t : all) {
            if (!ground(t)) continue;
            if (std::none_of(seeds_.begin(), seeds_.end(), [&](const Term& x) { return x == t; })) seeds_.push_back(t);
        }
    }

    std::optional<ProofTree> goal(const Gamma& gamma, const Term& k, const Sentence& g, std::size_t depth) {
        if (++nodes_ > opt_.node_budget || depth > opt_.max_depth) {
            exhausted_ = true;
            return std::nullopt;
        }
        const std::string key = std::to_string(reinterpret_cast<std::uintptr_t>(gamma.get())) + "|" +
                                syntax::to_string(k) + "|" + syntax::to_string(g);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        for (const auto& f : stack_) {
            if (f.gamma == gamma.get() && syntax::alpha_equal(f.goal, g) && same_state(f.k, k)) return std::nullopt;
        }
        stack_.push_back({gamma.get(), k, g});
        std::optional<ProofTree> result = dispatch(gamma, k, g, depth);
        stack_.pop_back();
        if (result) memo_.emplace(key, *result);
        return result;
    }

    [[nodiscard]] bool exhausted() const noexcept { return exhausted_; }
    [[nodiscard]] std::size_t nodes() const noexcept { return nodes_; }

private:
    // ------------------------------------------------------------ helpers

    bool ground(const Term& t) const {
        try {
            (void)eval_term(sig_, t);
            return true;
        } catch (const Error&) {
            return false;
        }
    }

    bool same_state(const Term& a, const Term& b) const {
        if (a == b) return true;
        if (!ground(a) || !ground(b)) return false;
        return diagram_eq(sig_, a, b);
    }

    static ProofTree leaf(const Gamma& gamma, const Term& k, const Sentence& g, RuleId rule) {
        return ProofTree{{gamma, k, g}, rule, {}, {}};
    }

    static ProofTree node(const Gamma& gamma, const Term& k, const Sentence& g, RuleId rule,
                          std::vector<ProofTree> premises, Certificate cert = {}) {
        return ProofTree{{gamma, k, g}, rule, std::move(premises), std::move(cert)};
    }

    std::string fresh_variable(const Gamma& gamma) const {
        std::set<std::string> taken;
        for (const auto& s : *gamma) {
            for (const auto& n : syntax::free_idents(s)) taken.insert(n);
        }
        for (std::size_t i = 1;; ++i) {
            std::string x = "g" + std::to_string(i);
            if (!taken.count(x) && !sig_.has_symbol(x)) return x;
        }
    }

    // ------------------------------------------------------------ goals

    std::optional<ProofTree> dispatch(const Gamma& gamma, const Term& k, const Sentence& g, std::size_t depth) {
        if (gamma_contains(*gamma, g)) return leaf(gamma, k, g, RuleId::Monotonicity);
        const std::size_t d = depth + 1;
        switch (g.kind()) {
            case SK::And: {
                auto l = goal(gamma, k, g.lhs(), d);
                if (!l) return std::nullopt;
                auto r = goal(gamma, k, g.rhs(), d);
                if (!r) return std::nullopt;
                return node(gamma, k, g, RuleId::ConjI, {std::move(*l), std::move(*r)});
            }
            case SK::At: {
                auto p = goal(gamma, g.term(), g.body(), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::RetI, {std::move(*p)});
            }
            case SK::Store: {
                auto p = goal(gamma, k, syntax::substitute(g.body(), g.name(), k), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::StoreI, {std::move(*p)});
            }
            case SK::Nec: return necessity(gamma, k, g, d);
            case SK::Imp: {
                const Gamma extended = gamma_with(gamma, Sentence::at(k, g.lhs()));
                auto p = goal(extended, k, g.rhs(), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::Imp, {std::move(*p)});
            }
            case SK::QImp: {
                if (auto c = chains(gamma, k, g, d)) return c;
                const std::string x = fresh_variable(gamma);
                const Term var = Term::ident(x);
                const Gamma extended = gamma_with(gamma, Sentence::at(var, g.lhs()));
                auto p = goal(extended, var, g.rhs(), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::Impc, {std::move(*p)}, {{"var", x}});
            }
            case SK::Prop: {
                if (auto c = chains(gamma, k, g, d)) return c;
                if (sig_.is_closed(g.name())) return closure(gamma, k, g, d);
                return std::nullopt;
            }
            default: return std::nullopt;
        }
    }

    std::optional<ProofTree> necessity(const Gamma& gamma, const Term& k, const Sentence& g, std::size_t d) {
        const Action& a = g.action();
        switch (a.kind()) {
            case Action::Kind::Symbol: {
                if (!sig_.is_unitary(a.name()) && !sig_.is_measurement(a.name())) return std::nullopt;
                auto p = goal(gamma, Term::apply(a.name(), k), g.body(), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::FTI, {std::move(*p)});
            }
            case Action::Kind::Comp: {
                auto p = goal(gamma, k, Sentence::nec(a.lhs(), Sentence::nec(a.rhs(), g.body())), d);
                if (!p) return std::nullopt;
                return node(gamma, k, g, RuleId::CompE, {std::move(*p)});
            }
            case Action::Kind::Union: {
                auto l = goal(gamma, k, Sentence::nec(a.lhs(), g.body()), d);
                if (!l) return std::nullopt;
                auto r = goal(gamma, k, Sentence::nec(a.rhs(), g.body()), d);
                if (!r) return std::nullopt;
                return node(gamma, k, g, RuleId::UnionI, {std::move(*l), std::move(*r)});
            }
            case Action::Kind::Star: {
                if (auto c = chains(gamma, k, g, d)) return c;
                if (!ground(k)) return std::nullopt;
                const auto period = star_period(sig_, a.body(), eval_term(sig_, k), opt_.star);
                if (!period) {
                    exhausted_ = true;
                    return std::nullopt;
                }
                std::vector<ProofTree> premises;
                for (std::size_t n = 0; n < *period; ++n) {
                    auto p = goal(gamma, k, syntax::power_box(a.body(), n, g.body()), d);
                    if (!p) return std::nullopt;
                    premises.push_back(std::move(*p));
                }
                return node(gamma, k, g, RuleId::StarI_bounded, std::move(premises),
                            {{"period", std::to_string(*period)}});
            }
        }
        return std::nullopt;
    }

    // Closed propositions: origin, spans of known facts, then term structure.
    std::optional<ProofTree> closure(const Gamma& gamma, const Term& k, const Sentence& r, std::size_t d) {
        const bool is_ground = ground(k);
        if (k.kind() == Term::Kind::Origin || (is_ground && diagram_eq(sig_, k, Term::origin()))) {
            return leaf(gamma, k, r, RuleId::Origin);
        }
        if (is_ground) {
            if (auto s = span_closure(gamma, k, r, d)) return s;
        }
        if (k.kind() == Term::Kind::Scale) {
            auto p = goal(gamma, k.arg(), r, d);
            if (p) return node(gamma, k, r, RuleId::Mult, {std::move(*p)});
        }
        if (k.kind() == Term::Kind::Sum) {
            auto l = goal(gamma, k.lhs(), r, d);
            if (!l) return std::nullopt;
            auto rr = goal(gamma, k.rhs(), r, d);
            if (!rr) return std::nullopt;
            return node(gamma, k, r, RuleId::Add, {std::move(*l), std::move(*rr)});
        }
        return std::nullopt;
    }

    std::optional<ProofTree> span_closure(const Gamma& gamma, const Term& k, const Sentence& r, std::size_t d) {
        std::vector<ProofTree> facts;
        const Matcher collect = [&](const Sentence& axiom, const std::vector<Step>& steps,
                                    const Term& t) -> std::optional<ProofTree> {
            if (mentions(t, kHole) || !ground(t)) return std::nullopt;
            for (const auto& k0 : candidates_for_fixed(k)) {
                if (auto tree = replay(gamma, axiom, steps, k0, d)) {
                    facts.push_back(std::move(*tree));
                    break;
                }
            }
            return std::nullopt;
        };
        for (const auto& ax : *gamma) {
            std::vector<Step> steps;
            walk(ax, ax, Term::ident(kHole), steps, r, collect, 0);
        }
        const Vector target = eval_term(sig_, k);
        std::vector<Vector> family;
        std::vector<ProofTree> chosen;
        Subspace span = Subspace::zero(sig_.dim());
        for (auto& f : facts) {
            const Vector v = eval_term(sig_, f.conclusion.k);
            if (hilbert::member(span, v, sig_.tolerance())) continue;
            family.push_back(v);
            chosen.push_back(std::move(f));
            span = hilbert::orthonormalize(sig_.dim(), family, sig_.tolerance());
            if (hilbert::member(span, target, sig_.tolerance())) {
                return node(gamma, k, r, RuleId::SpanClosure, std::move(chosen),
                            {{"count", std::to_string(family.size())}});
            }
        }
        return std::nullopt;
    }

    // ------------------------------------------------------------ chains

    // Elimination chains: start from an axiom at an unknown term and apply
    // elimination rules until the goal sentence appears.
    std::optional<ProofTree> chains(const Gamma& gamma, const Term& k, const Sentence& g, std::size_t d) {
        const Matcher close = [&](const Sentence& axiom, const std::vector<Step>& steps,
                                  const Term& t) -> std::optional<ProofTree> {
            return close_chain(gamma, axiom, steps, t, k, g, d);
        };
        for (const auto& ax : *gamma) {
            std::vector<Step> steps;
            if (auto t = walk(ax, ax, Term::ident(kHole), steps, g, close, 0)) return t;
            if (exhausted_) return std::nullopt;
        }
        return std::nullopt;
    }

    std::optional<ProofTree> walk(const Sentence& axiom, const Sentence& psi, const Term& t, std::vector<Step>& steps,
                                  const Sentence& g, const Matcher& match, std::size_t depth) {
        if (depth > opt_.max_depth || ++nodes_ > opt_.node_budget) {
            exhausted_ = true;
            return std::nullopt;
        }
        if (!includes(syntax::prop_symbols(psi), syntax::prop_symbols(g))) return std::nullopt;
        if (syntax::alpha_equal(psi, g)) {
            if (auto tree = match(axiom, steps, t)) return tree;
        }
        const auto go = [&](RuleId rule, std::size_t index, const Sentence& next,
                            const Term& next_t) -> std::optional<ProofTree> {
            steps.push_back({rule, index});
            auto r = walk(axiom, next, next_t, steps, g, match, depth + 1);
            steps.pop_back();
            return r;
        };
        switch (psi.kind()) {
            case SK::At: return go(RuleId::RetE, 0, psi.body(), psi.term());
            case SK::And:
                if (auto r = go(RuleId::ConjE, 1, psi.lhs(), t)) return r;
                return go(RuleId::ConjE, 2, psi.rhs(), t);
            case SK::Store: return go(RuleId::StoreE, 0, syntax::substitute(psi.body(), psi.name(), t), t);
            case SK::Imp:
                if (!syntax::is_basic(psi.lhs())) return std::nullopt;
                return go(RuleId::MP, 0, psi.rhs(), t);
            case SK::QImp:
                if (!syntax::is_closed_basic(psi.lhs(), sig_.vocabulary())) return std::nullopt;
                return go(RuleId::MPc, 0, psi.rhs(), t);
            case SK::Nec: {
                const Action& a = psi.action();
                switch (a.kind()) {
                    case Action::Kind::Symbol:
                        return go(RuleId::FTE, 0, psi.body(), Term::apply(a.name(), t));
                    case Action::Kind::Comp:
                        return go(RuleId::CompI, 0, Sentence::nec(a.lhs(), Sentence::nec(a.rhs(), psi.body())), t);
                    case Action::Kind::Union:
                        if (auto r = go(RuleId::UnionE, 1, Sentence::nec(a.lhs(), psi.body()), t)) return r;
                        return go(RuleId::UnionE, 2, Sentence::nec(a.rhs(), psi.body()), t);
                    case Action::Kind::Star: {
                        std::size_t limit = opt_.star_unroll;
                        if (!mentions(t, kHole) && ground(t)) {
                            const auto p = star_period(sig_, a.body(), eval_term(sig_, t), opt_.star);
                            if (p) limit = *p - 1;
                        }
                        for (std::size_t n = 0; n <= limit; ++n) {
                            if (auto r = go(RuleId::StarE, n, syntax::power_box(a.body(), n, psi.body()), t)) return r;
                        }
                        return std::nullopt;
                    }
                }
                return std::nullopt;
            }
            default: return std::nullopt;
        }
    }

    // Ways to instantiate the chain's start term when it is not pinned down
    // by the chain itself.
    std::vector<Term> candidates_for_fixed(const Term& k) const {
        std::vector<Term> out{k};
        for (const auto& s : seeds_) {
            if (!(s == k)) out.push_back(s);
        }
        return out;
    }

    std::optional<ProofTree> close_chain(const Gamma& gamma, const Sentence& axiom, const std::vector<Step>& steps,
                                         const Term& t, const Term& k, const Sentence& g, std::size_t d) {
        const bool has_side = std::any_of(steps.begin(), steps.end(), [](const Step& s) {
            return s.rule == RuleId::MP || s.rule == RuleId::MPc;
        });
        std::vector<Term> candidates;
        const auto add = [&](const Term& c) {
            if (std::none_of(candidates.begin(), candidates.end(), [&](const Term& x) { return x == c; })) {
                candidates.push_back(c);
            }
        };
        if (!mentions(t, kHole)) {
            if (!(t == k) && !(ground(t) && ground(k) && diagram_eq(sig_, t, k))) return std::nullopt;
            if (has_side) {
                for (const auto& c : candidates_for_fixed(k)) add(c);
            } else {
                add(k);
            }
        } else {
            if (auto b = unify(t, k)) add(*b);
            if (ground(k)) {
                const Vector target = eval_term(sig_, k);
                if (auto v = invert(t, target)) add(Term::literal(*v));
                if (has_side) {
                    for (const auto& s : seeds_) {
                        try {
                            if (hilbert::approx_equal(eval_term(sig_, syntax::substitute(t, kHole, s)), target,
                                                      sig_.tolerance())) {
                                add(s);
                            }
                        } catch (const Error&) {
                        }
                    }
                }
            }
        }
        for (const auto& k0 : candidates) {
            auto tree = replay(gamma, axiom, steps, k0, d);
            if (!tree) continue;
            if (tree->conclusion.k == k) return tree;
            const Term& got = tree->conclusion.k;
            if (!(ground(got) && ground(k) && diagram_eq(sig_, got, k))) continue;
            const double residual = diagram_residual(sig_, got, k);
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3e", residual);
            return node(gamma, k, g, RuleId::EQ, {std::move(*tree)}, {{"residual", buf}});
        }
        return std::nullopt;
    }

    std::optional<Term> unify(const Term& t, const Term& k) const {
        std::optional<Term> bound;
        const std::function<bool(const Term&, const Term&)> rec = [&](const Term& a, const Term& b) -> bool {
            if (a.kind() == Term::Kind::Ident && a.name() == kHole) {
                if (bound) return *bound == b;
                bound = b;
                return true;
            }
            if (!mentions(a, kHole)) return a == b;
            if (a.kind() != b.kind()) return false;
            switch (a.kind()) {
                case Term::Kind::Apply: return a.name() == b.name() && rec(a.arg(), b.arg());
                case Term::Kind::Scale: return a.scalar() == b.scalar() && rec(a.arg(), b.arg());
                case Term::Kind::Sum: return rec(a.lhs(), b.lhs()) && rec(a.rhs(), b.rhs());
                default: return false;
            }
        };
        if (rec(t, k) && bound) return bound;
        return std::nullopt;
    }

    // Solves t[hole := x] = target for x numerically.
    std::optional<Vector> invert(const Term& t, const Vector& target) const {
        const Tolerance tol = sig_.tolerance();
        switch (t.kind()) {
            case Term::Kind::Ident:
                if (t.name() == kHole) return target;
                return std::nullopt;
            case Term::Kind::Apply: {
                if (auto u = sig_.unitaries().find(t.name()); u != sig_.unitaries().end()) {
                    return invert(t.arg(), u->second.adjoint().apply(target));
                }
                auto q = sig_.measurements().find(t.name());
                if (q == sig_.measurements().end()) return std::nullopt;
                if (target.norm() <= tol.eps()) return invert(t.arg(), Vector::zero(sig_.dim()));
                // q(x) = x for unit vectors x inside the measured subspace.
                if (std::abs(target.norm() - 1.0) > tol.scaled(1.0) * 10) return std::nullopt;
                if (!hilbert::member(q->second.subspace, target, tol)) return std::nullopt;
                return invert(t.arg(), target);
            }
            case Term::Kind::Scale: {
                const Complex c = sig_.scalar_value(t.scalar());
                if (std::abs(c) <= tol.eps()) return std::nullopt;
                return invert(t.arg(), Complex(1.0) / c * target);
            }
            case Term::Kind::Sum: {
                const bool left = mentions(t.lhs(), kHole);
                const bool right = mentions(t.rhs(), kHole);
                if (left == right) return std::nullopt;
                try {
                    if (left) return invert(t.lhs(), target - eval_term(sig_, t.rhs()));
                    return invert(t.rhs(), target - eval_term(sig_, t.lhs()));
                } catch (const Error&) {
                    return std::nullopt;
                }
            }
            default: return std::nullopt;
        }
    }

    // Rebuilds the chain from the axiom at a concrete start term, proving the
    // antecedents of MP / MPc on the way.
    std::optional<ProofTree> replay(const Gamma& gamma, const Sentence& axiom, const std::vector<Step>& steps,
                                    const Term& k0, std::size_t d) {
        ProofTree cur = leaf(gamma, k0, axiom, RuleId::Monotonicity);
        Sentence psi = axiom;
        Term t = k0;
        for (const auto& step : steps) {
            std::vector<ProofTree> premises;
            Certificate cert;
            switch (step.rule) {
                case RuleId::RetE:
                    t = psi.term();
                    psi = psi.body();
                    break;
                case RuleId::ConjE:
                    psi = step.index == 1 ? psi.lhs() : psi.rhs();
                    cert["side"] = std::to_string(step.index);
                    break;
                case RuleId::StoreE: psi = syntax::substitute(psi.body(), psi.name(), t); break;
                case RuleId::FTE:
                    t = Term::apply(psi.action().name(), t);
                    psi = psi.body();
                    break;
                case RuleId::CompI:
                    psi = Sentence::nec(psi.action().lhs(), Sentence::nec(psi.action().rhs(), psi.body()));
                    break;
                case RuleId::UnionE: {
                    const Action& a = psi.action();
                    psi = Sentence::nec(step.index == 1 ? a.lhs() : a.rhs(), psi.body());
                    cert["side"] = std::to_string(step.index);
                    break;
                }
                case RuleId::StarE:
                    psi = syntax::power_box(psi.action().body(), step.index, psi.body());
                    cert["n"] = std::to_string(step.index);
                    break;
                case RuleId::MP:
                case RuleId::MPc: {
                    auto side = goal(gamma, t, psi.lhs(), d + 1);
                    if (!side) return std::nullopt;
                    psi = psi.rhs();
                    premises.push_back(std::move(cur));
                    premises.push_back(std::move(*side));
                    cur = node(gamma, t, psi, step.rule, std::move(premises), std::move(cert));
                    continue;
                }
                default: return std::nullopt;
            }
            premises.push_back(std::move(cur));
            cur = node(gamma, t, psi, step.rule, std::move(premises), std::move(cert));
        }
        return cur;
    }

    const Signature& sig_;
    ProverOptions opt_;
    std::vector<Term> seeds_;
    std::vector<Frame> stack_;
    std::map<std::string, ProofTree> memo_;
    std::size_t nodes_ = 0;
    bool exhausted_ = false;
};

bool ground_term(const Signature& sig, const Term& t) {
    try {
        (void)eval_term(sig, t);
        return true;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

ProofResult prove(const Signature& sig, const std::vector<Sentence>& gamma, const Term& k, const Sentence& goal,
                  const ProverOptions& options) {
    const auto voc = sig.vocabulary();
    for (const auto& s : gamma) {
        if (!syntax::is_quantum_clause(s, voc)) throw Error("not a quantum clause: " + syntax::to_string(s));
    }
    if (!syntax::is_quantum_clause(goal, voc)) throw Error("goal is not a quantum clause: " + syntax::to_string(goal));
    if (!ground_term(sig, k)) throw Error("goal term is not ground: " + syntax::to_string(k));

    Prover prover(sig, options);
    const Gamma g = make_gamma(gamma);
    prover.add_seeds(gamma, k);
    std::optional<ProofTree> tree = prover.goal(g, k, goal, 0);

    ProofResult result;
    result.nodes = prover.nodes();
    if (tree) {
        const CheckResult check = check_proof(sig, *tree, options.star);
        if (!check) throw Error("internal error: prover produced a rejected proof: " + check.reason);
        result.outcome = Outcome::Proved;
        result.report = "proved with " + std::to_string(tree->size()) + " nodes";
        result.proof = std::move(tree);
    } else if (prover.exhausted()) {
        result.outcome = Outcome::Unknown;
        result.report = "search budget exhausted before deciding " + syntax::to_string(goal) + " at " +
                        syntax::to_string(k);
    } else {
        result.outcome = Outcome::Failed;
        result.report = "no derivation of " + syntax::to_string(goal) + " at " + syntax::to_string(k) +
                        ": no rule applies";
    }
    return result;
}

}  // namespace hdql::calculus
