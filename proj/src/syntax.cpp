#include "hdql/syntax.hpp"

#include <algorithm>
#include <map>

namespace hdql::syntax {

// ---------------------------------------------------------------- Term

Term Term::ident(std::string name) {
    return Term(std::make_shared<const Node>(Node{Kind::Ident, std::move(name), {}, {}, {}}));
}

Term Term::literal(Vector v) {
    return Term(std::make_shared<const Node>(Node{Kind::Literal, {}, std::move(v), {}, {}}));
}

Term Term::origin() { return Term(std::make_shared<const Node>(Node{Kind::Origin, {}, {}, {}, {}})); }

Term Term::sum(Term a, Term b) {
    return Term(std::make_shared<const Node>(Node{Kind::Sum, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Term Term::scale(ScalarTerm s, Term t) {
    return Term(std::make_shared<const Node>(Node{Kind::Scale, {}, {}, std::move(s), {std::move(t)}}));
}

Term Term::apply(std::string symbol, Term t) {
    return Term(std::make_shared<const Node>(Node{Kind::Apply, std::move(symbol), {}, {}, {std::move(t)}}));
}

Term::Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Vector& Term::literal_value() const { return node_->literal; }
const ScalarTerm& Term::scalar() const { return node_->scalar; }
const Term& Term::lhs() const { return node_->kids.at(0); }
const Term& Term::rhs() const { return node_->kids.at(1); }
const Term& Term::arg() const { return node_->kids.at(0); }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind || x.name != y.name) return false;
    switch (x.kind) {
        case Term::Kind::Literal: return x.literal == y.literal;
        case Term::Kind::Scale: return x.scalar == y.scalar && x.kids == y.kids;
        default: return x.kids == y.kids;
    }
}

// ---------------------------------------------------------------- Action

Action Action::symbol(std::string name) {
    return Action(std::make_shared<const Node>(Node{Kind::Symbol, std::move(name), {}}));
}

Action Action::comp(Action a, Action b) {
    return Action(std::make_shared<const Node>(Node{Kind::Comp, {}, {std::move(a), std::move(b)}}));
}

Action Action::choice(Action a, Action b) {
    return Action(std::make_shared<const Node>(Node{Kind::Union, {}, {std::move(a), std::move(b)}}));
}

Action Action::star(Action a) {
    return Action(std::make_shared<const Node>(Node{Kind::Star, {}, {std::move(a)}}));
}

Action::Kind Action::kind() const { return node_->kind; }
const std::string& Action::name() const { return node_->name; }
const Action& Action::lhs() const { return node_->kids.at(0); }
const Action& Action::rhs() const { return node_->kids.at(1); }
const Action& Action::body() const { return node_->kids.at(0); }

bool operator==(const Action& a, const Action& b) {
    if (a.node_ == b.node_) return true;
    return a.node_->kind == b.node_->kind && a.node_->name == b.node_->name && a.node_->kids == b.node_->kids;
}

// ---------------------------------------------------------------- Sentence

namespace {

using SK = Sentence::Kind;

}  // namespace

Sentence Sentence::prop(std::string name) {
    return Sentence(std::make_shared<const Node>(Node{SK::Prop, std::move(name), {}, {}, {}}));
}

Sentence Sentence::at(Term k, Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::At, {}, {std::move(k)}, {}, {std::move(s)}}));
}

Sentence Sentence::conj(Sentence a, Sentence b) {
    return Sentence(std::make_shared<const Node>(Node{SK::And, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Sentence Sentence::neg(Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::Not, {}, {}, {}, {std::move(s)}}));
}

Sentence Sentence::qneg(Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::QNot, {}, {}, {}, {std::move(s)}}));
}

Sentence Sentence::nec(Action a, Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::Nec, {}, {}, {std::move(a)}, {std::move(s)}}));
}

Sentence Sentence::store(std::string var, Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::Store, std::move(var), {}, {}, {std::move(s)}}));
}

Sentence Sentence::imp(Sentence a, Sentence b) {
    return Sentence(std::make_shared<const Node>(Node{SK::Imp, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Sentence Sentence::qimp(Sentence a, Sentence b) {
    return Sentence(std::make_shared<const Node>(Node{SK::QImp, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Sentence Sentence::here(Term k) {
    return Sentence(std::make_shared<const Node>(Node{SK::Here, {}, {std::move(k)}, {}, {}}));
}

Sentence Sentence::qor(Sentence a, Sentence b) {
    return Sentence(std::make_shared<const Node>(Node{SK::QOr, {}, {}, {}, {std::move(a), std::move(b)}}));
}

Sentence Sentence::diamond(Action a, Sentence s) {
    return Sentence(std::make_shared<const Node>(Node{SK::Diamond, {}, {}, {std::move(a)}, {std::move(s)}}));
}

Sentence Sentence::until(Action a, Sentence a1, Sentence a2) {
    return Sentence(
        std::make_shared<const Node>(Node{SK::Until, {}, {}, {std::move(a)}, {std::move(a1), std::move(a2)}}));
}

Sentence::Kind Sentence::kind() const { return node_->kind; }
const std::string& Sentence::name() const { return node_->name; }
const Term& Sentence::term() const { return node_->terms.at(0); }
const Action& Sentence::action() const { return node_->actions.at(0); }
const Sentence& Sentence::body() const { return node_->kids.at(0); }
const Sentence& Sentence::lhs() const { return node_->kids.at(0); }
const Sentence& Sentence::rhs() const { return node_->kids.at(1); }

bool operator==(const Sentence& a, const Sentence& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    return x.kind == y.kind && x.name == y.name && x.terms == y.terms && x.actions == y.actions &&
           x.kids == y.kids;
}

// ---------------------------------------------------------------- structure

namespace {

void collect_idents(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Ident: out.insert(t.name()); break;
        case Term::Kind::Literal:
        case Term::Kind::Origin: break;
        case Term::Kind::Sum:
            collect_idents(t.lhs(), out);
            collect_idents(t.rhs(), out);
            break;
        case Term::Kind::Scale:
        case Term::Kind::Apply: collect_idents(t.arg(), out); break;
    }
}

void collect_free(const Sentence& s, std::set<std::string>& out) {
    switch (s.kind()) {
        case SK::Prop: break;
        case SK::At:
            collect_idents(s.term(), out);
            collect_free(s.body(), out);
            break;
        case SK::Here: collect_idents(s.term(), out); break;
        case SK::Store: {
            std::set<std::string> inner;
            collect_free(s.body(), inner);
            inner.erase(s.name());
            out.insert(inner.begin(), inner.end());
            break;
        }
        case SK::Not:
        case SK::QNot:
        case SK::Nec:
        case SK::Diamond: collect_free(s.body(), out); break;
        case SK::And:
        case SK::Imp:
        case SK::QImp:
        case SK::QOr:
        case SK::Until:
            collect_free(s.lhs(), out);
            collect_free(s.rhs(), out);
            break;
    }
}

void collect_action_symbols(const Action& a, std::set<std::string>& out) {
    switch (a.kind()) {
        case Action::Kind::Symbol: out.insert(a.name()); break;
        case Action::Kind::Comp:
        case Action::Kind::Union:
            collect_action_symbols(a.lhs(), out);
            collect_action_symbols(a.rhs(), out);
            break;
        case Action::Kind::Star: collect_action_symbols(a.body(), out); break;
    }
}

void collect_term_symbols(const Term& t, std::set<std::string>& out) {
    switch (t.kind()) {
        case Term::Kind::Apply:
            out.insert(t.name());
            collect_term_symbols(t.arg(), out);
            break;
        case Term::Kind::Scale: collect_term_symbols(t.arg(), out); break;
        case Term::Kind::Sum:
            collect_term_symbols(t.lhs(), out);
            collect_term_symbols(t.rhs(), out);
            break;
        default: break;
    }
}

template <class F>
void for_each_child(const Sentence& s, F&& f) {
    switch (s.kind()) {
        case SK::Prop:
        case SK::Here: break;
        case SK::At:
        case SK::Not:
        case SK::QNot:
        case SK::Nec:
        case SK::Store:
        case SK::Diamond: f(s.body()); break;
        default:
            f(s.lhs());
            f(s.rhs());
            break;
    }
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string candidate = base + "'";
    while (avoid.count(candidate) != 0) candidate += "'";
    return candidate;
}

}  // namespace

std::set<std::string> free_idents(const Term& t) {
    std::set<std::string> out;
    collect_idents(t, out);
    return out;
}

std::set<std::string> free_idents(const Sentence& s) {
    std::set<std::string> out;
    collect_free(s, out);
    return out;
}

std::set<std::string> action_symbols(const Action& a) {
    std::set<std::string> out;
    collect_action_symbols(a, out);
    return out;
}

std::set<std::string> action_symbols(const Sentence& s) {
    std::set<std::string> out;
    const auto visit = [&](const auto& self, const Sentence& x) -> void {
        if (x.kind() == SK::Nec || x.kind() == SK::Diamond || x.kind() == SK::Until) {
            collect_action_symbols(x.action(), out);
        }
        if (x.kind() == SK::At || x.kind() == SK::Here) collect_term_symbols(x.term(), out);
        for_each_child(x, [&](const Sentence& c) { self(self, c); });
    };
    visit(visit, s);
    return out;
}

std::set<std::string> prop_symbols(const Sentence& s) {
    std::set<std::string> out;
    const auto visit = [&](const auto& self, const Sentence& x) -> void {
        if (x.kind() == SK::Prop) out.insert(x.name());
        for_each_child(x, [&](const Sentence& c) { self(self, c); });
    };
    visit(visit, s);
    return out;
}

Term substitute(const Term& t, const std::string& var, const Term& k) {
    switch (t.kind()) {
        case Term::Kind::Ident: return t.name() == var ? k : t;
        case Term::Kind::Literal:
        case Term::Kind::Origin: return t;
        case Term::Kind::Sum: return Term::sum(substitute(t.lhs(), var, k), substitute(t.rhs(), var, k));
        case Term::Kind::Scale: return Term::scale(t.scalar(), substitute(t.arg(), var, k));
        case Term::Kind::Apply: return Term::apply(t.name(), substitute(t.arg(), var, k));
    }
    return t;
}

Sentence substitute(const Sentence& s, const std::string& var, const Term& k) {
    switch (s.kind()) {
        case SK::Prop: return s;
        case SK::At: return Sentence::at(substitute(s.term(), var, k), substitute(s.body(), var, k));
        case SK::Here: return Sentence::here(substitute(s.term(), var, k));
        case SK::And: return Sentence::conj(substitute(s.lhs(), var, k), substitute(s.rhs(), var, k));
        case SK::Not: return Sentence::neg(substitute(s.body(), var, k));
        case SK::QNot: return Sentence::qneg(substitute(s.body(), var, k));
        case SK::Nec: return Sentence::nec(s.action(), substitute(s.body(), var, k));
        case SK::Diamond: return Sentence::diamond(s.action(), substitute(s.body(), var, k));
        case SK::Imp: return Sentence::imp(substitute(s.lhs(), var, k), substitute(s.rhs(), var, k));
        case SK::QImp: return Sentence::qimp(substitute(s.lhs(), var, k), substitute(s.rhs(), var, k));
        case SK::QOr: return Sentence::qor(substitute(s.lhs(), var, k), substitute(s.rhs(), var, k));
        case SK::Until:
            return Sentence::until(s.action(), substitute(s.lhs(), var, k), substitute(s.rhs(), var, k));
        case SK::Store: {
            const std::string& bound = s.name();
            if (bound == var) return s;
            const auto body_free = free_idents(s.body());
            if (body_free.count(var) == 0) return s;
            const auto k_free = free_idents(k);
            if (k_free.count(bound) == 0) return Sentence::store(bound, substitute(s.body(), var, k));
            std::set<std::string> avoid = body_free;
            avoid.insert(k_free.begin(), k_free.end());
            avoid.insert(var);
            const std::string renamed = fresh_name(bound, avoid);
            const Sentence body = substitute(s.body(), bound, Term::ident(renamed));
            return Sentence::store(renamed, substitute(body, var, k));
        }
    }
    return s;
}

namespace {

using Binding = std::vector<std::pair<std::string, std::string>>;

// Resolves an identifier through the binder stack; free identifiers map to
// themselves with a marker so they never collide with bound ones.
std::string resolve(const Binding& env, const std::string& name, bool left) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if ((left ? it->first : it->second) == name) {
            return "#" + std::to_string(std::distance(it, env.rend()));
        }
    }
    return name;
}

bool alpha_term(const Term& a, const Term& b, const Binding& env) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case Term::Kind::Ident: return resolve(env, a.name(), true) == resolve(env, b.name(), false);
        case Term::Kind::Literal: return a.literal_value() == b.literal_value();
        case Term::Kind::Origin: return true;
        case Term::Kind::Sum: return alpha_term(a.lhs(), b.lhs(), env) && alpha_term(a.rhs(), b.rhs(), env);
        case Term::Kind::Scale: return a.scalar() == b.scalar() && alpha_term(a.arg(), b.arg(), env);
        case Term::Kind::Apply: return a.name() == b.name() && alpha_term(a.arg(), b.arg(), env);
    }
    return false;
}

bool alpha_sentence(const Sentence& a, const Sentence& b, Binding& env) {
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
        case SK::Prop: return a.name() == b.name();
        case SK::Here: return alpha_term(a.term(), b.term(), env);
        case SK::At: return alpha_term(a.term(), b.term(), env) && alpha_sentence(a.body(), b.body(), env);
        case SK::Not:
        case SK::QNot: return alpha_sentence(a.body(), b.body(), env);
        case SK::Nec:
        case SK::Diamond: return a.action() == b.action() && alpha_sentence(a.body(), b.body(), env);
        case SK::Store: {
            env.emplace_back(a.name(), b.name());
            const bool ok = alpha_sentence(a.body(), b.body(), env);
            env.pop_back();
            return ok;
        }
        case SK::Until:
            if (!(a.action() == b.action())) return false;
            [[fallthrough]];
        default: return alpha_sentence(a.lhs(), b.lhs(), env) && alpha_sentence(a.rhs(), b.rhs(), env);
    }
}

}  // namespace

bool alpha_equal(const Sentence& a, const Sentence& b) {
    if (a == b) return true;
    Binding env;
    return alpha_sentence(a, b, env);
}

Sentence desugar(const Sentence& s) {
    switch (s.kind()) {
        case SK::Prop:
        case SK::Here: return s;
        case SK::At: return Sentence::at(s.term(), desugar(s.body()));
        case SK::And: return Sentence::conj(desugar(s.lhs()), desugar(s.rhs()));
        case SK::Not: return Sentence::neg(desugar(s.body()));
        case SK::QNot: return Sentence::qneg(desugar(s.body()));
        case SK::Nec: return Sentence::nec(s.action(), desugar(s.body()));
        case SK::Store: return Sentence::store(s.name(), desugar(s.body()));
        case SK::Imp: return Sentence::imp(desugar(s.lhs()), desugar(s.rhs()));
        case SK::QImp: return Sentence::qimp(desugar(s.lhs()), desugar(s.rhs()));
        case SK::QOr:
            return Sentence::qneg(Sentence::conj(Sentence::qneg(desugar(s.lhs())), Sentence::qneg(desugar(s.rhs()))));
        case SK::Diamond: return Sentence::neg(Sentence::nec(s.action(), Sentence::neg(desugar(s.body()))));
        case SK::Until: {
            // store x . <a> store y . (g1 /\ @(x) [a] (<a> here(y) => g2))
            const Sentence g1 = desugar(s.lhs());
            const Sentence g2 = desugar(s.rhs());
            std::set<std::string> avoid = free_idents(g1);
            const auto f2 = free_idents(g2);
            avoid.insert(f2.begin(), f2.end());
            const std::string x = avoid.count("x") ? fresh_name("x", avoid) : "x";
            avoid.insert(x);
            const std::string y = avoid.count("y") ? fresh_name("y", avoid) : "y";
            const Action& a = s.action();
            const auto dia = [&](Sentence body) { return Sentence::neg(Sentence::nec(a, Sentence::neg(std::move(body)))); };
            const Sentence guard = Sentence::imp(dia(Sentence::here(Term::ident(y))), g2);
            const Sentence inner = Sentence::conj(g1, Sentence::at(Term::ident(x), Sentence::nec(a, guard)));
            return Sentence::store(x, dia(Sentence::store(y, inner)));
        }
    }
    return s;
}

Action power_action(const Action& a, std::size_t n) {
    if (n == 0) throw Error("power_action needs n >= 1");
    Action result = a;
    for (std::size_t i = 1; i < n; ++i) result = Action::comp(a, result);
    return result;
}

Sentence power_box(const Action& a, std::size_t n, const Sentence& s) {
    if (n == 0) return s;
    return Sentence::nec(power_action(a, n), s);
}

std::size_t depth(const Sentence& s) {
    std::size_t d = 0;
    for_each_child(s, [&](const Sentence& c) { d = std::max(d, depth(c)); });
    return d + 1;
}

// ---------------------------------------------------------------- fragments

bool is_unitary_action(const Action& a, const Vocabulary& voc) {
    const auto symbols = action_symbols(a);
    return std::none_of(symbols.begin(), symbols.end(),
                        [&](const std::string& f) { return voc.measurements.count(f) != 0; });
}

bool is_basic(const Sentence& s) {
    switch (s.kind()) {
        case SK::Prop: return true;
        case SK::And: return is_basic(s.lhs()) && is_basic(s.rhs());
        case SK::At:
        case SK::Nec:
        case SK::Store: return is_basic(s.body());
        default: return false;
    }
}

bool is_closed(const Sentence& s, const Vocabulary& voc) {
    switch (s.kind()) {
        case SK::Prop: return voc.closed_props.count(s.name()) != 0;
        case SK::QNot: return is_closed(s.body(), voc);
        case SK::And:
        case SK::QImp:
        case SK::QOr: return is_closed(s.lhs(), voc) && is_closed(s.rhs(), voc);
        case SK::Nec: return is_unitary_action(s.action(), voc) && is_closed(s.body(), voc);
        default: return false;
    }
}

bool is_closed_basic(const Sentence& s, const Vocabulary& voc) {
    switch (s.kind()) {
        case SK::Prop: return voc.closed_props.count(s.name()) != 0;
        case SK::And: return is_closed_basic(s.lhs(), voc) && is_closed_basic(s.rhs(), voc);
        case SK::Nec: return is_unitary_action(s.action(), voc) && is_closed_basic(s.body(), voc);
        default: return false;
    }
}

bool is_closed_clause(const Sentence& s, const Vocabulary& voc) {
    switch (s.kind()) {
        case SK::Prop: return voc.closed_props.count(s.name()) != 0;
        case SK::QImp: return is_closed_basic(s.lhs(), voc) && is_closed_clause(s.rhs(), voc);
        case SK::And: return is_closed_clause(s.lhs(), voc) && is_closed_clause(s.rhs(), voc);
        case SK::Nec: return is_unitary_action(s.action(), voc) && is_closed_clause(s.body(), voc);
        default: return false;
    }
}

bool is_quantum_clause(const Sentence& s, const Vocabulary& voc) {
    switch (s.kind()) {
        case SK::Prop: return true;
        case SK::QImp: return is_closed_basic(s.lhs(), voc) && is_closed_clause(s.rhs(), voc);
        case SK::Imp: return is_basic(s.lhs()) && is_quantum_clause(s.rhs(), voc);
        case SK::And: return is_quantum_clause(s.lhs(), voc) && is_quantum_clause(s.rhs(), voc);
        case SK::At:
        case SK::Nec:
        case SK::Store: return is_quantum_clause(s.body(), voc);
        default: return false;
    }
}

Kind classify(const Sentence& s, const Vocabulary& voc) {
    Kind k;
    k.is_basic = is_basic(s);
    k.is_closed = is_closed(s, voc);
    k.is_closed_basic = is_closed_basic(s, voc);
    k.is_quantum_clause = is_quantum_clause(s, voc);
    k.is_closed_quantum_clause = is_closed_clause(s, voc);
    return k;
}

}  // namespace hdql::syntax
