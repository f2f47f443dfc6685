#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdql/hilbert.hpp"

// Abstract syntax for vector terms, actions and sentences, together with the
// concrete text grammar (parse / print), capture-avoiding substitution, sugar
// expansion and fragment classification.
namespace hdql::syntax {

using hilbert::Complex;
using hilbert::Vector;

/// Scalar in a `a * k` term: either a named constant or a complex literal.
struct ScalarTerm {
    std::string name;  // empty for literals
    Complex value{};

    [[nodiscard]] bool is_named() const noexcept { return !name.empty(); }
    static ScalarTerm literal(Complex c) { return {{}, c}; }
    static ScalarTerm named(std::string n) { return {std::move(n), {}}; }

    friend bool operator==(const ScalarTerm&, const ScalarTerm&) = default;
};

class Term {
public:
    enum class Kind { Ident, Literal, Origin, Sum, Scale, Apply };

    /// Identifiers name either a store-bound variable or a named vector of the
    /// signature; which one is decided by scope, not by syntax.
    static Term ident(std::string name);
    static Term literal(Vector v);
    static Term origin();
    static Term sum(Term a, Term b);
    static Term scale(ScalarTerm s, Term t);
    static Term apply(std::string symbol, Term t);

    [[nodiscard]] Kind kind() const;
    /// Identifier name, or the applied symbol for `Apply`.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Vector& literal_value() const;
    [[nodiscard]] const ScalarTerm& scalar() const;
    [[nodiscard]] const Term& lhs() const;
    [[nodiscard]] const Term& rhs() const;
    /// Operand of `Scale` and `Apply`.
    [[nodiscard]] const Term& arg() const;

    friend bool operator==(const Term& a, const Term& b);

    struct Node;

private:
    explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class Action {
public:
    enum class Kind { Symbol, Comp, Union, Star };

    static Action symbol(std::string name);
    static Action comp(Action a, Action b);
    static Action choice(Action a, Action b);
    static Action star(Action a);

    [[nodiscard]] Kind kind() const;
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Action& lhs() const;
    [[nodiscard]] const Action& rhs() const;
    [[nodiscard]] const Action& body() const;

    friend bool operator==(const Action& a, const Action& b);

    struct Node;

private:
    explicit Action(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

class Sentence {
public:
    enum class Kind {
        Prop,
        At,
        And,
        Not,
        QNot,
        Nec,
        Store,
        Imp,
        QImp,
        // "the current state is k"; used by the expansion of until
        Here,
        // sugar, removed by desugar()
        QOr,
        Diamond,
        Until,
    };

    static Sentence prop(std::string name);
    static Sentence at(Term k, Sentence s);
    static Sentence conj(Sentence a, Sentence b);
    static Sentence neg(Sentence s);
    static Sentence qneg(Sentence s);
    static Sentence nec(Action a, Sentence s);
    static Sentence store(std::string var, Sentence s);
    static Sentence imp(Sentence a, Sentence b);
    static Sentence qimp(Sentence a, Sentence b);
    static Sentence here(Term k);
    static Sentence qor(Sentence a, Sentence b);
    static Sentence diamond(Action a, Sentence s);
    static Sentence until(Action a, Sentence a1, Sentence a2);

    [[nodiscard]] Kind kind() const;
    /// Proposition name, or the bound variable of `Store`.
    [[nodiscard]] const std::string& name() const;
    [[nodiscard]] const Term& term() const;
    [[nodiscard]] const Action& action() const;
    /// Single operand of unary forms (At, Not, QNot, Nec, Store, Diamond).
    [[nodiscard]] const Sentence& body() const;
    [[nodiscard]] const Sentence& lhs() const;
    [[nodiscard]] const Sentence& rhs() const;

    friend bool operator==(const Sentence& a, const Sentence& b);

    struct Node;

private:
    explicit Sentence(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct Term::Node {
    Kind kind;
    std::string name;
    Vector literal;
    ScalarTerm scalar;
    std::vector<Term> kids;
};

struct Action::Node {
    Kind kind;
    std::string name;
    std::vector<Action> kids;
};

struct Sentence::Node {
    Kind kind;
    std::string name;
    std::vector<Term> terms;
    std::vector<Action> actions;
    std::vector<Sentence> kids;
};

// ---------------------------------------------------------------- text form

Term parse_term(std::string_view text);
Action parse_action(std::string_view text);
Sentence parse_sentence(std::string_view text);

std::string to_string(const Term& t);
std::string to_string(const Action& a);
std::string to_string(const Sentence& s);
/// Shortest complex literal form used by the printer ("0.5", "1-2i", "3i").
std::string format_complex(Complex c);

// ---------------------------------------------------------------- structure

std::set<std::string> free_idents(const Term& t);
std::set<std::string> free_idents(const Sentence& s);

/// Symbols of U and Q occurring in an action / sentence / term.
std::set<std::string> action_symbols(const Action& a);
std::set<std::string> action_symbols(const Sentence& s);
std::set<std::string> prop_symbols(const Sentence& s);

Term substitute(const Term& t, const std::string& var, const Term& k);
/// Capture-avoiding substitution of `k` for the free occurrences of `var`.
Sentence substitute(const Sentence& s, const std::string& var, const Term& k);

/// Structural equality up to renaming of store-bound variables.
bool alpha_equal(const Sentence& a, const Sentence& b);

/// Removes QOr, Diamond and Until. QImp stays primitive.
Sentence desugar(const Sentence& s);

/// [a^0] s = s,  [a^(n+1)] s = [a ; a^n] s.
Sentence power_box(const Action& a, std::size_t n, const Sentence& s);
Action power_action(const Action& a, std::size_t n);

std::size_t depth(const Sentence& s);

// ---------------------------------------------------------------- fragments

/// The parts of a signature classification depends on.
struct Vocabulary {
    std::set<std::string> closed_props;
    std::set<std::string> measurements;
};

struct Kind {
    bool is_basic = false;
    bool is_closed = false;
    bool is_closed_basic = false;
    bool is_quantum_clause = false;
    bool is_closed_quantum_clause = false;

    friend bool operator==(const Kind&, const Kind&) = default;
};

bool is_unitary_action(const Action& a, const Vocabulary& voc);
bool is_basic(const Sentence& s);
bool is_closed(const Sentence& s, const Vocabulary& voc);
bool is_closed_basic(const Sentence& s, const Vocabulary& voc);
bool is_closed_clause(const Sentence& s, const Vocabulary& voc);
bool is_quantum_clause(const Sentence& s, const Vocabulary& voc);
Kind classify(const Sentence& s, const Vocabulary& voc);

}  // namespace hdql::syntax
