#include <cctype>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "hdql/syntax.hpp"

namespace hdql::syntax {

namespace {

enum class Tok {
    Ident,
    Number,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Semi,
    Bar,
    Star,
    Plus,
    Minus,
    And,     // /\  .
    Imp,     // =>
    QImp,    // ~>
    QOr,     // (+)
    Bang,
    Tilde,
    Lt,
    Gt,
    At,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    double number = 0.0;
    bool imaginary = false;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                t.kind = Tok::End;
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t end = pos_ + 1;
                while (end < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[end])) ||
                                             src_[end] == '_' || src_[end] == '\'')) {
                    ++end;
                }
                t.kind = Tok::Ident;
                t.text = std::string(src_.substr(pos_, end - pos_));
                advance(end - pos_);
            } else if (std::isdigit(static_cast<unsigned char>(c)) ||
                       (c == '.' && pos_ + 1 < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                lex_number(t);
            } else if (starts_with("/\\")) {
                t.kind = Tok::And;
                advance(2);
            } else if (starts_with("=>")) {
                t.kind = Tok::Imp;
                advance(2);
            } else if (starts_with("~>")) {
                t.kind = Tok::QImp;
                advance(2);
            } else if (starts_with("(+)")) {
                t.kind = Tok::QOr;
                advance(3);
            } else {
                switch (c) {
                    case '(': t.kind = Tok::LParen; break;
                    case ')': t.kind = Tok::RParen; break;
                    case '[': t.kind = Tok::LBracket; break;
                    case ']': t.kind = Tok::RBracket; break;
                    case '{': t.kind = Tok::LBrace; break;
                    case '}': t.kind = Tok::RBrace; break;
                    case ',': t.kind = Tok::Comma; break;
                    case '.': t.kind = Tok::Dot; break;
                    case ';': t.kind = Tok::Semi; break;
                    case '|': t.kind = Tok::Bar; break;
                    case '*': t.kind = Tok::Star; break;
                    case '+': t.kind = Tok::Plus; break;
                    case '-': t.kind = Tok::Minus; break;
                    case '!': t.kind = Tok::Bang; break;
                    case '~': t.kind = Tok::Tilde; break;
                    case '<': t.kind = Tok::Lt; break;
                    case '>': t.kind = Tok::Gt; break;
                    case '@': t.kind = Tok::At; break;
                    default: throw ParseError(line_, col_, std::string("unexpected character '") + c + "'");
                }
                t.text = std::string(1, c);
                advance(1);
            }
            out.push_back(std::move(t));
        }
    }

private:
    bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

    void advance(std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance(1);
    }

    void lex_number(Token& t) {
        std::size_t end = pos_;
        const auto digits = [&] {
            while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        };
        digits();
        if (end < src_.size() && src_[end] == '.') {
            ++end;
            digits();
        }
        if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
            std::size_t e = end + 1;
            if (e < src_.size() && (src_[e] == '+' || src_[e] == '-')) ++e;
            if (e < src_.size() && std::isdigit(static_cast<unsigned char>(src_[e]))) {
                end = e;
                digits();
            }
        }
        t.kind = Tok::Number;
        t.text = std::string(src_.substr(pos_, end - pos_));
        t.number = std::strtod(t.text.c_str(), nullptr);
        if (end < src_.size() && src_[end] == 'i' &&
            !(end + 1 < src_.size() &&
              (std::isalnum(static_cast<unsigned char>(src_[end + 1])) || src_[end + 1] == '_'))) {
            t.imaginary = true;
            ++end;
        }
        advance(end - pos_);
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

bool is_keyword(const std::string& s) { return s == "store" || s == "here" || s == "until"; }

class Parser {
public:
    explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

    Term whole_term() {
        Term t = term();
        expect(Tok::End, "end of input");
        return t;
    }

    Action whole_action() {
        Action a = action();
        expect(Tok::End, "end of input");
        return a;
    }

    Sentence whole_sentence() {
        Sentence s = sentence();
        expect(Tok::End, "end of input");
        return s;
    }

private:
    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& take() {
        const Token& t = toks_[pos_];
        if (pos_ + 1 < toks_.size()) ++pos_;
        return t;
    }
    bool accept(Tok k) {
        if (!at(k)) return false;
        take();
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = peek();
        const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw ParseError(t.line, t.column, "expected " + what + ", found " + found);
    }
    const Token& expect(Tok k, const std::string& what) {
        if (!at(k)) fail(what);
        return take();
    }
    std::string identifier(const std::string& what) {
        if (!at(Tok::Ident) || is_keyword(peek().text)) fail(what);
        return take().text;
    }

    // ------------------------------------------------------------ scalars

    // real | imag | real (+|-) imag, with optional leading minus.
    Complex complex_literal() {
        const double sign = accept(Tok::Minus) ? -1.0 : 1.0;
        const Token& first = expect(Tok::Number, "number");
        if (first.imaginary) return {0.0, sign * first.number};
        const double re = sign * first.number;
        if ((at(Tok::Plus) || at(Tok::Minus)) && peek(1).kind == Tok::Number && peek(1).imaginary) {
            const double s = take().kind == Tok::Plus ? 1.0 : -1.0;
            return {re, s * take().number};
        }
        return {re, 0.0};
    }

    // ------------------------------------------------------------ terms

    Term term() {
        Term t = product();
        while (accept(Tok::Plus)) t = Term::sum(t, product());
        return t;
    }

    Term product() {
        if (at(Tok::Ident) && peek(1).kind == Tok::Star) {
            std::string name = take().text;
            take();
            return Term::scale(ScalarTerm::named(std::move(name)), product());
        }
        if (at(Tok::LBrace)) {
            take();
            const Complex c = complex_literal();
            expect(Tok::RBrace, "'}'");
            expect(Tok::Star, "'*'");
            return Term::scale(ScalarTerm::literal(c), product());
        }
        if (at(Tok::Minus) || at(Tok::Number)) {
            const bool zero = at(Tok::Number) && !peek().imaginary && peek().number == 0.0 &&
                              peek(1).kind != Tok::Star;
            if (zero) {
                take();
                return Term::origin();
            }
            const Complex c = complex_literal();
            expect(Tok::Star, "'*' after scalar");
            return Term::scale(ScalarTerm::literal(c), product());
        }
        return atom();
    }

    Term atom() {
        if (at(Tok::LParen)) {
            const std::size_t save = pos_;
            if (auto lit = try_coordinates()) return *lit;
            pos_ = save;
            take();
            Term t = term();
            expect(Tok::RParen, "')'");
            return t;
        }
        std::string name = identifier("term");
        if (accept(Tok::LParen)) {
            Term arg = term();
            expect(Tok::RParen, "')'");
            return Term::apply(std::move(name), std::move(arg));
        }
        return Term::ident(std::move(name));
    }

    std::optional<Term> try_coordinates() {
        take();  // '('
        std::vector<Complex> cs;
        if (!(at(Tok::Minus) || at(Tok::Number))) return std::nullopt;
        if (at(Tok::Number) && peek(1).kind == Tok::Star) return std::nullopt;
        cs.push_back(complex_literal());
        if (!at(Tok::Comma)) return std::nullopt;
        while (accept(Tok::Comma)) {
            if (at(Tok::RParen)) break;
            cs.push_back(complex_literal());
        }
        expect(Tok::RParen, "')' closing the coordinate list");
        Eigen::VectorXcd v(static_cast<Eigen::Index>(cs.size()));
        for (std::size_t i = 0; i < cs.size(); ++i) v(static_cast<Eigen::Index>(i)) = cs[i];
        return Term::literal(Vector(std::move(v)));
    }

    // ------------------------------------------------------------ actions

    Action action() {
        Action a = sequence();
        while (accept(Tok::Bar)) a = Action::choice(a, sequence());
        return a;
    }

    Action sequence() {
        Action a = postfix();
        if (accept(Tok::Semi)) return Action::comp(a, sequence());
        return a;
    }

    Action postfix() {
        Action a = action_atom();
        while (accept(Tok::Star)) a = Action::star(a);
        return a;
    }

    Action action_atom() {
        if (accept(Tok::LParen)) {
            Action a = action();
            expect(Tok::RParen, "')'");
            return a;
        }
        return Action::symbol(identifier("action symbol"));
    }

    // ------------------------------------------------------------ sentences

    Sentence sentence() {
        Sentence lhs = disjunction();
        if (accept(Tok::Imp)) return Sentence::imp(lhs, sentence());
        if (accept(Tok::QImp)) return Sentence::qimp(lhs, sentence());
        return lhs;
    }

    Sentence disjunction() {
        Sentence s = conjunction();
        while (accept(Tok::QOr)) s = Sentence::qor(s, conjunction());
        return s;
    }

    Sentence conjunction() {
        Sentence s = unary();
        while (accept(Tok::And)) s = Sentence::conj(s, unary());
        return s;
    }

    Sentence unary() {
        if (accept(Tok::Bang)) return Sentence::neg(unary());
        if (accept(Tok::Tilde)) return Sentence::qneg(unary());
        if (accept(Tok::LBracket)) {
            Action a = action();
            expect(Tok::RBracket, "']'");
            return Sentence::nec(a, unary());
        }
        if (accept(Tok::Lt)) {
            Action a = action();
            expect(Tok::Gt, "'>'");
            return Sentence::diamond(a, unary());
        }
        if (accept(Tok::At)) {
            Term k = [&] {
                if (accept(Tok::LParen)) {
                    Term t = term();
                    expect(Tok::RParen, "')'");
                    return t;
                }
                return Term::ident(identifier("term after '@'"));
            }();
            return Sentence::at(k, unary());
        }
        if (at(Tok::Ident) && peek().text == "store") {
            take();
            std::string var = identifier("variable after 'store'");
            expect(Tok::Dot, "'.'");
            return Sentence::store(std::move(var), sentence());
        }
        return primary();
    }

    Sentence primary() {
        if (at(Tok::Ident) && peek().text == "here") {
            take();
            expect(Tok::LParen, "'('");
            Term k = term();
            expect(Tok::RParen, "')'");
            return Sentence::here(k);
        }
        if (at(Tok::Ident) && peek().text == "until") {
            take();
            expect(Tok::LBracket, "'['");
            Action a = action();
            expect(Tok::RBracket, "']'");
            expect(Tok::LParen, "'('");
            Sentence s1 = sentence();
            expect(Tok::Comma, "','");
            Sentence s2 = sentence();
            expect(Tok::RParen, "')'");
            return Sentence::until(a, s1, s2);
        }
        if (accept(Tok::LParen)) {
            Sentence s = sentence();
            expect(Tok::RParen, "')'");
            return s;
        }
        return Sentence::prop(identifier("sentence"));
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text) { return Parser(text).whole_term(); }
Action parse_action(std::string_view text) { return Parser(text).whole_action(); }
Sentence parse_sentence(std::string_view text) { return Parser(text).whole_sentence(); }

}  // namespace hdql::syntax
