#include <cstdio>
#include <string>

#include "hdql/syntax.hpp"

namespace hdql::syntax {

namespace {

std::string real(double x) {
    if (x == 0.0) return "0";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string scalar(const ScalarTerm& s) {
    if (s.is_named()) return s.name;
    if (s.value.imag() == 0.0) return real(s.value.real());
    return "{" + format_complex(s.value) + "}";
}

void print_term(const Term& t, std::string& out);

void print_factor(const Term& t, std::string& out) {
    if (t.kind() == Term::Kind::Sum) {
        out += '(';
        print_term(t, out);
        out += ')';
    } else {
        print_term(t, out);
    }
}

void print_term(const Term& t, std::string& out) {
    switch (t.kind()) {
        case Term::Kind::Ident: out += t.name(); break;
        case Term::Kind::Origin: out += '0'; break;
        case Term::Kind::Literal: {
            const Vector& v = t.literal_value();
            out += '(';
            for (std::size_t i = 0; i < v.dim(); ++i) {
                if (i > 0) out += ", ";
                out += format_complex(v[i]);
            }
            out += v.dim() == 1 ? ",)" : ")";
            break;
        }
        case Term::Kind::Sum:
            print_term(t.lhs(), out);
            out += " + ";
            print_factor(t.rhs(), out);
            break;
        case Term::Kind::Scale:
            out += scalar(t.scalar());
            out += " * ";
            print_factor(t.arg(), out);
            break;
        case Term::Kind::Apply:
            out += t.name();
            out += '(';
            print_term(t.arg(), out);
            out += ')';
            break;
    }
}

void print_action(const Action& a, std::string& out);

void print_action_wrapped(const Action& a, bool wrap, std::string& out) {
    if (wrap) out += '(';
    print_action(a, out);
    if (wrap) out += ')';
}

void print_action(const Action& a, std::string& out) {
    using K = Action::Kind;
    switch (a.kind()) {
        case K::Symbol: out += a.name(); break;
        case K::Union:
            print_action(a.lhs(), out);
            out += " | ";
            print_action_wrapped(a.rhs(), a.rhs().kind() == K::Union, out);
            break;
        case K::Comp:
            print_action_wrapped(a.lhs(), a.lhs().kind() == K::Comp || a.lhs().kind() == K::Union, out);
            out += " ; ";
            print_action_wrapped(a.rhs(), a.rhs().kind() == K::Union, out);
            break;
        case K::Star:
            print_action_wrapped(a.body(), a.body().kind() == K::Comp || a.body().kind() == K::Union, out);
            out += '*';
            break;
    }
}

bool is_binary(const Sentence& s) {
    using K = Sentence::Kind;
    switch (s.kind()) {
        case K::And:
        case K::Imp:
        case K::QImp:
        case K::QOr: return true;
        default: return false;
    }
}

void print_sentence(const Sentence& s, std::string& out);

void print_operand(const Sentence& s, std::string& out) {
    if (is_binary(s)) {
        out += '(';
        print_sentence(s, out);
        out += ')';
    } else {
        print_sentence(s, out);
    }
}

void print_sentence(const Sentence& s, std::string& out) {
    using K = Sentence::Kind;
    const auto binary = [&](const char* op) {
        print_operand(s.lhs(), out);
        out += op;
        print_operand(s.rhs(), out);
    };
    switch (s.kind()) {
        case K::Prop: out += s.name(); break;
        case K::At:
            out += "@(";
            print_term(s.term(), out);
            out += ") ";
            print_operand(s.body(), out);
            break;
        case K::Here:
            out += "here(";
            print_term(s.term(), out);
            out += ')';
            break;
        case K::And: binary(" /\\ "); break;
        case K::Imp: binary(" => "); break;
        case K::QImp: binary(" ~> "); break;
        case K::QOr: binary(" (+) "); break;
        case K::Not:
            out += '!';
            print_operand(s.body(), out);
            break;
        case K::QNot:
            out += '~';
            print_operand(s.body(), out);
            break;
        case K::Nec:
        case K::Diamond:
            out += s.kind() == K::Nec ? '[' : '<';
            print_action(s.action(), out);
            out += s.kind() == K::Nec ? "] " : "> ";
            print_operand(s.body(), out);
            break;
        case K::Store:
            out += "(store ";
            out += s.name();
            out += " . ";
            print_sentence(s.body(), out);
            out += ')';
            break;
        case K::Until:
            out += "until[";
            print_action(s.action(), out);
            out += "](";
            print_sentence(s.lhs(), out);
            out += ", ";
            print_sentence(s.rhs(), out);
            out += ')';
            break;
    }
}

}  // namespace

std::string format_complex(Complex c) {
    const double re = c.real();
    const double im = c.imag();
    if (im == 0.0) return real(re);
    const std::string imag_part = real(std::abs(im)) + "i";
    if (re == 0.0) return (im < 0 ? "-" : "") + imag_part;
    return real(re) + (im < 0 ? "-" : "+") + imag_part;
}

std::string to_string(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

std::string to_string(const Action& a) {
    std::string out;
    print_action(a, out);
    return out;
}

std::string to_string(const Sentence& s) {
    std::string out;
    print_sentence(s, out);
    return out;
}

}  // namespace hdql::syntax
