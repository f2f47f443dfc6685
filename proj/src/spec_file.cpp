#include "hdql/spec_file.hpp"

#include <cctype>
#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

namespace hdql::spec {

namespace {

std::string join(const std::vector<std::string>& lines) {
    std::string out;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (i) out += '\n';
        out += lines[i];
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool is_ident(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
    }
    return true;
}

// ------------------------------------------------------------ expressions

using Value = std::variant<Complex, Vector, Operator>;

struct Env {
    std::size_t dim = 0;
    const std::map<std::string, Complex>* scalars = nullptr;
    const std::map<std::string, Vector>* vectors = nullptr;
    const std::map<std::string, Operator>* operators = nullptr;
    const std::map<std::string, Value>* locals = nullptr;
};

std::optional<Operator> builtin_gate(const std::string& name) {
    if (name == "H") return hilbert::gates::hadamard();
    if (name == "X") return hilbert::gates::pauli_x();
    if (name == "Y") return hilbert::gates::pauli_y();
    if (name == "Z") return hilbert::gates::pauli_z();
    if (name == "CNOT") return hilbert::gates::cnot();
    if (name.size() > 1 && name[0] == 'I') {
        std::size_t n = 0;
        for (std::size_t i = 1; i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
            n = n * 10 + static_cast<std::size_t>(name[i] - '0');
            if (n > 4096) return std::nullopt;
        }
        if (n == 0) return std::nullopt;
        return Operator::identity(n);
    }
    return std::nullopt;
}

class ExprParser {
public:
    ExprParser(std::string_view text, const Env& env) : s_(text), env_(env) {}

    Value whole() {
        Value v = sum();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

    std::vector<Value> list() {
        std::vector<Value> out;
        skip();
        if (pos_ == s_.size()) return out;
        for (;;) {
            out.push_back(sum());
            skip();
            if (pos_ == s_.size()) return out;
            if (s_[pos_] != ',') fail("expected ',' between list items");
            ++pos_;
        }
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(1, pos_ + 1, msg); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(std::string_view tok) {
        skip();
        if (s_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    bool at_tensor() {
        skip();
        return s_.substr(pos_, 3) == "(x)";
    }

    Value sum() {
        Value v = tensor();
        for (;;) {
            if (eat("+")) {
                v = add(v, tensor(), 1.0);
            } else if (eat("-")) {
                v = add(v, tensor(), -1.0);
            } else {
                return v;
            }
        }
    }

    Value tensor() {
        Value v = product();
        while (at_tensor()) {
            pos_ += 3;
            const std::size_t at = pos_;
            Value w = product();
            if (auto* a = std::get_if<Vector>(&v); a && std::holds_alternative<Vector>(w)) {
                v = hilbert::tensor(*a, std::get<Vector>(w));
            } else if (auto* o = std::get_if<Operator>(&v); o && std::holds_alternative<Operator>(w)) {
                v = hilbert::tensor_op(*o, std::get<Operator>(w));
            } else {
                pos_ = at;
                fail("(x) needs two vectors or two operators");
            }
        }
        return v;
    }

    Value product() {
        Value v = unary();
        for (;;) {
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                v = mul(v, unary());
            } else if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                const std::size_t at = pos_;
                Value d = unary();
                auto* c = std::get_if<Complex>(&d);
                if (!c) {
                    pos_ = at;
                    fail("can only divide by a scalar");
                }
                if (std::abs(*c) == 0.0) {
                    pos_ = at;
                    fail("division by zero");
                }
                v = mul(Complex(1.0) / *c, v);
            } else {
                return v;
            }
        }
    }

    Value unary() {
        if (eat("-")) return mul(Complex(-1.0), unary());
        if (eat("+")) return unary();
        return atom();
    }

    Value atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (c == '|') return ket();
        if (c == '[') return matrix();
        if (c == '(') {
            ++pos_;
            std::vector<Value> items{sum()};
            bool comma = false;
            while (eat(",")) {
                comma = true;
                skip();
                if (pos_ < s_.size() && s_[pos_] == ')') break;
                items.push_back(sum());
            }
            if (!eat(")")) fail("expected ')'");
            if (!comma) return items.front();
            return coordinates(items);
        }
        if (std::isalpha(static_cast<unsigned char>(c))) return named();
        fail("unexpected '" + std::string(1, c) + "'");
    }

    Value coordinates(const std::vector<Value>& items) {
        Eigen::VectorXcd coords(static_cast<Eigen::Index>(items.size()));
        for (std::size_t i = 0; i < items.size(); ++i) {
            auto* z = std::get_if<Complex>(&items[i]);
            if (!z) fail("coordinate list entries must be scalars");
            coords(static_cast<Eigen::Index>(i)) = *z;
        }
        return Vector(coords);
    }

    Value number() {
        const char* begin = s_.data() + pos_;
        char* end = nullptr;
        const double x = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<std::size_t>(end - begin);
        if (pos_ < s_.size() && s_[pos_] == 'i' &&
            (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            return Complex(0.0, x);
        }
        return Complex(x, 0.0);
    }

    Value ket() {
        ++pos_;
        std::string bits;
        while (pos_ < s_.size() && (s_[pos_] == '0' || s_[pos_] == '1')) bits += s_[pos_++];
        if (bits.empty() || pos_ >= s_.size() || s_[pos_] != '>') fail("bad ket, expected |bits>");
        ++pos_;
        return Vector::ket(bits);
    }

    Value matrix() {
        ++pos_;
        std::vector<std::vector<Complex>> rows;
        do {
            if (!eat("[")) fail("expected '[' to open a matrix row");
            std::vector<Complex> row;
            do {
                Value v = sum();
                auto* z = std::get_if<Complex>(&v);
                if (!z) fail("matrix entries must be scalars");
                row.push_back(*z);
            } while (eat(","));
            if (!eat("]")) fail("expected ']' to close a matrix row");
            rows.push_back(std::move(row));
        } while (eat(","));
        if (!eat("]")) fail("expected ']' to close the matrix");
        for (const auto& r : rows) {
            if (r.size() != rows.size()) fail("matrix must be square");
        }
        return Operator::from_rows(rows);
    }

    Value named() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\'')) {
            ++pos_;
        }
        const std::string name(s_.substr(start, pos_ - start));
        if (env_.locals) {
            if (auto it = env_.locals->find(name); it != env_.locals->end()) return it->second;
        }
        if (env_.vectors) {
            if (auto it = env_.vectors->find(name); it != env_.vectors->end()) return it->second;
        }
        if (env_.scalars) {
            if (auto it = env_.scalars->find(name); it != env_.scalars->end()) return it->second;
        }
        if (env_.operators) {
            if (auto it = env_.operators->find(name); it != env_.operators->end()) return it->second;
        }
        if (name == "sqrt" || name == "exp") {
            if (!eat("(")) fail("expected '(' after " + name);
            const std::size_t at = pos_;
            Value v = sum();
            if (!eat(")")) fail("expected ')'");
            auto* z = std::get_if<Complex>(&v);
            if (!z) {
                pos_ = at;
                fail(name + " needs a scalar");
            }
            return name == "sqrt" ? std::sqrt(*z) : std::exp(*z);
        }
        if (name == "i") return Complex(0.0, 1.0);
        if (name == "pi") return Complex(3.14159265358979323846, 0.0);
        if (auto g = builtin_gate(name)) return *g;
        pos_ = start;
        fail("unknown name '" + name + "'");
    }

    Value add(const Value& a, const Value& b, double sign) {
        if (a.index() != b.index()) fail("cannot add values of different kinds");
        if (auto* x = std::get_if<Complex>(&a)) return *x + sign * std::get<Complex>(b);
        if (auto* x = std::get_if<Vector>(&a)) {
            const Vector& y = std::get<Vector>(b);
            if (x->dim() != y.dim()) fail("vector dimensions differ");
            return *x + Complex(sign) * y;
        }
        const Operator& x = std::get<Operator>(a);
        const Operator& y = std::get<Operator>(b);
        if (x.dim() != y.dim()) fail("operator dimensions differ");
        return Operator(x.entries() + sign * y.entries());
    }

    Value mul(const Value& a, const Value& b) {
        if (auto* c = std::get_if<Complex>(&a)) {
            if (auto* d = std::get_if<Complex>(&b)) return *c * *d;
            if (auto* v = std::get_if<Vector>(&b)) return *c * *v;
            return Operator(*c * std::get<Operator>(b).entries());
        }
        if (auto* c = std::get_if<Complex>(&b)) return mul(*c, a);
        if (auto* o = std::get_if<Operator>(&a)) {
            if (auto* p = std::get_if<Operator>(&b)) {
                if (o->dim() != p->dim()) fail("operator dimensions differ");
                return *o * *p;
            }
            const Vector& v = std::get<Vector>(b);
            if (o->dim() != v.dim()) fail("operator and vector dimensions differ");
            return o->apply(v);
        }
        fail("cannot multiply two vectors");
    }

    std::string s_;
    const Env& env_;
    std::size_t pos_ = 0;
};

// ------------------------------------------------------------ files

struct Line {
    std::size_t no;
    std::size_t col;  // 1-based column of `text` in the source line
    std::string text;
};

const std::vector<std::string> kSections = {"SPACE", "SCALARS", "DEFINE", "VECTORS",  "UNITARY",
                                            "MEASURE", "PROPS", "AXIOMS", "GOAL", "VALUATION"};

class Loader {
public:
    explicit Loader(Tolerance tol) : tol_(tol) {}

    SpecFile run(std::string_view text) {
        split(text);
        if (sections_["SPACE"].empty()) {
            problem(1, 1, "missing SPACE section (dimension of the state space)");
            throw SpecError(problems_);
        }
        space();
        if (!problems_.empty()) throw SpecError(problems_);
        for (const auto& l : sections_["SCALARS"]) declaration(l, Kind::Scalar);
        for (const auto& l : sections_["DEFINE"]) define(l);
        for (const auto& l : sections_["VECTORS"]) declaration(l, Kind::Vector);
        for (const auto& l : sections_["UNITARY"]) declaration(l, Kind::Unitary);
        for (const auto& l : sections_["MEASURE"]) declaration(l, Kind::Measure);
        for (const auto& l : sections_["PROPS"]) props(l);
        for (const auto& l : sections_["AXIOMS"]) axiom(l);
        for (const auto& l : sections_["GOAL"]) goal(l);
        for (const auto& l : sections_["VALUATION"]) valuation(l);
        out_.has_valuation = seen_valuation_;
        if (problems_.empty()) {
            try {
                (void)semantics::QuantumModel(out_.sig, out_.valuation);
            } catch (const Error& e) {
                problem(valuation_line_, 1, e.what());
            }
        }
        for (const auto& v : out_.sig.validate()) {
            const auto it = lines_.find(v.symbol);
            problem(it == lines_.end() ? 1 : it->second, 1, describe(v));
        }
        if (!problems_.empty()) throw SpecError(problems_);
        return std::move(out_);
    }

private:
    enum class Kind { Scalar, Vector, Unitary, Measure };

    void problem(std::size_t line, std::size_t col, const std::string& msg) {
        problems_.push_back(std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }

    void split(std::string_view text) {
        std::string current;
        std::size_t no = 0;
        std::size_t start = 0;
        while (start <= text.size()) {
            std::size_t end = text.find('\n', start);
            if (end == std::string_view::npos) end = text.size();
            std::string raw(text.substr(start, end - start));
            start = end + 1;
            ++no;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            if (!raw.empty() && raw.back() == '\r') raw.pop_back();
            std::size_t b = 0;
            while (b < raw.size() && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
            std::string body = trim(raw);
            if (body.empty()) continue;
            std::size_t kw_end = 0;
            while (kw_end < body.size() && std::isalpha(static_cast<unsigned char>(body[kw_end]))) ++kw_end;
            const std::string word = body.substr(0, kw_end);
            if (std::find(kSections.begin(), kSections.end(), word) != kSections.end() &&
                (kw_end == body.size() || std::isspace(static_cast<unsigned char>(body[kw_end])))) {
                current = word;
                std::size_t rest = kw_end;
                while (rest < body.size() && std::isspace(static_cast<unsigned char>(body[rest]))) ++rest;
                if (word == "GOAL") {
                    if (rest < body.size()) sections_[current].push_back({no, b + 1, body});
                } else if (rest < body.size()) {
                    sections_[current].push_back({no, b + rest + 1, body.substr(rest)});
                }
                if (word == "VALUATION") {
                    seen_valuation_ = true;
                    valuation_line_ = no;
                }
                if (word == "SPACE") space_header_ = no;
                continue;
            }
            if (current.empty()) {
                problem(no, b + 1, "content before any section header");
                continue;
            }
            sections_[current].push_back({no, b + 1, body});
        }
        if (space_header_ && sections_["SPACE"].empty()) {
            sections_["SPACE"].push_back({space_header_, 1, ""});
        }
    }

    void space() {
        const auto& ls = sections_["SPACE"];
        const Line& l = ls.front();
        if (ls.size() > 1) problem(ls[1].no, ls[1].col, "SPACE takes a single dimension");
        std::size_t n = 0;
        try {
            std::size_t used = 0;
            const long long v = std::stoll(l.text, &used);
            if (used != l.text.size() || v < 1) throw std::invalid_argument("dim");
            n = static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            problem(l.no, l.col, "SPACE needs a positive integer dimension");
            return;
        }
        out_.sig = Signature(n, tol_);
    }

    Env env() const {
        return Env{out_.sig.dim(), &out_.sig.scalars(), &out_.sig.vectors(), &out_.sig.unitaries(), &locals_};
    }

    bool name_value(const Line& l, std::string& name, std::string& rhs, std::size_t& rhs_col) {
        const auto eq = l.text.find('=');
        if (eq == std::string::npos) {
            problem(l.no, l.col, "expected 'name = value'");
            return false;
        }
        name = trim(l.text.substr(0, eq));
        if (!is_ident(name)) {
            problem(l.no, l.col, "bad name '" + name + "'");
            return false;
        }
        rhs = l.text.substr(eq + 1);
        rhs_col = l.col + eq + 1;
        return true;
    }

    void relocate(const ParseError& e, std::size_t line, std::size_t col) {
        problem(line, col + e.column() - 1, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }

    std::vector<Vector> vector_list(const std::string& rhs, const Line& l, std::size_t col) {
        std::string body = trim(rhs);
        std::size_t shift = col + rhs.find_first_not_of(" \t");
        if (body.rfind("span(", 0) == 0 && !body.empty() && body.back() == ')') {
            body = body.substr(5, body.size() - 6);
            shift += 5;
        }
        const Env e = env();
        ExprParser p(body, e);
        std::vector<Vector> out;
        for (const auto& v : p.list()) {
            const auto* x = std::get_if<Vector>(&v);
            if (!x) {
                problem(l.no, shift, "expected vectors");
                return {};
            }
            if (x->dim() != out_.sig.dim()) {
                problem(l.no, shift, DimensionMismatch(out_.sig.dim(), x->dim()).what());
                return {};
            }
            out.push_back(*x);
        }
        return out;
    }

    void declaration(const Line& l, Kind kind) {
        std::string name, rhs;
        std::size_t col = 0;
        if (!name_value(l, name, rhs, col)) return;
        try {
            if (kind == Kind::Measure) {
                auto basis = vector_list(rhs, l, col);
                if (basis.empty()) {
                    problem(l.no, col, "measurement " + name + " needs at least one basis vector");
                    return;
                }
                out_.sig.add_measurement(name, std::move(basis));
            } else {
                const Env e = env();
                Value v = ExprParser(rhs, e).whole();
                if (kind == Kind::Scalar) {
                    auto* c = std::get_if<Complex>(&v);
                    if (!c) return problem(l.no, col, "scalar " + name + " must be a number");
                    out_.sig.add_scalar(name, *c);
                } else if (kind == Kind::Vector) {
                    auto* x = std::get_if<Vector>(&v);
                    if (!x) return problem(l.no, col, "vector " + name + " must be a vector expression");
                    if (x->dim() != out_.sig.dim()) {
                        return problem(l.no, col, name + ": " + DimensionMismatch(out_.sig.dim(), x->dim()).what());
                    }
                    out_.sig.add_vector(name, *x);
                } else {
                    auto* o = std::get_if<Operator>(&v);
                    if (!o) return problem(l.no, col, "unitary " + name + " must be a matrix expression");
                    if (o->dim() != out_.sig.dim()) {
                        return problem(l.no, col, name + ": " + DimensionMismatch(out_.sig.dim(), o->dim()).what());
                    }
                    out_.sig.add_unitary(name, *o);
                }
            }
            lines_[name] = l.no;
        } catch (const ParseError& e) {
            relocate(e, l.no, col);
        } catch (const Error& e) {
            problem(l.no, l.col, e.what());
        }
    }

    // Helper values of any shape, visible to later expressions only.
    void define(const Line& l) {
        std::string name, rhs;
        std::size_t col = 0;
        if (!name_value(l, name, rhs, col)) return;
        if (locals_.count(name)) return problem(l.no, l.col, "duplicate definition " + name);
        try {
            const Env e = env();
            locals_[name] = ExprParser(rhs, e).whole();
        } catch (const ParseError& e) {
            relocate(e, l.no, col);
        }
    }

    void props(const Line& l) {
        std::stringstream ss(l.text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::istringstream words(item);
            std::string name, mark, extra;
            words >> name >> mark >> extra;
            if (name.empty()) continue;
            if (!is_ident(name) || (!mark.empty() && mark != "closed") || !extra.empty()) {
                problem(l.no, l.col, "expected 'name' or 'name closed', got '" + trim(item) + "'");
                continue;
            }
            try {
                out_.sig.add_prop(name, mark == "closed");
                lines_[name] = l.no;
            } catch (const Error& e) {
                problem(l.no, l.col, e.what());
            }
        }
    }

    // Unknown symbols are reported here rather than at proof time.
    void check_symbols(const syntax::Sentence& s, const Line& l) {
        for (const auto& p : syntax::prop_symbols(s)) {
            if (!out_.sig.props().count(p)) problem(l.no, l.col, "undeclared proposition " + p);
        }
        for (const auto& f : syntax::action_symbols(s)) {
            if (!out_.sig.is_unitary(f) && !out_.sig.is_measurement(f)) {
                problem(l.no, l.col, "undeclared action symbol " + f);
            }
        }
        for (const auto& x : syntax::free_idents(s)) {
            if (!out_.sig.vectors().count(x)) problem(l.no, l.col, "unknown vector name " + x);
        }
    }

    void check_term(const syntax::Term& t, const Line& l, std::size_t col) {
        try {
            (void)eval_term(out_.sig, t);
        } catch (const Error& e) {
            problem(l.no, col, e.what());
        }
    }

    void axiom(const Line& l) {
        try {
            const auto s = syntax::parse_sentence(l.text);
            check_symbols(s, l);
            out_.axioms.push_back(s);
        } catch (const ParseError& e) {
            relocate(e, l.no, l.col);
        }
    }

    void goal(const Line& l) {
        std::string text = l.text;
        std::size_t col = l.col;
        if (text.rfind("GOAL", 0) == 0) {
            text = text.substr(4);
            col += 4;
        }
        const std::size_t lead = text.find_first_not_of(" \t");
        if (lead == std::string::npos || text.compare(lead, 3, "AT ") != 0) {
            problem(l.no, l.col, "goal must read 'AT <term> PROVE <sentence>'");
            return;
        }
        const std::size_t prove = text.find(" PROVE ");
        if (prove == std::string::npos) {
            problem(l.no, l.col, "goal is missing 'PROVE'");
            return;
        }
        const std::string term_text = text.substr(lead + 3, prove - lead - 3);
        const std::string sentence_text = text.substr(prove + 7);
        const std::size_t term_col = col + lead + 3;
        const std::size_t sentence_col = col + prove + 7;
        Goal g{syntax::Term::origin(), syntax::Sentence::prop("_"), l.no};
        try {
            g.at = syntax::parse_term(term_text);
        } catch (const ParseError& e) {
            relocate(e, l.no, term_col);
            return;
        }
        try {
            g.sentence = syntax::parse_sentence(sentence_text);
        } catch (const ParseError& e) {
            relocate(e, l.no, sentence_col);
            return;
        }
        check_term(g.at, l, term_col);
        check_symbols(g.sentence, l);
        out_.goals.push_back(std::move(g));
    }

    void valuation(const Line& l) {
        std::string name, rhs;
        std::size_t col = 0;
        if (!name_value(l, name, rhs, col)) return;
        if (!out_.sig.props().count(name)) {
            problem(l.no, l.col, "valuation for undeclared proposition " + name);
            return;
        }
        const bool as_span = trim(rhs).rfind("span(", 0) == 0;
        if (as_span && !out_.sig.is_closed(name)) {
            problem(l.no, col, "span(...) needs a closed proposition, " + name + " is not closed");
            return;
        }
        try {
            auto states = vector_list(rhs, l, col);
            if (out_.sig.is_closed(name)) {
                out_.valuation[name] =
                    semantics::Region::span(hilbert::orthonormalize(out_.sig.dim(), states, out_.sig.tolerance()));
            } else {
                out_.valuation[name] = semantics::Region::finite(std::move(states));
            }
        } catch (const ParseError& e) {
            relocate(e, l.no, col);
        }
    }

    Tolerance tol_;
    SpecFile out_;
    std::map<std::string, std::vector<Line>> sections_;
    std::map<std::string, std::size_t> lines_;
    std::map<std::string, Value> locals_;
    std::vector<std::string> problems_;
    bool seen_valuation_ = false;
    std::size_t valuation_line_ = 1;
    std::size_t space_header_ = 0;
};

Value eval_expression(std::string_view text, std::size_t dim) {
    Env e{dim, nullptr, nullptr, nullptr, nullptr};
    return ExprParser(text, e).whole();
}

}  // namespace

SpecError::SpecError(std::vector<std::string> problems) : Error(join(problems)), problems_(std::move(problems)) {}

SpecFile parse_spec(std::string_view text, Tolerance tol) { return Loader(tol).run(text); }

SpecFile load_spec(const std::string& path, Tolerance tol) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_spec(ss.str(), tol);
    } catch (const SpecError& e) {
        std::vector<std::string> located;
        for (const auto& p : e.problems()) located.push_back(path + ":" + p);
        throw SpecError(std::move(located));
    }
}

Vector parse_vector(std::string_view text, std::size_t dim) {
    Value v = eval_expression(text, dim);
    auto* x = std::get_if<Vector>(&v);
    if (!x) throw ParseError(1, 1, "not a vector expression");
    if (x->dim() != dim) throw DimensionMismatch(dim, x->dim());
    return *x;
}

Operator parse_operator(std::string_view text, std::size_t dim) {
    Value v = eval_expression(text, dim);
    auto* o = std::get_if<Operator>(&v);
    if (!o) throw ParseError(1, 1, "not a matrix expression");
    if (o->dim() != dim) throw DimensionMismatch(dim, o->dim());
    return *o;
}

semantics::QuantumModel model_of(const SpecFile& spec) { return semantics::QuantumModel(spec.sig, spec.valuation); }

}  // namespace hdql::spec
