#include "hdql/trace_io.hpp"

#include <json.hpp>

#include <sstream>

namespace hdql::trace {

using calculus::Certificate;
using calculus::Gamma;
using calculus::ProofTree;
using calculus::RuleId;
using syntax::Sentence;
using syntax::Term;

namespace {

struct Raw {
    RuleId rule = RuleId::Monotonicity;
    Term term = Term::origin();
    Sentence goal = Sentence::prop("_");
    Certificate cert;
    std::vector<Raw> kids;
    std::size_t line = 0;
};

std::string keep_indices(const std::vector<Sentence>& parent, const std::vector<Sentence>& child) {
    std::vector<std::size_t> idx;
    for (const auto& s : child) {
        std::size_t i = 0;
        while (i < parent.size() && !syntax::alpha_equal(parent[i], s)) ++i;
        if (i == parent.size()) throw Error("Unions premise context is not a subset: " + syntax::to_string(s));
        idx.push_back(i);
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(idx[i]);
    }
    return out;
}

// Certificate as written: the kept indices of Unions are derived from the tree.
Certificate written_certificate(const ProofTree& t) {
    Certificate c = t.certificate;
    if (t.rule == RuleId::Unions && !t.premises.empty()) {
        c["keep"] = keep_indices(*t.conclusion.gamma, *t.premises.front().conclusion.gamma);
    }
    return c;
}

Gamma child_gamma(const Raw& node, const Gamma& g, std::set<std::string>& bound) {
    switch (node.rule) {
        case RuleId::Imp:
            if (node.goal.kind() != Sentence::Kind::Imp) return g;
            return calculus::gamma_with(g, Sentence::at(node.term, node.goal.lhs()));
        case RuleId::Impc: {
            auto it = node.cert.find("var");
            if (it == node.cert.end() || node.goal.kind() != Sentence::Kind::QImp) return g;
            bound.insert(it->second);
            return calculus::gamma_with(g, Sentence::at(Term::ident(it->second), node.goal.lhs()));
        }
        case RuleId::Unions: {
            auto it = node.cert.find("keep");
            if (it == node.cert.end()) throw ParseError(node.line, 1, "Unions node lacks 'keep'");
            std::vector<Sentence> kept;
            std::stringstream ss(it->second);
            std::string item;
            while (std::getline(ss, item, ',')) {
                if (item.empty()) continue;
                std::size_t i = 0;
                try {
                    i = std::stoul(item);
                } catch (const std::exception&) {
                    throw ParseError(node.line, 1, "bad index in 'keep'");
                }
                if (i >= g->size()) throw ParseError(node.line, 1, "index out of range in 'keep'");
                kept.push_back((*g)[i]);
            }
            return calculus::make_gamma(std::move(kept));
        }
        case RuleId::Translation: {
            auto it = node.cert.find("map");
            if (it == node.cert.end()) throw ParseError(node.line, 1, "Translation node lacks 'map'");
            const Morphism back = calculus::parse_morphism(it->second).inverse();
            std::vector<Sentence> out;
            for (const auto& s : *g) out.push_back(apply_morphism(back, s, bound));
            return calculus::make_gamma(std::move(out));
        }
        default: return g;
    }
}

ProofTree build(const Raw& raw, const Gamma& g, std::set<std::string> bound) {
    ProofTree t;
    t.conclusion = {g, raw.term, raw.goal};
    t.rule = raw.rule;
    t.certificate = raw.cert;
    if (raw.kids.empty()) return t;
    const Gamma next = child_gamma(raw, g, bound);
    for (const auto& k : raw.kids) t.premises.push_back(build(k, next, bound));
    return t;
}

RuleId rule_at(std::string_view name, std::size_t line) {
    auto r = calculus::rule_from_name(name);
    if (!r) throw ParseError(line, 1, "unknown rule '" + std::string(name) + "'");
    return *r;
}

template <class F>
auto located(std::size_t line, std::size_t col, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError(line, col + e.column() - 1, std::string(e.what()).substr(std::string(e.what()).find(": ") + 2));
    }
}

// ------------------------------------------------------------ text

void write_node(std::ostringstream& os, const ProofTree& t, std::size_t depth) {
    os << std::string(2 * depth, ' ') << calculus::rule_name(t.rule) << ' ' << syntax::to_string(t.conclusion.k)
       << " |- " << syntax::to_string(t.conclusion.goal);
    const Certificate c = written_certificate(t);
    if (!c.empty()) {
        os << " #[";
        bool first = true;
        for (const auto& [k, v] : c) {
            if (!first) os << "; ";
            first = false;
            os << k << '=' << v;
        }
        os << ']';
    }
    os << '\n';
    for (const auto& p : t.premises) write_node(os, p, depth + 1);
}

Raw read_node_line(const std::string& body, std::size_t line, std::size_t indent) {
    Raw r;
    r.line = line;
    const std::size_t sp = body.find(' ');
    if (sp == std::string::npos) throw ParseError(line, indent + 1, "expected 'Rule term |- sentence'");
    r.rule = rule_at(body.substr(0, sp), line);
    const std::size_t turnstile = body.find(" |- ", sp);
    if (turnstile == std::string::npos) throw ParseError(line, indent + sp + 1, "missing '|-'");
    std::string goal_text = body.substr(turnstile + 4);
    const std::size_t goal_col = indent + turnstile + 5;
    if (auto h = goal_text.rfind(" #["); h != std::string::npos) {
        if (goal_text.back() != ']') throw ParseError(line, goal_col + h, "unterminated certificate");
        const std::string cert = goal_text.substr(h + 3, goal_text.size() - h - 4);
        goal_text.erase(h);
        std::size_t start = 0;
        while (start < cert.size()) {
            std::size_t end = cert.find("; ", start);
            if (end == std::string::npos) end = cert.size();
            const std::string item = cert.substr(start, end - start);
            const std::size_t eq = item.find('=');
            if (eq == std::string::npos) throw ParseError(line, goal_col + h, "certificate entry without '='");
            r.cert[item.substr(0, eq)] = item.substr(eq + 1);
            start = end + 2;
        }
    }
    const std::string term_text = body.substr(sp + 1, turnstile - sp - 1);
    r.term = located(line, indent + sp + 2, [&] { return syntax::parse_term(term_text); });
    r.goal = located(line, goal_col, [&] { return syntax::parse_sentence(goal_text); });
    return r;
}

// ------------------------------------------------------------ json

nlohmann::json node_json(const ProofTree& t) {
    nlohmann::json j;
    j["rule"] = std::string(calculus::rule_name(t.rule));
    j["term"] = syntax::to_string(t.conclusion.k);
    j["goal"] = syntax::to_string(t.conclusion.goal);
    j["certificate"] = nlohmann::json::object();
    for (const auto& [k, v] : written_certificate(t)) j["certificate"][k] = v;
    j["premises"] = nlohmann::json::array();
    for (const auto& p : t.premises) j["premises"].push_back(node_json(p));
    return j;
}

Raw node_from_json(const nlohmann::json& j) {
    Raw r;
    r.rule = rule_at(j.at("rule").get<std::string>(), 0);
    r.term = syntax::parse_term(j.at("term").get<std::string>());
    r.goal = syntax::parse_sentence(j.at("goal").get<std::string>());
    if (j.contains("certificate")) {
        for (const auto& [k, v] : j.at("certificate").items()) r.cert[k] = v.get<std::string>();
    }
    if (j.contains("premises")) {
        for (const auto& p : j.at("premises")) r.kids.push_back(node_from_json(p));
    }
    return r;
}

}  // namespace

std::string to_text(const ProofTree& tree) {
    std::ostringstream os;
    os << "hdql-proof 1\n";
    const auto& gamma = *tree.conclusion.gamma;
    os << "gamma " << gamma.size() << '\n';
    for (const auto& s : gamma) os << "  " << syntax::to_string(s) << '\n';
    os << "tree\n";
    write_node(os, tree, 0);
    return os.str();
}

ProofTree from_text(std::string_view text) {
    std::vector<std::string> lines;
    {
        std::string s(text);
        std::stringstream ss(s);
        std::string l;
        while (std::getline(ss, l)) {
            if (!l.empty() && l.back() == '\r') l.pop_back();
            lines.push_back(l);
        }
    }
    std::size_t i = 0;
    const auto next_line = [&]() -> const std::string& {
        while (i < lines.size() && lines[i].find_first_not_of(' ') == std::string::npos) ++i;
        if (i >= lines.size()) throw ParseError(i + 1, 1, "unexpected end of trace");
        return lines[i++];
    };
    if (next_line() != "hdql-proof 1") throw ParseError(i, 1, "expected header 'hdql-proof 1'");
    const std::string& gl = next_line();
    if (gl.rfind("gamma ", 0) != 0) throw ParseError(i, 1, "expected 'gamma <count>'");
    std::size_t count = 0;
    try {
        count = std::stoul(gl.substr(6));
    } catch (const std::exception&) {
        throw ParseError(i, 7, "bad gamma count");
    }
    std::vector<Sentence> gamma;
    for (std::size_t n = 0; n < count; ++n) {
        const std::string& l = next_line();
        const std::size_t b = l.find_first_not_of(' ');
        const std::size_t no = i;
        gamma.push_back(located(no, b + 1, [&] { return syntax::parse_sentence(l.substr(b)); }));
    }
    if (next_line() != "tree") throw ParseError(i, 1, "expected 'tree'");

    // (depth, node) stack
    std::vector<std::pair<std::size_t, Raw>> stack;
    std::optional<Raw> root;
    const auto pop_into_parent = [&] {
        Raw done = std::move(stack.back().second);
        stack.pop_back();
        if (stack.empty()) {
            root = std::move(done);
        } else {
            stack.back().second.kids.push_back(std::move(done));
        }
    };
    for (; i < lines.size(); ++i) {
        const std::string& l = lines[i];
        const std::size_t b = l.find_first_not_of(' ');
        if (b == std::string::npos) continue;
        if (b % 2 != 0) throw ParseError(i + 1, 1, "indentation must be a multiple of two spaces");
        const std::size_t depth = b / 2;
        if (root) throw ParseError(i + 1, 1, "more than one root node");
        if (stack.empty() && depth != 0) throw ParseError(i + 1, 1, "root node must not be indented");
        while (!stack.empty() && stack.back().first >= depth) pop_into_parent();
        if (root) throw ParseError(i + 1, 1, "more than one root node");
        if (!stack.empty() && depth != stack.back().first + 1) throw ParseError(i + 1, 1, "indentation skips a level");
        stack.emplace_back(depth, read_node_line(l.substr(b), i + 1, b));
    }
    while (!stack.empty()) pop_into_parent();
    if (!root) throw ParseError(lines.size(), 1, "trace has no tree");
    return build(*root, calculus::make_gamma(std::move(gamma)), {});
}

std::string to_json(const ProofTree& tree) {
    nlohmann::json j;
    j["format"] = "hdql-proof";
    j["version"] = 1;
    j["gamma"] = nlohmann::json::array();
    for (const auto& s : *tree.conclusion.gamma) j["gamma"].push_back(syntax::to_string(s));
    j["tree"] = node_json(tree);
    return j.dump(2) + "\n";
}

ProofTree from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(1, e.byte, "bad json");
    }
    try {
        std::vector<Sentence> gamma;
        for (const auto& s : j.at("gamma")) gamma.push_back(syntax::parse_sentence(s.get<std::string>()));
        return build(node_from_json(j.at("tree")), calculus::make_gamma(std::move(gamma)), {});
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(1, 1, std::string("malformed trace: ") + e.what());
    }
}

ProofTree parse(std::string_view text) {
    const std::size_t b = text.find_first_not_of(" \t\r\n");
    if (b != std::string_view::npos && text[b] == '{') return from_json(text);
    return from_text(text);
}

}  // namespace hdql::trace
