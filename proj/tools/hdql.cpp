#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "hdql/initial_model.hpp"
#include "hdql/spec_file.hpp"
#include "hdql/trace_io.hpp"

using namespace hdql;

namespace {

enum Exit : int {
    kProved = 0,
    kFailed = 1,
    kUnknown = 2,
    kUsage = 64,
    kData = 65,
    kIo = 66,
    kInternal = 70,
};

struct Flags {
    double tolerance = hilbert::kDefaultTolerance;
    std::size_t star_bound = 64;
    std::size_t depth = 6;
    std::size_t budget = 1'000'000;
};

calculus::ProverOptions prover_options(const Flags& f) {
    calculus::ProverOptions o;
    o.node_budget = f.budget;
    o.star.max_iterations = f.star_bound;
    return o;
}

std::string vector_text(const Vector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.dim(); ++i) {
        if (i) out += ", ";
        out += syntax::format_complex(v[i]);
    }
    return out + (v.dim() == 1 ? ",)" : ")");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw spec::IoError("cannot write " + path);
    out << content;
    if (!out) throw spec::IoError("cannot write " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spec::IoError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run_prove(const Flags& flags, const std::string& path, int only, const std::string& trace_path,
              const std::string& format) {
    const spec::SpecFile sf = spec::load_spec(path, Tolerance(flags.tolerance));
    if (sf.goals.empty()) {
        std::cerr << path << ": no GOAL lines\n";
        return kData;
    }
    bool failed = false, unknown = false;
    const auto opts = prover_options(flags);
    const bool single = only > 0 || sf.goals.size() == 1;
    for (std::size_t i = 0; i < sf.goals.size(); ++i) {
        if (only > 0 && static_cast<std::size_t>(only) != i + 1) continue;
        const auto& g = sf.goals[i];
        const auto result = calculus::prove(sf.sig, sf.axioms, g.at, g.sentence, opts);
        std::cerr << "goal " << i + 1 << " (line " << g.line << "): " << calculus::outcome_name(result.outcome) << ": "
                  << result.report << '\n';
        if (result.outcome == calculus::Outcome::Failed) failed = true;
        if (result.outcome == calculus::Outcome::Unknown) unknown = true;
        if (!result.proof) continue;
        // the kernel sees the tree once more, as it will be read back
        const std::string text = format == "json" ? trace::to_json(*result.proof) : trace::to_text(*result.proof);
        const auto check = calculus::check_proof(sf.sig, trace::parse(text), opts.star);
        if (!check) {
            std::cerr << "internal error: emitted trace does not re-check: " << check.reason << '\n';
            return kInternal;
        }
        if (trace_path.empty()) {
            std::cout << text;
        } else {
            write_file(single ? trace_path : trace_path + "." + std::to_string(i + 1), text);
        }
    }
    if (only > 0 && static_cast<std::size_t>(only) > sf.goals.size()) {
        std::cerr << "no goal number " << only << '\n';
        return kUsage;
    }
    if (failed) return kFailed;
    if (unknown) return kUnknown;
    return kProved;
}

int run_eval(const Flags& flags, const std::string& path, const std::string& at, const std::string& sentence,
             bool global) {
    const spec::SpecFile sf = spec::load_spec(path, Tolerance(flags.tolerance));
    if (!sf.has_valuation) {
        std::cerr << path << ": eval needs a VALUATION section\n";
        return kData;
    }
    const auto model = spec::model_of(sf);
    const auto s = syntax::parse_sentence(sentence);
    semantics::StarBudget budget{flags.star_bound};
    if (!at.empty()) {
        const Vector w = eval_term(sf.sig, syntax::parse_term(at));
        std::cout << "state " << vector_text(w) << '\n';
        std::cout << (semantics::sat_at(model, w, s, budget) ? "true" : "false") << '\n';
    }
    if (global) std::cout << "globally " << (semantics::global_sat(model, s, budget) ? "true" : "false") << '\n';
    if (syntax::is_closed(s, sf.sig.vocabulary())) {
        const Subspace ext = semantics::closed_extension(model, s);
        std::cout << "rank " << ext.rank() << '\n';
        for (const auto& b : ext.basis()) std::cout << "  " << vector_text(b) << '\n';
    }
    return 0;
}

int run_initial(const Flags& flags, const std::string& path) {
    const spec::SpecFile sf = spec::load_spec(path, Tolerance(flags.tolerance));
    std::vector<syntax::Term> seeds;
    for (const auto& g : sf.goals) seeds.push_back(g.at);
    const auto im = initial::build_initial(sf.sig, sf.axioms, flags.depth, prover_options(flags), seeds);
    std::cout << "universe " << im.universe.size() << " terms\n";
    std::size_t unknown = 0;
    for (const auto& p : sf.sig.props()) {
        const auto& region = im.model.region(p);
        if (region.kind() == semantics::Region::Kind::Span) {
            std::cout << p << " span rank " << region.subspace().rank() << '\n';
            for (const auto& b : region.subspace().basis()) std::cout << "  " << vector_text(b) << '\n';
        } else {
            std::cout << p << " states " << region.states().size() << '\n';
        }
        for (std::size_t i = 0; i < im.universe.size(); ++i) {
            const auto v = im.derived.at({p, i});
            if (v == initial::Verdict::Unknown) ++unknown;
            if (v != initial::Verdict::Fails) {
                std::cout << "  " << initial::verdict_name(v) << ' ' << syntax::to_string(im.universe[i]) << '\n';
            }
        }
    }
    if (unknown) {
        std::cerr << unknown << " queries ran out of budget\n";
        return kUnknown;
    }
    return 0;
}

int run_check_trace(const Flags& flags, const std::string& path, const std::string& trace_path) {
    const spec::SpecFile sf = spec::load_spec(path, Tolerance(flags.tolerance));
    const auto tree = trace::parse(read_file(trace_path));
    const auto result = calculus::check_proof(sf.sig, tree, semantics::StarBudget{flags.star_bound});
    if (result) {
        std::cout << "ok " << tree.size() << " nodes\n";
        return 0;
    }
    std::cout << "rejected at [";
    for (std::size_t i = 0; i < result.path.size(); ++i) std::cout << (i ? "," : "") << result.path[i];
    std::cout << "]: " << result.reason << '\n';
    return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hdql: proofs and models for hybrid-dynamic quantum logic"};
    app.require_subcommand(1);
    Flags flags;
    app.add_option("--tolerance", flags.tolerance, "comparison threshold")->capture_default_str();
    app.add_option("--star-bound", flags.star_bound, "iteration cap for star orbits")->capture_default_str();
    app.add_option("--depth", flags.depth, "term universe depth for initial models")->capture_default_str();
    app.add_option("--budget", flags.budget, "prover node cap")->capture_default_str();

    std::string spec_path, trace_path, format = "text", at, sentence;
    int only = 0;
    bool global = false;

    const auto add_prove = [&](const char* name, const char* help) {
        auto* c = app.add_subcommand(name, help);
        c->add_option("spec", spec_path, "spec file")->required();
        c->add_option("--goal", only, "only the n-th goal (1-based)");
        c->add_option("--trace", trace_path, "write the proof here instead of stdout");
        c->add_option("--format", format, "trace format")->check(CLI::IsMember({"text", "json"}));
        return c;
    };
    auto* prove = add_prove("prove", "prove the goals of a spec file");
    auto* check = add_prove("check", "same as prove");

    auto* eval = app.add_subcommand("eval", "evaluate a sentence in the spec's valuation");
    eval->add_option("spec", spec_path, "spec file")->required();
    eval->add_option("--at", at, "state term");
    eval->add_option("--sentence", sentence, "sentence")->required();
    eval->add_flag("--global", global, "also decide global satisfaction");

    auto* init = app.add_subcommand("initial", "build the initial model of the axioms");
    init->add_option("spec", spec_path, "spec file")->required();

    std::string checked_trace;
    auto* ct = app.add_subcommand("check-trace", "re-check a serialized proof");
    ct->add_option("spec", spec_path, "spec file")->required();
    ct->add_option("trace", checked_trace, "trace file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    if (flags.tolerance <= 0.0 || flags.star_bound == 0 || flags.depth == 0 || flags.budget == 0) {
        std::cerr << "--tolerance, --star-bound, --depth and --budget must be positive\n";
        return kUsage;
    }

    try {
        if (*prove || *check) return run_prove(flags, spec_path, only, trace_path, format);
        if (*eval) return run_eval(flags, spec_path, at, sentence, global);
        if (*init) return run_initial(flags, spec_path);
        if (*ct) return run_check_trace(flags, spec_path, checked_trace);
    } catch (const spec::IoError& e) {
        std::cerr << e.what() << '\n';
        return kIo;
    } catch (const spec::SpecError& e) {
        std::cerr << e.what() << '\n';
        return kData;
    } catch (const NotRepresentable& e) {
        std::cerr << "not representable: " << e.what() << '\n';
        return kData;
    } catch (const BudgetExhausted& e) {
        std::cerr << "budget exhausted: " << e.what() << '\n';
        return kUnknown;
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    return kUsage;
}
