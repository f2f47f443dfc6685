#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hdql/semantics.hpp"

// Sequents, proof trees, the proof-checking kernel and the backward prover.
namespace hdql::calculus {

using syntax::Sentence;
using syntax::Term;

enum class RuleId {
    Monotonicity,
    Unions,
    Translation,
    Origin,
    Mult,
    Add,
    SpanClosure,
    EQ,
    RetI,
    RetE,
    StoreI,
    StoreE,
    ConjI,
    ConjE,
    FTI,
    FTE,
    CompI,
    CompE,
    UnionI,
    UnionE,
    StarI_bounded,
    StarE,
    MP,
    MPc,
    Imp,
    Impc,
};

inline constexpr std::size_t kRuleCount = 26;

std::string_view rule_name(RuleId r);
std::optional<RuleId> rule_from_name(std::string_view name);

using Gamma = std::shared_ptr<const std::vector<Sentence>>;

Gamma make_gamma(std::vector<Sentence> sentences);
/// Membership up to renaming of bound variables.
bool gamma_contains(const std::vector<Sentence>& g, const Sentence& s);
bool gamma_subset(const std::vector<Sentence>& a, const std::vector<Sentence>& b);
bool gamma_equal(const Gamma& a, const Gamma& b);
/// g with s appended unless already present.
Gamma gamma_with(const Gamma& g, const Sentence& s);

/// Gamma |-^k goal.
struct Sequent {
    Gamma gamma;
    Term k = Term::origin();
    Sentence goal = Sentence::prop("_");
};

using Certificate = std::map<std::string, std::string>;

struct ProofTree {
    Sequent conclusion;
    RuleId rule = RuleId::Monotonicity;
    std::vector<ProofTree> premises;
    Certificate certificate;

    [[nodiscard]] std::size_t size() const;
};

struct CheckResult {
    bool ok = true;
    std::vector<std::size_t> path;  // premise indices from the root to the first bad node
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Smallest N >= 1 such that the states reached by exactly N runs of `a`
/// from w all occur among those reached by fewer runs. nullopt when N would
/// exceed the star budget.
std::optional<std::size_t> star_period(const Signature& sig, const syntax::Action& a, const Vector& w,
                                       semantics::StarBudget budget);

/// Trusted kernel: every node must instantiate the schema of its rule.
CheckResult check_proof(const Signature& sig, const ProofTree& tree, semantics::StarBudget budget = {});

/// Root-Gamma members used by Monotonicity leaves.
std::vector<Sentence> used_premises(const ProofTree& tree);

/// The same derivation over a smaller root context. The result checks
/// whenever `subset` contains used_premises(tree).
ProofTree rebase(const ProofTree& tree, const std::vector<Sentence>& subset);

Sequent apply_morphism(const Morphism& chi, const Sequent& s, const std::set<std::string>& bound = {});
/// Renames every node; the result checks over translate(sig, chi).
ProofTree apply_morphism(const Morphism& chi, const ProofTree& tree);

/// A Translation node deriving chi(conclusion) from `premise`.
ProofTree translation_step(const Morphism& chi, ProofTree premise);

std::string format_morphism(const Morphism& chi);
Morphism parse_morphism(std::string_view text);

// ---------------------------------------------------------------- prover

enum class Outcome { Proved, Failed, Unknown };

std::string_view outcome_name(Outcome o);

struct ProverOptions {
    std::size_t node_budget = 1'000'000;
    std::size_t max_depth = 256;
    semantics::StarBudget star{};
    /// How far StarE is unrolled on chains whose term is not yet known.
    std::size_t star_unroll = 4;
};

struct ProofResult {
    Outcome outcome = Outcome::Failed;
    std::optional<ProofTree> proof;
    std::string report;
    std::size_t nodes = 0;
};

/// Backward proof search for Gamma |-^k goal. Goal and Gamma must be quantum
/// clauses and k ground. Every returned tree passes check_proof.
ProofResult prove(const Signature& sig, const std::vector<Sentence>& gamma, const Term& k, const Sentence& goal,
                  const ProverOptions& options = {});

}  // namespace hdql::calculus
