#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdql/calculus.hpp"

// The initial (least) model of a set of quantum clauses, inspected on a
// finitely generated universe of ground terms.
namespace hdql::initial {

using syntax::Sentence;
using syntax::Term;

enum class Verdict { Holds, Fails, Unknown };

std::string_view verdict_name(Verdict v);

struct InitialModel {
    Signature sig;
    std::vector<Sentence> gamma;
    std::vector<Term> universe;
    /// Prover outcome per (prop, universe index).
    std::map<std::pair<std::string, std::size_t>, Verdict> derived;
    semantics::QuantumModel model;
    calculus::ProverOptions options;
};

/// Universe: ground terms of gamma (and `seeds`) closed under every unitary
/// and measurement up to `depth` applications, deduplicated by value.
std::vector<Term> term_universe(const Signature& sig, const std::vector<Sentence>& gamma, std::size_t depth,
                                const std::vector<Term>& seeds = {});

InitialModel build_initial(const Signature& sig, const std::vector<Sentence>& gamma, std::size_t depth = 6,
                           const calculus::ProverOptions& options = {}, const std::vector<Term>& seeds = {});

Verdict holds(const InitialModel& im, const std::string& p, const Term& k);

struct MinimalityReport {
    bool precondition = true;  // `other` satisfies gamma
    bool minimal = true;
    std::string detail;

    explicit operator bool() const noexcept { return precondition && minimal; }
};

/// Every derived fact of im (on the samples) holds in `other`.
MinimalityReport check_minimality(const InitialModel& im, const semantics::QuantumModel& other,
                                  const std::vector<Term>& samples);

}  // namespace hdql::initial
