#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hdql/semantics.hpp"

// Textual problem files: a signature, axioms, goals and optionally a valuation.
//
//   SPACE 2
//   DEFINE
//     half = 1/sqrt(2)      (helpers of any shape, not part of the signature)
//   VECTORS
//     w = 0.6*|0> + 0.8*|1>
//   UNITARY
//     h = H
//   MEASURE
//     q0 = |0>
//   PROPS
//     p, r closed
//   AXIOMS
//     @(w) p
//   GOAL AT w PROVE p
//   VALUATION
//     p = w
//     r = span(|0>)
namespace hdql::spec {

class SpecError : public Error {
public:
    explicit SpecError(std::vector<std::string> problems);

    [[nodiscard]] const std::vector<std::string>& problems() const noexcept { return problems_; }

private:
    std::vector<std::string> problems_;
};

class IoError : public Error {
public:
    using Error::Error;
};

struct Goal {
    syntax::Term at;
    syntax::Sentence sentence;
    std::size_t line = 0;
};

struct SpecFile {
    Signature sig{1};
    std::vector<syntax::Sentence> axioms;
    std::vector<Goal> goals;
    std::map<std::string, semantics::Region> valuation;
    bool has_valuation = false;
};

/// Throws SpecError with every located problem (syntax and frame validation).
SpecFile parse_spec(std::string_view text, Tolerance tol = {});
SpecFile load_spec(const std::string& path, Tolerance tol = {});

/// Vector / scalar / matrix expression as accepted inside spec files.
Vector parse_vector(std::string_view text, std::size_t dim);
Operator parse_operator(std::string_view text, std::size_t dim);

semantics::QuantumModel model_of(const SpecFile& spec);

}  // namespace hdql::spec
