#pragma once

#include <map>
#include <string>
#include <vector>

#include "hdql/signature.hpp"

// Quantum Kripke models over a signature's frame, pointwise satisfaction,
// subspace extensions of closed sentences and global satisfaction.
namespace hdql::semantics {

using syntax::Action;
using syntax::Sentence;
using syntax::Term;

/// The set of states where a proposition holds.
class Region {
public:
    enum class Kind { Finite, Span };

    Region() = default;
    static Region finite(std::vector<Vector> states);
    static Region span(Subspace s);

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::vector<Vector>& states() const noexcept { return states_; }
    [[nodiscard]] const Subspace& subspace() const noexcept { return subspace_; }
    [[nodiscard]] bool contains(const Vector& w, Tolerance tol) const;

private:
    Kind kind_ = Kind::Finite;
    std::vector<Vector> states_;
    Subspace subspace_;
};

class QuantumModel {
public:
    /// Props without an entry get the empty region (the zero subspace when closed).
    QuantumModel(Signature sig, std::map<std::string, Region> valuation);

    [[nodiscard]] const Signature& sig() const noexcept { return sig_; }
    [[nodiscard]] const std::map<std::string, Region>& valuation() const noexcept { return valuation_; }
    [[nodiscard]] const Region& region(const std::string& p) const;

private:
    Signature sig_;
    std::map<std::string, Region> valuation_;
};

struct StarBudget {
    std::size_t max_iterations = 64;
};

struct Successors {
    std::vector<Vector> states;
    bool truncated = false;
};

/// States reachable from w by one execution of a. A star that does not close
/// its orbit within the budget comes back with `truncated` set.
Successors successors(const Signature& sig, const Action& a, const Vector& w, StarBudget budget = {});

/// (W, M) satisfies s at w. Throws NotRepresentable for quantum negation of a
/// non-closed sentence and BudgetExhausted when a star orbit does not close.
bool sat_at(const QuantumModel& model, const Vector& w, const Sentence& s, StarBudget budget = {});

/// Backward image { w : U w in s } of a unitary action (measurement-free).
Subspace preimage(const Signature& sig, const Action& b, const Subspace& s);

struct Fixpoint {
    Subspace result;
    std::size_t iterations = 0;  // number of refinement steps until the rank stood still
};

/// Greatest Y inside s with Y contained in the preimage of Y under b.
Fixpoint star_fixpoint(const Signature& sig, const Action& b, const Subspace& s);

/// The subspace of states satisfying a closed sentence.
Subspace closed_extension(const QuantumModel& model, const Sentence& rho);

/// Global satisfaction. Decidable for closed sentences and for sentences whose
/// truth does not depend on the current state; any other shape throws
/// NotRepresentable.
bool global_sat(const QuantumModel& model, const Sentence& s, StarBudget budget = {});

/// Truth of s is the same at every state (checked syntactically).
bool state_independent(const Sentence& s);

/// Model over the source signature of chi with p valued as chi(p).
QuantumModel reduct(const QuantumModel& target, const Morphism& chi);

}  // namespace hdql::semantics
