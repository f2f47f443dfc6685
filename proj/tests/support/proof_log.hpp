#pragma once

#include <string>
#include <vector>

#include "hdql/calculus.hpp"

// Every proof the tests produce, for the soundness replay at the end.
namespace hdqltest {

struct LoggedProof {
    hdql::Signature sig;
    hdql::calculus::ProofTree tree;
    std::string origin;
};

void log_proof(const hdql::Signature& sig, const hdql::calculus::ProofTree& tree, std::string origin);
const std::vector<LoggedProof>& logged_proofs();

}  // namespace hdqltest
