#pragma once

#include <string>
#include <vector>

#include "esib/expr.hpp"
#include "esib/rng.hpp"

namespace esib {

// Independent oracles and self-check suites backing `esib verify` and the
// acceptance tests. Everything here deliberately avoids the implementation
// paths it checks (e.g. the stack evaluator never touches ExprTree methods
// beyond the token sequence).

// Evaluates a pre-order token sequence with an explicit operand stack
// (right-to-left scan). Same error semantics as evaluate().
double evaluate_preorder_stack(const std::vector<ExprToken>& tokens, const QuantityMap& qmap);

// Uniform random expression tree: operators chosen from the full set, leaves
// split between slots (1..n_slots) and constants.
TreePtr random_tree(Rng& rng, int max_depth, int n_slots, const std::vector<double>& constants);

// Quantity values away from zero, safe for most random trees.
QuantityMap random_qmap(Rng& rng, int n_slots);

struct SuiteResult {
    std::string name;
    bool passed = false;
    double max_rel_error = 0.0;
    std::string detail;
};

// 1000-tree round-trip equality + stack-machine evaluation agreement (1e-9
// relative) + arity conservation.
SuiteResult run_tree_suite(std::uint64_t seed, int n_trees = 1000);

}  // namespace esib
