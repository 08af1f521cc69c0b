#include "esib/verification.hpp"

#include <cmath>

namespace esib {

double evaluate_preorder_stack(const std::vector<ExprToken>& tokens, const QuantityMap& qmap) {
    std::vector<double> stack;
    for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
        const ExprToken& tok = *it;
        if (tok.kind == ExprToken::Kind::Constant) {
            stack.push_back(tok.value);
        } else if (tok.kind == ExprToken::Kind::QuantitySlot) {
            stack.push_back(qmap.slot_value(tok.slot));
        } else {
            if (stack.size() < 2) throw ArityError("operator without two operands");
            double l = stack.back();
            stack.pop_back();
            double r = stack.back();
            stack.pop_back();
            double v = 0.0;
            switch (tok.op) {
                case OpKind::Add: v = l + r; break;
                case OpKind::Sub: v = l - r; break;
                case OpKind::Mul: v = l * r; break;
                case OpKind::Div:
                    if (r == 0.0)
                        throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
                    v = l / r;
                    break;
                case OpKind::Pow: v = std::pow(l, r); break;
            }
            if (!std::isfinite(v))
                throw EvalError(EvalError::Kind::NonFinite, "non-finite result");
            stack.push_back(v);
        }
    }
    if (stack.size() != 1) throw ArityError("sequence is not a single tree");
    return stack.back();
}

TreePtr random_tree(Rng& rng, int max_depth, int n_slots, const std::vector<double>& constants) {
    bool leaf = max_depth <= 0 || rng.next_double() < 0.4;
    if (leaf) {
        bool use_slot = n_slots > 0 && (constants.empty() || rng.next_double() < 0.6);
        if (use_slot)
            return make_leaf(ExprToken::make_slot(1 + static_cast<int>(rng.uniform_int(0, n_slots - 1))));
        double c = constants[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<long long>(constants.size()) - 1))];
        return make_leaf(ExprToken::make_constant(c));
    }
    auto op = static_cast<OpKind>(rng.uniform_int(0, 4));
    return make_node(op, random_tree(rng, max_depth - 1, n_slots, constants),
                     random_tree(rng, max_depth - 1, n_slots, constants));
}

QuantityMap random_qmap(Rng& rng, int n_slots) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n_slots));
    for (int i = 0; i < n_slots; ++i) {
        double v = rng.uniform(0.5, 8.0);
        if (rng.next_double() < 0.5) v = -v;
        values.push_back(v);
    }
    return QuantityMap::from_values(values);
}

SuiteResult run_tree_suite(std::uint64_t seed, int n_trees) {
    SuiteResult res;
    res.name = "tree";
    res.passed = true;

    Rng rng(derive_seed(seed, "tree-suite"));
    const std::vector<double> constants = {1.0, 2.0, 3.14};
    int evaluated = 0;

    for (int i = 0; i < n_trees; ++i) {
        TreePtr t = random_tree(rng, 4, 5, constants);
        auto toks = to_preorder(*t);

        // Arity conservation: #leaves = #operators + 1.
        int ops = 0, leaves = 0;
        for (const auto& tok : toks) (tok.is_operator() ? ops : leaves)++;
        if (leaves != ops + 1) {
            res.passed = false;
            res.detail = "arity violated at tree " + std::to_string(i);
            break;
        }

        TreePtr back = from_preorder(toks);
        if (!t->equals(*back)) {
            res.passed = false;
            res.detail = "round-trip mismatch at tree " + std::to_string(i);
            break;
        }

        // String round-trip as well.
        TreePtr back2 = from_preorder(tokens_from_preorder_string(preorder_string(*t)));
        if (!t->equals(*back2)) {
            res.passed = false;
            res.detail = "string round-trip mismatch at tree " + std::to_string(i);
            break;
        }

        QuantityMap qmap = random_qmap(rng, 5);
        double direct = 0.0, stacked = 0.0;
        try {
            direct = evaluate(*t, qmap);
            stacked = evaluate_preorder_stack(toks, qmap);
        } catch (const EvalError&) {
            continue;  // error cases excluded from the numeric comparison
        }
        ++evaluated;
        double rel = std::abs(direct - stacked) / std::max(1.0, std::abs(stacked));
        res.max_rel_error = std::max(res.max_rel_error, rel);
        if (rel > 1e-9) {
            res.passed = false;
            res.detail = "evaluator disagreement at tree " + std::to_string(i);
            break;
        }
    }

    if (res.passed && evaluated < n_trees / 2) {
        res.passed = false;
        res.detail = "too few evaluable trees (" + std::to_string(evaluated) + ")";
    }
    if (res.detail.empty())
        res.detail = std::to_string(evaluated) + "/" + std::to_string(n_trees) + " trees evaluated";
    return res;
}

}  // namespace esib
