#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "esib/expr.hpp"
#include "esib/verification.hpp"

using namespace esib;

namespace {

QuantityMap qmap_of(std::vector<double> values) { return QuantityMap::from_values(values); }

}  // namespace

TEST_CASE("parse_infix maps numbers in the quantity map to slots") {
    auto qmap = qmap_of({16, 4, 2});
    auto tree = parse_infix("16*4/2", qmap);
    CHECK(preorder_string(*tree) == "÷ × N1 N2 N3");
    CHECK(evaluate(*tree, qmap) == doctest::Approx(32.0));
}

TEST_CASE("parse_infix single number becomes a slot leaf") {
    auto qmap = qmap_of({5});
    auto tree = parse_infix("5", qmap);
    CHECK(tree->node == ExprToken::make_slot(1));
    CHECK(tree->size() == 1);
}

TEST_CASE("parse_infix handles parentheses and percents") {
    QuantityMap qmap;
    qmap.items = {{"220", 220.0}, {"25%", 0.25}, {"30%", 0.30}};
    auto tree = parse_infix("220/(25%+30%)", qmap);
    CHECK(preorder_string(*tree) == "÷ N1 + N2 N3");
    CHECK(evaluate(*tree, qmap) == doctest::Approx(400.0));
}

TEST_CASE("parse_infix numbers outside the quantity map become constants") {
    auto qmap = qmap_of({3});
    auto tree = parse_infix("1/(1/3)", qmap);
    auto toks = to_preorder(*tree);
    REQUIRE(toks.size() == 5);
    CHECK(toks[1] == ExprToken::make_constant(1.0));
    CHECK(toks[4] == ExprToken::make_slot(1));
    CHECK(evaluate(*tree, qmap) == doctest::Approx(3.0));
}

TEST_CASE("parse_infix reports malformed syntax with position") {
    auto qmap = qmap_of({});
    CHECK_THROWS_AS(parse_infix("2+*3", qmap), ParseError);
    CHECK_THROWS_AS(parse_infix("(2+3", qmap), ParseError);
    CHECK_THROWS_AS(parse_infix("2+3)", qmap), ParseError);
    CHECK_THROWS_AS(parse_infix("", qmap), ParseError);
    CHECK_THROWS_AS(parse_infix("2 & 3", qmap), ParseError);
    try {
        parse_infix("12 + @", qmap);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
    }
}

TEST_CASE("to_preorder emits root-left-right") {
    // (17 - 7) * 75 with plain constants.
    auto tree = make_node(OpKind::Mul,
                          make_node(OpKind::Sub, make_leaf(ExprToken::make_constant(17)),
                                    make_leaf(ExprToken::make_constant(7))),
                          make_leaf(ExprToken::make_constant(75)));
    CHECK(preorder_string(*tree) == "× − 17 7 75");
    auto toks = to_preorder(*tree);
    CHECK(toks.size() == 5);  // 2 operators -> 2*2+1

    auto leaf = make_leaf(ExprToken::make_slot(1));
    CHECK(preorder_string(*leaf) == "N1");
}

TEST_CASE("from_preorder rejects truncated and overlong sequences") {
    std::vector<ExprToken> truncated = {ExprToken::make_op(OpKind::Add),
                                        ExprToken::make_slot(1)};
    CHECK_THROWS_AS(from_preorder(truncated), ArityError);

    std::vector<ExprToken> overlong = {ExprToken::make_slot(1), ExprToken::make_slot(2)};
    CHECK_THROWS_AS(from_preorder(overlong), ArityError);
}

TEST_CASE("from_preorder inverts to_preorder on the spec example") {
    auto toks = tokens_from_preorder_string("÷ × N1 N2 N3");
    auto tree = from_preorder(toks);
    CHECK(to_infix_slots(*tree) == "N1*N2/N3");
}

TEST_CASE("pre-order round-trip holds on 1000 random trees") {
    auto res = run_tree_suite(/*seed=*/7, /*n_trees=*/1000);
    INFO(res.detail);
    CHECK(res.passed);
    CHECK(res.max_rel_error <= 1e-9);
}

TEST_CASE("evaluate matches the paper's worked answers") {
    auto t1 = parse_infix("16*4/2", qmap_of({16, 4, 2}));
    CHECK(evaluate(*t1, qmap_of({16, 4, 2})) == doctest::Approx(32.0));

    QuantityMap q3;
    q3.items = {{"220", 220.0}, {"25%", 0.25}, {"30%", 0.30}};
    auto t3 = parse_infix("220/(25%+30%)", q3);
    CHECK(evaluate(*t3, q3) == doctest::Approx(400.0));

    auto t2 = parse_infix("70*6/4", qmap_of({70, 6, 4}));
    CHECK(evaluate(*t2, qmap_of({70, 6, 4})) == doctest::Approx(105.0));

    auto zero = make_node(OpKind::Sub, make_leaf(ExprToken::make_slot(1)),
                          make_leaf(ExprToken::make_slot(1)));
    CHECK(evaluate(*zero, qmap_of({7})) == 0.0);
}

TEST_CASE("evaluate error paths") {
    auto div = make_node(OpKind::Div, make_leaf(ExprToken::make_constant(1)),
                         make_leaf(ExprToken::make_constant(0)));
    CHECK_THROWS_AS(evaluate(*div, qmap_of({})), EvalError);

    auto unbound = make_leaf(ExprToken::make_slot(3));
    CHECK_THROWS_AS(evaluate(*unbound, qmap_of({1, 2})), EvalError);

    auto overflow = make_node(OpKind::Pow, make_leaf(ExprToken::make_constant(1e300)),
                              make_leaf(ExprToken::make_constant(5)));
    CHECK_THROWS_AS(evaluate(*overflow, qmap_of({})), EvalError);
}

TEST_CASE("answers_match tolerance") {
    CHECK(answers_match(32.0, 32.0));
    CHECK(answers_match(400.00001, 400.0));
    CHECK_FALSE(answers_match(105.0, 32.0));
    CHECK(answers_match(0.0, 0.00009));
    CHECK_FALSE(answers_match(0.0, 0.2));
    CHECK_FALSE(answers_match(std::nan(""), 1.0));
}

TEST_CASE("percent semantics: p% evaluates exactly as p/100") {
    QuantityMap with_percent;
    with_percent.items = {{"25%", 0.25}};
    QuantityMap with_value = qmap_of({0.25});
    auto a = parse_infix("25%*4", with_percent);
    auto b = parse_infix("0.25*4", with_value);
    CHECK(evaluate(*a, with_percent) == evaluate(*b, with_value));
}

TEST_CASE("abstract_quantities on Table-1-style text") {
    auto abs = abstract_quantities(
        "From place A to place B, if a bicycle travels 16 kilometers per hour, it can be "
        "reached in 4 hours. If it only takes 2 hours by car, how many kilometers per hour "
        "does the car travel?");
    REQUIRE(abs.qmap.size() == 3);
    CHECK(abs.qmap.items[0].value == 16.0);
    CHECK(abs.qmap.items[1].value == 4.0);
    CHECK(abs.qmap.items[2].value == 2.0);
    int n1 = 0, n2 = 0, n3 = 0;
    for (const auto& tok : abs.tokens) {
        n1 += tok == "N1";
        n2 += tok == "N2";
        n3 += tok == "N3";
    }
    CHECK(n1 == 1);
    CHECK(n2 == 1);
    CHECK(n3 == 1);
}

TEST_CASE("abstract_quantities with no numbers yields empty map") {
    auto abs = abstract_quantities("how many kilometers is the total length?");
    CHECK(abs.qmap.empty());
}

TEST_CASE("abstract_quantities keeps percent order and values") {
    auto abs = abstract_quantities(
        "A car travels 25% of the journey in the first hour, 30% in the second hour, "
        "a total of 220 kilometers.");
    REQUIRE(abs.qmap.size() == 3);
    CHECK(abs.qmap.items[0].value == 0.25);
    CHECK(abs.qmap.items[0].surface == "25%");
    CHECK(abs.qmap.items[1].value == 0.30);
    CHECK(abs.qmap.items[2].value == 220.0);
}

TEST_CASE("abstract_quantities gives duplicate numbers distinct slots") {
    auto abs = abstract_quantities("he walked 3 km and then 3 km more");
    REQUIRE(abs.qmap.size() == 2);
    CHECK(abs.qmap.items[0].value == 3.0);
    CHECK(abs.qmap.items[1].value == 3.0);
}

TEST_CASE("abstract_quantities enforces the slot capacity") {
    CHECK_THROWS_AS(abstract_quantities("1 2 3 4 5 6 7 8 9 10 11"), CapacityError);
    CHECK_NOTHROW(abstract_quantities("1 2 3 4 5 6 7 8 9 10"));
}

TEST_CASE("infix emission round-trips random trees") {
    Rng rng(derive_seed(11, "infix-roundtrip"));
    const std::vector<double> constants = {1.0, 3.14};
    for (int i = 0; i < 500; ++i) {
        TreePtr t = random_tree(rng, 4, 4, constants);
        QuantityMap qmap = random_qmap(rng, 4);
        std::string infix = to_infix(*t, qmap);
        TreePtr back = parse_infix(infix, qmap);
        // Structural equality can fail only if distinct slots share a value;
        // random_qmap draws continuous values so collisions are negligible.
        CHECK(t->equals(*back));
    }
}

TEST_CASE("stack evaluator is consistent on a known case") {
    auto toks = tokens_from_preorder_string("÷ × N1 N2 N3");
    CHECK(evaluate_preorder_stack(toks, qmap_of({16, 4, 2})) == doctest::Approx(32.0));
    // 2 - 1 must be 1, not -1 (operand order).
    auto sub = tokens_from_preorder_string("− 2 1");
    CHECK(evaluate_preorder_stack(sub, qmap_of({})) == doctest::Approx(1.0));
}
