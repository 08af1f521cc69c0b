#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "esib/errors.hpp"

namespace esib {

// Binary operator set for expression syntax trees. Fixed; the constant list
// is configurable elsewhere.
enum class OpKind : std::uint8_t { Add, Sub, Mul, Div, Pow };

// Canonical glyph ("+", "−", "×", "÷", "^"). ASCII aliases
// (-, *, /) are accepted on input everywhere.
std::string op_glyph(OpKind op);
std::optional<OpKind> op_from_token(std::string_view tok);

struct ExprToken {
    enum class Kind : std::uint8_t { Operator, Constant, QuantitySlot };

    Kind kind = Kind::Constant;
    OpKind op = OpKind::Add;  // valid when kind == Operator
    double value = 0.0;       // valid when kind == Constant
    int slot = 0;             // 1-based, valid when kind == QuantitySlot

    static ExprToken make_op(OpKind op);
    static ExprToken make_constant(double v);
    static ExprToken make_slot(int index);  // index >= 1

    bool is_operator() const { return kind == Kind::Operator; }
    bool is_leaf() const { return kind != Kind::Operator; }
    std::string str() const;

    bool operator==(const ExprToken& o) const;
};

// Parses one serialized token ("÷", "*", "N3", "3.14", "25%"). Throws
// ParseError if the token is none of operator/slot/number.
ExprToken token_from_string(std::string_view tok);

struct ExprTree {
    ExprToken node;
    std::unique_ptr<ExprTree> left;
    std::unique_ptr<ExprTree> right;

    ExprTree() = default;
    explicit ExprTree(ExprToken t) : node(t) {}
    ExprTree(ExprToken t, std::unique_ptr<ExprTree> l, std::unique_ptr<ExprTree> r)
        : node(t), left(std::move(l)), right(std::move(r)) {}

    std::unique_ptr<ExprTree> clone() const;
    bool equals(const ExprTree& other) const;
    int size() const;  // node count == pre-order length
};

using TreePtr = std::unique_ptr<ExprTree>;

TreePtr make_leaf(ExprToken t);
TreePtr make_node(OpKind op, TreePtr l, TreePtr r);

// One extracted number: the surface form as it appeared in the text and its
// numeric value ("25%" stores 0.25).
struct Quantity {
    std::string surface;
    double value = 0.0;
};

struct QuantityMap {
    std::vector<Quantity> items;

    int size() const { return static_cast<int>(items.size()); }
    bool empty() const { return items.empty(); }
    // Value for slot i (1-based); throws EvalError(UnboundSlot) out of range.
    double slot_value(int slot) const;
    // First slot (1-based) whose surface matches, else whose value matches
    // within 1e-9 relative; 0 when absent.
    int find(std::string_view surface, double value) const;

    static QuantityMap from_values(const std::vector<double>& values);
};

// --- core operations -------------------------------------------------------

// Infix text -> tree. Numbers found in `qmap` become quantity-slot leaves,
// all other numbers become constants. Operators: + - * / ^ and the unicode
// glyphs; percent literals ("25%") carry value/100.
TreePtr parse_infix(std::string_view text, const QuantityMap& qmap);

std::vector<ExprToken> to_preorder(const ExprTree& tree);
TreePtr from_preorder(const std::vector<ExprToken>& tokens);

// Space-separated canonical token string, e.g. "÷ × N1 N2 N3".
std::string preorder_string(const ExprTree& tree);
std::vector<ExprToken> tokens_from_preorder_string(std::string_view text);

// Minimal-parentheses infix with ASCII operators; parse_infix(to_infix(t))
// reproduces t for any valid tree over the same qmap.
std::string to_infix(const ExprTree& tree, const QuantityMap& qmap);
// Same, but leaves slots symbolic ("N1+N2").
std::string to_infix_slots(const ExprTree& tree);

double evaluate(const ExprTree& tree, const QuantityMap& qmap);

// |a-b| <= 1e-4 * max(1, |b|); false when either side is non-finite.
bool answers_match(double a, double b);

// Shortest round-trip decimal form of v ("32", "0.25", "3.14").
std::string format_number(double v);

struct AbstractedText {
    std::vector<std::string> tokens;  // numbers replaced by N1, N2, ...
    QuantityMap qmap;
};

// Tokenizes on whitespace/punctuation, recognizes numbers and percents, and
// replaces the i-th number occurrence with slot token Ni.
AbstractedText abstract_quantities(std::string_view text, int max_slots = 10);

bool is_slot_token(std::string_view tok, int* index = nullptr);

}  // namespace esib
