#include "esib/expr.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace esib {

namespace {

constexpr std::string_view kMinus = "−";   // −
constexpr std::string_view kTimes = "×";   // ×
constexpr std::string_view kDivide = "÷";  // ÷

bool parse_double(std::string_view s, double* out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) return false;
    *out = v;
    return true;
}

// "12", "3.5", "25%" -> value; percent stores value/100.
bool parse_number_token(std::string_view s, double* out) {
    if (s.empty()) return false;
    bool percent = s.back() == '%';
    if (percent) s.remove_suffix(1);
    double v = 0.0;
    if (!parse_double(s, &v)) return false;
    *out = percent ? v / 100.0 : v;
    return true;
}

}  // namespace

std::string op_glyph(OpKind op) {
    switch (op) {
        case OpKind::Add: return "+";
        case OpKind::Sub: return std::string(kMinus);
        case OpKind::Mul: return std::string(kTimes);
        case OpKind::Div: return std::string(kDivide);
        case OpKind::Pow: return "^";
    }
    return "?";
}

std::optional<OpKind> op_from_token(std::string_view tok) {
    if (tok == "+") return OpKind::Add;
    if (tok == "-" || tok == kMinus) return OpKind::Sub;
    if (tok == "*" || tok == kTimes) return OpKind::Mul;
    if (tok == "/" || tok == kDivide) return OpKind::Div;
    if (tok == "^") return OpKind::Pow;
    return std::nullopt;
}

ExprToken ExprToken::make_op(OpKind op) {
    ExprToken t;
    t.kind = Kind::Operator;
    t.op = op;
    return t;
}

ExprToken ExprToken::make_constant(double v) {
    ExprToken t;
    t.kind = Kind::Constant;
    t.value = v;
    return t;
}

ExprToken ExprToken::make_slot(int index) {
    assert(index >= 1);
    ExprToken t;
    t.kind = Kind::QuantitySlot;
    t.slot = index;
    return t;
}

std::string ExprToken::str() const {
    switch (kind) {
        case Kind::Operator: return op_glyph(op);
        case Kind::Constant: return format_number(value);
        case Kind::QuantitySlot: return "N" + std::to_string(slot);
    }
    return "?";
}

bool ExprToken::operator==(const ExprToken& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Kind::Operator: return op == o.op;
        case Kind::Constant: return value == o.value;
        case Kind::QuantitySlot: return slot == o.slot;
    }
    return false;
}

ExprToken token_from_string(std::string_view tok) {
    if (auto op = op_from_token(tok)) return ExprToken::make_op(*op);
    int slot = 0;
    if (is_slot_token(tok, &slot)) return ExprToken::make_slot(slot);
    double v = 0.0;
    if (parse_number_token(tok, &v)) return ExprToken::make_constant(v);
    throw ParseError("unrecognized token '" + std::string(tok) + "'", 0);
}

std::unique_ptr<ExprTree> ExprTree::clone() const {
    auto t = std::make_unique<ExprTree>(node);
    if (left) t->left = left->clone();
    if (right) t->right = right->clone();
    return t;
}

bool ExprTree::equals(const ExprTree& other) const {
    if (!(node == other.node)) return false;
    if (static_cast<bool>(left) != static_cast<bool>(other.left)) return false;
    if (static_cast<bool>(right) != static_cast<bool>(other.right)) return false;
    if (left && !left->equals(*other.left)) return false;
    if (right && !right->equals(*other.right)) return false;
    return true;
}

int ExprTree::size() const {
    int n = 1;
    if (left) n += left->size();
    if (right) n += right->size();
    return n;
}

TreePtr make_leaf(ExprToken t) {
    assert(t.is_leaf());
    return std::make_unique<ExprTree>(t);
}

TreePtr make_node(OpKind op, TreePtr l, TreePtr r) {
    assert(l && r);
    return std::make_unique<ExprTree>(ExprToken::make_op(op), std::move(l), std::move(r));
}

double QuantityMap::slot_value(int slot) const {
    if (slot < 1 || slot > size())
        throw EvalError(EvalError::Kind::UnboundSlot,
                        "slot N" + std::to_string(slot) + " not bound (have " +
                            std::to_string(size()) + " quantities)");
    return items[static_cast<std::size_t>(slot - 1)].value;
}

int QuantityMap::find(std::string_view surface, double value) const {
    for (int i = 0; i < size(); ++i) {
        if (items[static_cast<std::size_t>(i)].surface == surface) return i + 1;
    }
    for (int i = 0; i < size(); ++i) {
        double q = items[static_cast<std::size_t>(i)].value;
        if (std::abs(q - value) <= 1e-9 * std::max(1.0, std::abs(q))) return i + 1;
    }
    return 0;
}

QuantityMap QuantityMap::from_values(const std::vector<double>& values) {
    QuantityMap m;
    m.items.reserve(values.size());
    for (double v : values) m.items.push_back({format_number(v), v});
    return m;
}

// --- infix parsing ----------------------------------------------------------

namespace {

struct InfixToken {
    enum class Type { Number, Op, LParen, RParen, End };
    Type type = Type::End;
    OpKind op = OpKind::Add;
    double value = 0.0;
    std::string surface;
    std::size_t pos = 0;
};

std::vector<InfixToken> lex_infix(std::string_view text) {
    std::vector<InfixToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t') {
            ++i;
            continue;
        }
        if (c == '(') {
            out.push_back({InfixToken::Type::LParen, OpKind::Add, 0, "", i});
            ++i;
            continue;
        }
        if (c == ')') {
            out.push_back({InfixToken::Type::RParen, OpKind::Add, 0, "", i});
            ++i;
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = i;
            while (i < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '.'))
                ++i;
            if (i < text.size() && text[i] == '%') ++i;
            std::string surface(text.substr(start, i - start));
            double v = 0.0;
            if (!parse_number_token(surface, &v))
                throw ParseError("malformed number '" + surface + "'", start);
            out.push_back({InfixToken::Type::Number, OpKind::Add, v, surface, start});
            continue;
        }
        // Multi-byte operator glyphs and ASCII operators.
        bool matched = false;
        for (std::string_view glyph : {std::string_view("+"), std::string_view("-"),
                                       std::string_view("*"), std::string_view("/"),
                                       std::string_view("^"), kMinus, kTimes, kDivide}) {
            if (text.substr(i).starts_with(glyph)) {
                out.push_back(
                    {InfixToken::Type::Op, *op_from_token(glyph), 0, std::string(glyph), i});
                i += glyph.size();
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
    }
    out.push_back({InfixToken::Type::End, OpKind::Add, 0, "", text.size()});
    return out;
}

class InfixParser {
public:
    InfixParser(std::vector<InfixToken> toks, const QuantityMap& qmap)
        : toks_(std::move(toks)), qmap_(qmap) {}

    TreePtr parse() {
        TreePtr t = parse_expr();
        if (peek().type != InfixToken::Type::End)
            throw ParseError("trailing input", peek().pos);
        return t;
    }

private:
    const InfixToken& peek() const { return toks_[pos_]; }
    const InfixToken& advance() { return toks_[pos_++]; }

    // expr := term (('+'|'-') term)*
    TreePtr parse_expr() {
        TreePtr left = parse_term();
        while (peek().type == InfixToken::Type::Op &&
               (peek().op == OpKind::Add || peek().op == OpKind::Sub)) {
            OpKind op = advance().op;
            left = make_node(op, std::move(left), parse_term());
        }
        return left;
    }

    // term := power (('*'|'/') power)*
    TreePtr parse_term() {
        TreePtr left = parse_power();
        while (peek().type == InfixToken::Type::Op &&
               (peek().op == OpKind::Mul || peek().op == OpKind::Div)) {
            OpKind op = advance().op;
            left = make_node(op, std::move(left), parse_power());
        }
        return left;
    }

    // power := primary ('^' power)?   -- right associative
    TreePtr parse_power() {
        TreePtr base = parse_primary();
        if (peek().type == InfixToken::Type::Op && peek().op == OpKind::Pow) {
            advance();
            return make_node(OpKind::Pow, std::move(base), parse_power());
        }
        return base;
    }

    TreePtr parse_primary() {
        const InfixToken& tok = peek();
        if (tok.type == InfixToken::Type::LParen) {
            advance();
            TreePtr inner = parse_expr();
            if (peek().type != InfixToken::Type::RParen)
                throw ParseError("expected ')'", peek().pos);
            advance();
            return inner;
        }
        if (tok.type == InfixToken::Type::Number) {
            advance();
            if (int slot = qmap_.find(tok.surface, tok.value); slot > 0)
                return make_leaf(ExprToken::make_slot(slot));
            return make_leaf(ExprToken::make_constant(tok.value));
        }
        if (tok.type == InfixToken::Type::RParen)
            throw ParseError("unbalanced ')'", tok.pos);
        throw ParseError("expected number or '('", tok.pos);
    }

    std::vector<InfixToken> toks_;
    const QuantityMap& qmap_;
    std::size_t pos_ = 0;
};

}  // namespace

TreePtr parse_infix(std::string_view text, const QuantityMap& qmap) {
    return InfixParser(lex_infix(text), qmap).parse();
}

// --- pre-order serialization -------------------------------------------------

namespace {

void preorder_visit(const ExprTree& t, std::vector<ExprToken>& out) {
    out.push_back(t.node);
    if (t.left) preorder_visit(*t.left, out);
    if (t.right) preorder_visit(*t.right, out);
}

TreePtr build_preorder(const std::vector<ExprToken>& toks, std::size_t& pos) {
    if (pos >= toks.size()) throw ArityError("pre-order sequence truncated");
    ExprToken tok = toks[pos++];
    if (tok.is_leaf()) return make_leaf(tok);
    auto t = std::make_unique<ExprTree>(tok);
    t->left = build_preorder(toks, pos);
    t->right = build_preorder(toks, pos);
    return t;
}

}  // namespace

std::vector<ExprToken> to_preorder(const ExprTree& tree) {
    std::vector<ExprToken> out;
    out.reserve(static_cast<std::size_t>(tree.size()));
    preorder_visit(tree, out);
    return out;
}

TreePtr from_preorder(const std::vector<ExprToken>& tokens) {
    std::size_t pos = 0;
    TreePtr t = build_preorder(tokens, pos);
    if (pos != tokens.size()) throw ArityError("pre-order sequence overlong");
    return t;
}

std::string preorder_string(const ExprTree& tree) {
    std::string out;
    for (const ExprToken& t : to_preorder(tree)) {
        if (!out.empty()) out += ' ';
        out += t.str();
    }
    return out;
}

std::vector<ExprToken> tokens_from_preorder_string(std::string_view text) {
    std::vector<ExprToken> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        std::size_t start = i;
        while (i < text.size() && text[i] != ' ') ++i;
        if (i > start) out.push_back(token_from_string(text.substr(start, i - start)));
    }
    return out;
}

// --- infix emission -----------------------------------------------------------

namespace {

int precedence(OpKind op) {
    switch (op) {
        case OpKind::Add:
        case OpKind::Sub: return 1;
        case OpKind::Mul:
        case OpKind::Div: return 2;
        case OpKind::Pow: return 3;
    }
    return 0;
}

std::string ascii_glyph(OpKind op) {
    switch (op) {
        case OpKind::Add: return "+";
        case OpKind::Sub: return "-";
        case OpKind::Mul: return "*";
        case OpKind::Div: return "/";
        case OpKind::Pow: return "^";
    }
    return "?";
}

std::string leaf_text(const ExprToken& t, const QuantityMap* qmap) {
    if (t.kind == ExprToken::Kind::QuantitySlot) {
        if (qmap) {
            if (t.slot < 1 || t.slot > qmap->size())
                throw EvalError(EvalError::Kind::UnboundSlot,
                                "slot N" + std::to_string(t.slot) + " not bound");
            return qmap->items[static_cast<std::size_t>(t.slot - 1)].surface;
        }
        return "N" + std::to_string(t.slot);
    }
    return format_number(t.value);
}

void infix_visit(const ExprTree& t, const QuantityMap* qmap, std::string& out) {
    if (t.node.is_leaf()) {
        out += leaf_text(t.node, qmap);
        return;
    }
    OpKind op = t.node.op;
    int prec = precedence(op);
    bool right_assoc = op == OpKind::Pow;

    auto emit_child = [&](const ExprTree& child, bool is_right) {
        bool parens = false;
        if (child.node.is_operator()) {
            int cp = precedence(child.node.op);
            if (cp < prec) parens = true;
            // Equal precedence: protect the side that associativity does not cover.
            else if (cp == prec && (is_right != right_assoc)) parens = true;
        }
        if (parens) out += '(';
        infix_visit(child, qmap, out);
        if (parens) out += ')';
    };

    emit_child(*t.left, false);
    out += ascii_glyph(op);
    emit_child(*t.right, true);
}

}  // namespace

std::string to_infix(const ExprTree& tree, const QuantityMap& qmap) {
    std::string out;
    infix_visit(tree, &qmap, out);
    return out;
}

std::string to_infix_slots(const ExprTree& tree) {
    std::string out;
    infix_visit(tree, nullptr, out);
    return out;
}

// --- evaluation ---------------------------------------------------------------

double evaluate(const ExprTree& tree, const QuantityMap& qmap) {
    double result = 0.0;
    switch (tree.node.kind) {
        case ExprToken::Kind::Constant: result = tree.node.value; break;
        case ExprToken::Kind::QuantitySlot: result = qmap.slot_value(tree.node.slot); break;
        case ExprToken::Kind::Operator: {
            double l = evaluate(*tree.left, qmap);
            double r = evaluate(*tree.right, qmap);
            switch (tree.node.op) {
                case OpKind::Add: result = l + r; break;
                case OpKind::Sub: result = l - r; break;
                case OpKind::Mul: result = l * r; break;
                case OpKind::Div:
                    if (r == 0.0)
                        throw EvalError(EvalError::Kind::DivisionByZero, "division by zero");
                    result = l / r;
                    break;
                case OpKind::Pow: result = std::pow(l, r); break;
            }
            break;
        }
    }
    if (!std::isfinite(result))
        throw EvalError(EvalError::Kind::NonFinite, "non-finite result");
    return result;
}

bool answers_match(double a, double b) {
    if (!std::isfinite(a) || !std::isfinite(b)) return false;
    return std::abs(a - b) <= 1e-4 * std::max(1.0, std::abs(b));
}

std::string format_number(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    assert(ec == std::errc());
    return std::string(buf, ptr);
}

// --- quantity abstraction -------------------------------------------------------

namespace {

bool is_number_token(std::string_view tok) {
    if (tok.empty()) return false;
    bool percent = tok.back() == '%';
    if (percent) tok.remove_suffix(1);
    if (tok.empty()) return false;
    bool seen_digit = false, seen_dot = false;
    for (char c : tok) {
        if (std::isdigit(static_cast<unsigned char>(c))) {
            seen_digit = true;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            return false;
        }
    }
    return seen_digit;
}

bool is_punct(char c) {
    return c == '.' || c == ',' || c == '?' || c == '!' || c == ':' || c == ';' || c == '(' ||
           c == ')' || c == '"';
}

// Whitespace split, then leading/trailing punctuation peeled into their own
// tokens. A trailing '.' on a number like "3.5" stays only if followed by a
// digit, which the peel handles naturally (peels one '.' at most when final).
std::vector<std::string> tokenize_text(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == start) continue;
        std::string_view word = text.substr(start, i - start);
        // Peel leading punctuation.
        while (!word.empty() && is_punct(word.front())) {
            out.emplace_back(1, word.front());
            word.remove_prefix(1);
        }
        // Peel trailing punctuation, preserving decimal points inside numbers.
        std::vector<std::string> tail;
        while (!word.empty() && is_punct(word.back())) {
            if (word.back() == '.' && is_number_token(word)) break;
            tail.emplace_back(1, word.back());
            word.remove_suffix(1);
        }
        if (!word.empty()) out.emplace_back(word);
        for (auto it = tail.rbegin(); it != tail.rend(); ++it) out.push_back(*it);
    }
    return out;
}

}  // namespace

bool is_slot_token(std::string_view tok, int* index) {
    if (tok.size() < 2 || tok[0] != 'N') return false;
    int v = 0;
    for (std::size_t i = 1; i < tok.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
        v = v * 10 + (tok[i] - '0');
    }
    if (v < 1) return false;
    if (index) *index = v;
    return true;
}

AbstractedText abstract_quantities(std::string_view text, int max_slots) {
    AbstractedText out;
    out.tokens = tokenize_text(text);
    for (auto& tok : out.tokens) {
        if (!is_number_token(tok)) continue;
        double v = 0.0;
        if (!parse_number_token(tok, &v)) continue;
        if (out.qmap.size() >= max_slots)
            throw CapacityError("more than " + std::to_string(max_slots) +
                                " quantities in problem text");
        out.qmap.items.push_back({tok, v});
        tok = "N" + std::to_string(out.qmap.size());
    }
    return out;
}

}  // namespace esib
