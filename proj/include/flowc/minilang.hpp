#pragma once

// The statement/expression language written inside flowchart blocks and
// branch conditions: a strict subset of Python syntax (see docs/grammar.md).

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flowc::lang {

enum class UnaryOp { Neg, Not };

enum class BinaryOp { Add, Sub, Mul, Div, Mod, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

std::string_view op_spelling(UnaryOp op);
std::string_view op_spelling(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLit {
    double value;
    std::string text;  ///< source spelling; empty for synthesized literals
};
struct StringLit {
    std::string value;
    char quote = '"';
};
struct BoolLit {
    bool value;
};
struct NoneLit {};
struct Ident {
    std::string name;
};
struct Attr {
    ExprPtr base;
    std::string name;
};
struct Index {
    ExprPtr base;
    ExprPtr index;
};
struct Call {
    ExprPtr callee;
    std::vector<ExprPtr> args;
};
struct Unary {
    UnaryOp op;
    ExprPtr operand;
};
struct Binary {
    BinaryOp op;
    ExprPtr lhs;
    ExprPtr rhs;
};

struct Expr {
    using Node = std::variant<NumberLit, StringLit, BoolLit, NoneLit, Ident, Attr, Index, Call, Unary, Binary>;

    Node node;
    int parens = 0;  ///< explicit parenthesis pairs written around this expression
    int column = 0;  ///< 1-based column of the first token, 0 when synthesized
};

template <typename T>
ExprPtr make_expr(T node, int parens = 0)
{
    return std::make_shared<const Expr>(Expr{Expr::Node(std::move(node)), parens, 0});
}

enum class AssignOp { Set, Add, Sub, Mul, Div, Mod };

struct Assign {
    ExprPtr target;  ///< Ident, Attr or Index
    ExprPtr value;
    AssignOp op = AssignOp::Set;  ///< `x += e` is `x = x + e`
};
struct ExprStmt {
    ExprPtr expr;
};
struct Print {
    std::vector<ExprPtr> args;
};
/// `from <module> import *`
struct Import {
    std::string module;
};

using Stmt = std::variant<Assign, ExprStmt, Print, Import>;

class SyntaxError : public std::runtime_error {
public:
    SyntaxError(int column, const std::string& message);
    int column() const { return column_; }

private:
    int column_;
};

/// Parses one statement. Throws SyntaxError.
Stmt parse_statement(std::string_view text);

/// Parses a complete expression; trailing tokens are an error. Throws SyntaxError.
ExprPtr parse_expression(std::string_view text);

/// Source text for an AST; inserts parentheses only where written or required.
std::string to_source(const Expr& expr);
std::string to_source(const Stmt& stmt);

/// Prefix form for tests and debugging, e.g. `(+ 20 (* trees 7))`.
std::string to_sexpr(const Expr& expr);

/// Python-compatible rendering of a number: integral values print without a
/// fractional part, everything else in shortest round-trip form.
std::string format_number(double value);

bool is_reserved_word(std::string_view word);

}  // namespace flowc::lang
