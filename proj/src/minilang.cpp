#include "flowc/minilang.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace flowc::lang {

SyntaxError::SyntaxError(int column, const std::string& message)
    : std::runtime_error("column " + std::to_string(column) + ": " + message), column_(column)
{
}

std::string_view op_spelling(UnaryOp op)
{
    return op == UnaryOp::Neg ? "-" : "not";
}

std::string_view op_spelling(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Mod: return "%";
    case BinaryOp::Eq: return "==";
    case BinaryOp::Ne: return "!=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    }
    return "?";
}

bool is_reserved_word(std::string_view word)
{
    // Python keywords (2 and 3); identifiers must stay valid in emitted code.
    static constexpr std::array<std::string_view, 37> kWords{
        "False", "None",   "True",  "and",    "as",     "assert", "async", "await",    "break",  "class",
        "continue", "def", "del",   "elif",   "else",   "except", "exec",  "finally", "for",    "from",
        "global", "if",    "import", "in",    "is",     "lambda", "nonlocal", "not",  "or",     "pass",
        "print", "raise",  "return", "try",   "while",  "with",   "yield"};
    return std::find(kWords.begin(), kWords.end(), word) != kWords.end();
}

std::string format_number(double value)
{
    if (value == 0.0)
        return "0";
    if (std::isfinite(value) && value == std::trunc(value) && std::fabs(value) < 1e16) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof buf, static_cast<long long>(value));
        return std::string(buf, res.ptr);
    }
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

namespace {

enum class Tok { Number, String, Name, Op, End };

struct Token {
    Tok kind;
    std::string text;  // operator spelling, identifier, raw number text, decoded string
    int column;
    char quote = '"';
    double number = 0;
};

bool is_ident_start(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}

bool is_digit(char c)
{
    return c >= '0' && c <= '9';
}

std::vector<Token> tokenize(std::string_view src)
{
    std::vector<Token> tokens;
    size_t i = 0;
    auto col = [&](size_t at) { return static_cast<int>(at) + 1; };
    while (i < src.size()) {
        char c = src[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            ++i;
            continue;
        }
        if (c == '#')
            break;
        size_t start = i;
        if (is_digit(c) || (c == '.' && i + 1 < src.size() && is_digit(src[i + 1]))) {
            while (i < src.size() && is_digit(src[i]))
                ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (i < src.size() && is_digit(src[i]))
                    ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                size_t save = i++;
                if (i < src.size() && (src[i] == '+' || src[i] == '-'))
                    ++i;
                if (i < src.size() && is_digit(src[i])) {
                    while (i < src.size() && is_digit(src[i]))
                        ++i;
                } else {
                    i = save;
                }
            }
            if (i < src.size() && is_ident_start(src[i]))
                throw SyntaxError(col(i), "invalid number literal");
            std::string text(src.substr(start, i - start));
            Token t{Tok::Number, text, col(start)};
            t.number = std::strtod(text.c_str(), nullptr);
            tokens.push_back(std::move(t));
            continue;
        }
        if (is_ident_start(c)) {
            while (i < src.size() && (is_ident_start(src[i]) || is_digit(src[i])))
                ++i;
            tokens.push_back({Tok::Name, std::string(src.substr(start, i - start)), col(start)});
            continue;
        }
        if (c == '"' || c == '\'') {
            char quote = c;
            std::string value;
            ++i;
            bool closed = false;
            while (i < src.size()) {
                char d = src[i++];
                if (d == quote) {
                    closed = true;
                    break;
                }
                if (d == '\\') {
                    if (i >= src.size())
                        break;
                    char e = src[i++];
                    switch (e) {
                    case 'n': value += '\n'; break;
                    case 't': value += '\t'; break;
                    case '\\': value += '\\'; break;
                    case '\'': value += '\''; break;
                    case '"': value += '"'; break;
                    default: throw SyntaxError(col(i - 2), std::string("unsupported escape '\\") + e + "'");
                    }
                    continue;
                }
                value += d;
            }
            if (!closed)
                throw SyntaxError(col(start), "unterminated string literal");
            Token t{Tok::String, std::move(value), col(start)};
            t.quote = quote;
            tokens.push_back(std::move(t));
            continue;
        }
        static constexpr std::array<std::string_view, 10> kTwoChar{"==", "!=", "<=", ">=", "+=",
                                                                   "-=", "*=", "/=", "%=", "**"};
        if (i + 1 < src.size()) {
            std::string_view two = src.substr(i, 2);
            if (std::find(kTwoChar.begin(), kTwoChar.end(), two) != kTwoChar.end()) {
                if (two == "**")
                    throw SyntaxError(col(i), "operator '**' is not supported");
                tokens.push_back({Tok::Op, std::string(two), col(i)});
                i += 2;
                continue;
            }
        }
        static constexpr std::string_view kOneChar = "+-*/%<>=()[].,;";
        if (kOneChar.find(c) != std::string_view::npos) {
            tokens.push_back({Tok::Op, std::string(1, c), col(i)});
            ++i;
            continue;
        }
        throw SyntaxError(col(i), std::string("unexpected character '") + c + "'");
    }
    tokens.push_back({Tok::End, "", col(std::min(i, src.size()))});
    return tokens;
}

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(tokenize(src)) {}

    Stmt statement()
    {
        Stmt stmt = statement_body();
        if (is_op(";"))
            advance();
        expect_end();
        return stmt;
    }

    ExprPtr full_expression()
    {
        ExprPtr e = expression();
        expect_end();
        return e;
    }

private:
    std::vector<Token> tokens_;
    size_t pos_ = 0;

    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    bool is_op(std::string_view op) const { return peek().kind == Tok::Op && peek().text == op; }
    bool is_keyword(std::string_view kw) const { return peek().kind == Tok::Name && peek().text == kw; }

    [[noreturn]] void fail(const Token& at, const std::string& message) const
    {
        throw SyntaxError(at.column, message);
    }

    [[noreturn]] void unexpected() const
    {
        const Token& t = peek();
        if (t.kind == Tok::End)
            fail(t, "unexpected end of input");
        fail(t, "unexpected token '" + t.text + "'");
    }

    void expect_op(std::string_view op)
    {
        if (!is_op(op)) {
            if (peek().kind == Tok::End)
                fail(peek(), "expected '" + std::string(op) + "' before end of input");
            fail(peek(), "expected '" + std::string(op) + "' but found '" + peek().text + "'");
        }
        advance();
    }

    void expect_end()
    {
        if (peek().kind != Tok::End)
            unexpected();
    }

    Stmt statement_body()
    {
        if (is_keyword("from")) {
            advance();
            if (peek().kind != Tok::Name || is_reserved_word(peek().text))
                fail(peek(), "expected a module name after 'from'");
            std::string module = advance().text;
            while (is_op(".")) {
                advance();
                if (peek().kind != Tok::Name)
                    fail(peek(), "expected a module name after '.'");
                module += "." + advance().text;
            }
            if (!is_keyword("import"))
                fail(peek(), "expected 'import'");
            advance();
            expect_op("*");
            return Import{std::move(module)};
        }
        if (is_keyword("import"))
            fail(peek(), "only 'from <module> import *' is supported");
        if (is_keyword("print")) {
            advance();
            Print print;
            if (peek().kind != Tok::End && !is_op(";")) {
                print.args.push_back(expression());
                while (is_op(",")) {
                    advance();
                    print.args.push_back(expression());
                }
            }
            return print;
        }

        ExprPtr lhs = expression();
        static constexpr std::array<std::pair<std::string_view, AssignOp>, 6> kAssignOps{{
            {"=", AssignOp::Set},
            {"+=", AssignOp::Add},
            {"-=", AssignOp::Sub},
            {"*=", AssignOp::Mul},
            {"/=", AssignOp::Div},
            {"%=", AssignOp::Mod},
        }};
        for (const auto& [spelling, op] : kAssignOps) {
            if (!is_op(spelling))
                continue;
            const Token& at = advance();
            const bool assignable = lhs->parens == 0 && (std::holds_alternative<Ident>(lhs->node) ||
                                                         std::holds_alternative<Attr>(lhs->node) ||
                                                         std::holds_alternative<Index>(lhs->node));
            if (!assignable)
                fail(at, "cannot assign to this expression");
            ExprPtr value = expression();
            if (is_op("=") || is_op("+=") || is_op("-=") || is_op("*=") || is_op("/=") || is_op("%="))
                fail(peek(), "chained assignment is not supported");
            return Assign{std::move(lhs), std::move(value), op};
        }
        if (is_op(","))
            fail(peek(), "tuples are not supported");
        return ExprStmt{std::move(lhs)};
    }

    ExprPtr expression() { return or_expr(); }

    static ExprPtr binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs)
    {
        int column = lhs->column;
        return std::make_shared<const Expr>(Expr{Binary{op, std::move(lhs), std::move(rhs)}, 0, column});
    }

    ExprPtr or_expr()
    {
        ExprPtr lhs = and_expr();
        while (is_keyword("or")) {
            advance();
            lhs = binary(BinaryOp::Or, lhs, and_expr());
        }
        return lhs;
    }

    ExprPtr and_expr()
    {
        ExprPtr lhs = not_expr();
        while (is_keyword("and")) {
            advance();
            lhs = binary(BinaryOp::And, lhs, not_expr());
        }
        return lhs;
    }

    ExprPtr not_expr()
    {
        if (is_keyword("not")) {
            int column = advance().column;
            ExprPtr operand = not_expr();
            return std::make_shared<const Expr>(Expr{Unary{UnaryOp::Not, std::move(operand)}, 0, column});
        }
        return comparison();
    }

    std::optional<BinaryOp> comparison_op() const
    {
        if (peek().kind != Tok::Op)
            return std::nullopt;
        const std::string& t = peek().text;
        if (t == "==") return BinaryOp::Eq;
        if (t == "!=") return BinaryOp::Ne;
        if (t == "<") return BinaryOp::Lt;
        if (t == "<=") return BinaryOp::Le;
        if (t == ">") return BinaryOp::Gt;
        if (t == ">=") return BinaryOp::Ge;
        return std::nullopt;
    }

    ExprPtr comparison()
    {
        ExprPtr lhs = additive();
        if (auto op = comparison_op()) {
            advance();
            lhs = binary(*op, lhs, additive());
            // Python chains `a < b < c` as a conjunction; a left-nested tree
            // would evaluate differently, so the form is rejected outright.
            if (comparison_op())
                fail(peek(), "chained comparisons are not supported");
        }
        return lhs;
    }

    ExprPtr additive()
    {
        ExprPtr lhs = term();
        while (is_op("+") || is_op("-")) {
            BinaryOp op = advance().text == "+" ? BinaryOp::Add : BinaryOp::Sub;
            lhs = binary(op, lhs, term());
        }
        return lhs;
    }

    ExprPtr term()
    {
        ExprPtr lhs = unary();
        while (is_op("*") || is_op("/") || is_op("%")) {
            const std::string& t = advance().text;
            BinaryOp op = t == "*" ? BinaryOp::Mul : t == "/" ? BinaryOp::Div : BinaryOp::Mod;
            lhs = binary(op, lhs, unary());
        }
        return lhs;
    }

    ExprPtr unary()
    {
        if (is_op("-")) {
            int column = advance().column;
            ExprPtr operand = unary();
            return std::make_shared<const Expr>(Expr{Unary{UnaryOp::Neg, std::move(operand)}, 0, column});
        }
        return postfix();
    }

    ExprPtr postfix()
    {
        ExprPtr base = primary();
        for (;;) {
            int column = base->column;
            if (is_op("(")) {
                advance();
                Call call{base, {}};
                if (!is_op(")")) {
                    call.args.push_back(expression());
                    while (is_op(",")) {
                        advance();
                        call.args.push_back(expression());
                    }
                }
                expect_op(")");
                base = std::make_shared<const Expr>(Expr{std::move(call), 0, column});
            } else if (is_op(".")) {
                advance();
                if (peek().kind != Tok::Name || is_reserved_word(peek().text))
                    fail(peek(), "expected an attribute name after '.'");
                std::string name = advance().text;
                base = std::make_shared<const Expr>(Expr{Attr{base, std::move(name)}, 0, column});
            } else if (is_op("[")) {
                advance();
                ExprPtr index = expression();
                expect_op("]");
                base = std::make_shared<const Expr>(Expr{Index{base, std::move(index)}, 0, column});
            } else {
                return base;
            }
        }
    }

    ExprPtr primary()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Number: {
            advance();
            return std::make_shared<const Expr>(Expr{NumberLit{t.number, t.text}, 0, t.column});
        }
        case Tok::String: {
            advance();
            return std::make_shared<const Expr>(Expr{StringLit{t.text, t.quote}, 0, t.column});
        }
        case Tok::Name: {
            if (t.text == "True" || t.text == "False") {
                advance();
                return std::make_shared<const Expr>(Expr{BoolLit{t.text == "True"}, 0, t.column});
            }
            if (t.text == "None") {
                advance();
                return std::make_shared<const Expr>(Expr{NoneLit{}, 0, t.column});
            }
            if (is_reserved_word(t.text))
                fail(t, "reserved word '" + t.text + "' cannot be used here");
            advance();
            return std::make_shared<const Expr>(Expr{Ident{t.text}, 0, t.column});
        }
        case Tok::Op:
            if (t.text == "(") {
                int column = advance().column;
                ExprPtr inner = expression();
                expect_op(")");
                Expr wrapped = *inner;
                wrapped.parens += 1;
                wrapped.column = column;
                return std::make_shared<const Expr>(std::move(wrapped));
            }
            unexpected();
        case Tok::End:
            unexpected();
        }
        unexpected();
    }
};

// Binding strength, higher binds tighter.
enum Prec { kOr = 1, kAnd, kNot, kCompare, kAdd, kMul, kUnary, kPostfix, kAtom };

int binary_prec(BinaryOp op)
{
    switch (op) {
    case BinaryOp::Or: return kOr;
    case BinaryOp::And: return kAnd;
    case BinaryOp::Add:
    case BinaryOp::Sub: return kAdd;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return kMul;
    default: return kCompare;
    }
}

int natural_prec(const Expr& e)
{
    return std::visit(
        [](const auto& n) -> int {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Binary>)
                return binary_prec(n.op);
            else if constexpr (std::is_same_v<T, Unary>)
                return n.op == UnaryOp::Neg ? kUnary : kNot;
            else if constexpr (std::is_same_v<T, Attr> || std::is_same_v<T, Index> || std::is_same_v<T, Call>)
                return kPostfix;
            else
                return kAtom;
        },
        e.node);
}

std::string quote_string(const std::string& value, char quote)
{
    std::string out(1, quote);
    for (char c : value) {
        switch (c) {
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\\': out += "\\\\"; break;
        default:
            if (c == quote)
                out += '\\';
            out += c;
        }
    }
    out += quote;
    return out;
}

void emit(const Expr& e, int min_prec, std::string& out);

void emit_bare(const Expr& e, std::string& out)
{
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                out += n.text.empty() ? format_number(n.value) : n.text;
            } else if constexpr (std::is_same_v<T, StringLit>) {
                out += quote_string(n.value, n.quote);
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                out += n.value ? "True" : "False";
            } else if constexpr (std::is_same_v<T, NoneLit>) {
                out += "None";
            } else if constexpr (std::is_same_v<T, Ident>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, Attr>) {
                emit(*n.base, kPostfix, out);
                if (std::holds_alternative<NumberLit>(n.base->node) && n.base->parens == 0)
                    out += ' ';
                out += '.';
                out += n.name;
            } else if constexpr (std::is_same_v<T, Index>) {
                emit(*n.base, kPostfix, out);
                out += '[';
                emit(*n.index, kOr, out);
                out += ']';
            } else if constexpr (std::is_same_v<T, Call>) {
                emit(*n.callee, kPostfix, out);
                out += '(';
                for (size_t i = 0; i < n.args.size(); ++i) {
                    if (i)
                        out += ", ";
                    emit(*n.args[i], kOr, out);
                }
                out += ')';
            } else if constexpr (std::is_same_v<T, Unary>) {
                if (n.op == UnaryOp::Neg) {
                    out += '-';
                    emit(*n.operand, kUnary, out);
                } else {
                    out += "not ";
                    emit(*n.operand, kNot, out);
                }
            } else if constexpr (std::is_same_v<T, Binary>) {
                int p = binary_prec(n.op);
                // comparisons do not chain; arithmetic and logic associate left
                emit(*n.lhs, p == kCompare ? p + 1 : p, out);
                out += ' ';
                out += op_spelling(n.op);
                out += ' ';
                emit(*n.rhs, p + 1, out);
            }
        },
        e.node);
}

void emit(const Expr& e, int min_prec, std::string& out)
{
    int parens = e.parens;
    if (parens == 0 && natural_prec(e) < min_prec)
        parens = 1;
    for (int i = 0; i < parens; ++i)
        out += '(';
    emit_bare(e, out);
    for (int i = 0; i < parens; ++i)
        out += ')';
}

std::string_view assign_spelling(AssignOp op)
{
    switch (op) {
    case AssignOp::Set: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
    case AssignOp::Mod: return "%=";
    }
    return "=";
}

}  // namespace

Stmt parse_statement(std::string_view text)
{
    return Parser(text).statement();
}

ExprPtr parse_expression(std::string_view text)
{
    return Parser(text).full_expression();
}

std::string to_source(const Expr& expr)
{
    std::string out;
    emit(expr, kOr, out);
    return out;
}

std::string to_source(const Stmt& stmt)
{
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Assign>) {
                return to_source(*s.target) + " " + std::string(assign_spelling(s.op)) + " " + to_source(*s.value);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                return to_source(*s.expr);
            } else if constexpr (std::is_same_v<T, Print>) {
                std::string out = "print";
                for (size_t i = 0; i < s.args.size(); ++i) {
                    out += i ? ", " : " ";
                    out += to_source(*s.args[i]);
                }
                return out;
            } else {
                return "from " + s.module + " import *";
            }
        },
        stmt);
}

std::string to_sexpr(const Expr& expr)
{
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>)
                return format_number(n.value);
            else if constexpr (std::is_same_v<T, StringLit>)
                return quote_string(n.value, '"');
            else if constexpr (std::is_same_v<T, BoolLit>)
                return n.value ? "True" : "False";
            else if constexpr (std::is_same_v<T, NoneLit>)
                return "None";
            else if constexpr (std::is_same_v<T, Ident>)
                return n.name;
            else if constexpr (std::is_same_v<T, Attr>)
                return "(. " + to_sexpr(*n.base) + " " + n.name + ")";
            else if constexpr (std::is_same_v<T, Index>)
                return "([] " + to_sexpr(*n.base) + " " + to_sexpr(*n.index) + ")";
            else if constexpr (std::is_same_v<T, Call>) {
                std::string out = "(call " + to_sexpr(*n.callee);
                for (const auto& a : n.args)
                    out += " " + to_sexpr(*a);
                return out + ")";
            } else if constexpr (std::is_same_v<T, Unary>)
                return std::string("(") + (n.op == UnaryOp::Neg ? "neg" : "not") + " " + to_sexpr(*n.operand) + ")";
            else
                return "(" + std::string(op_spelling(n.op)) + " " + to_sexpr(*n.lhs) + " " + to_sexpr(*n.rhs) + ")";
        },
        expr.node);
}

}  // namespace flowc::lang
