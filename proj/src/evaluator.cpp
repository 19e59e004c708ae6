#include "flowc/evaluator.hpp"

#include <algorithm>
#include <cmath>

namespace flowc::lang {

namespace {

Value python_len(const std::vector<Value>& args)
{
    expect_arity("len", args, 1, 1);
    const Value& v = args[0];
    if (v.is_list())
        return static_cast<double>(v.list()->size());
    if (v.is_string())
        return static_cast<double>(v.string().size());
    throw EvalError("object of type '" + std::string(v.type_name()) + "' has no len()");
}

Value extremum(std::string_view name, const std::vector<Value>& args, bool want_max)
{
    std::vector<Value> items = args;
    if (args.size() == 1 && args[0].is_list())
        items = *args[0].list();
    if (items.empty())
        throw EvalError(std::string(name) + "() arg is an empty sequence");
    double best = number_arg(name, items, 0);
    for (size_t i = 1; i < items.size(); ++i) {
        double v = number_arg(name, items, i);
        best = want_max ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

double to_index(const Value& index, size_t size)
{
    if (!index.is_number() || index.number() != std::trunc(index.number()))
        throw EvalError("list indices must be integers");
    double i = index.number();
    if (i < 0)
        i += static_cast<double>(size);
    if (i < 0 || i >= static_cast<double>(size))
        throw EvalError("index out of range");
    return i;
}

Value arithmetic(BinaryOp op, const Value& a, const Value& b)
{
    if (op == BinaryOp::Add) {
        if (a.is_string() && b.is_string())
            return a.string() + b.string();
        if (a.is_list() && b.is_list()) {
            List joined = *a.list();
            joined.insert(joined.end(), b.list()->begin(), b.list()->end());
            return Value::list(std::move(joined));
        }
    }
    if (!a.is_number() || !b.is_number())
        throw EvalError("unsupported operand types for " + std::string(op_spelling(op)) + ": '" +
                        std::string(a.type_name()) + "' and '" + std::string(b.type_name()) + "'");
    double x = a.number();
    double y = b.number();
    switch (op) {
    case BinaryOp::Add: return x + y;
    case BinaryOp::Sub: return x - y;
    case BinaryOp::Mul: return x * y;
    case BinaryOp::Div:
        if (y == 0.0)
            throw EvalError("division by zero");
        return x / y;
    case BinaryOp::Mod: {
        if (y == 0.0)
            throw EvalError("modulo by zero");
        // result takes the sign of the divisor, as in Python
        double r = std::fmod(x, y);
        if (r != 0.0 && ((r < 0.0) != (y < 0.0)))
            r += y;
        return r;
    }
    default: break;
    }
    throw EvalError("internal: not an arithmetic operator");
}

Value compare(BinaryOp op, const Value& a, const Value& b)
{
    if (op == BinaryOp::Eq)
        return a == b;
    if (op == BinaryOp::Ne)
        return !(a == b);
    int order;
    if (a.is_number() && b.is_number()) {
        order = a.number() < b.number() ? -1 : (a.number() > b.number() ? 1 : 0);
    } else if (a.is_string() && b.is_string()) {
        int c = a.string().compare(b.string());
        order = c < 0 ? -1 : (c > 0 ? 1 : 0);
    } else {
        throw EvalError("cannot compare '" + std::string(a.type_name()) + "' with '" + std::string(b.type_name()) +
                        "' using " + std::string(op_spelling(op)));
    }
    switch (op) {
    case BinaryOp::Lt: return order < 0;
    case BinaryOp::Le: return order <= 0;
    case BinaryOp::Gt: return order > 0;
    case BinaryOp::Ge: return order >= 0;
    default: break;
    }
    throw EvalError("internal: not a comparison");
}

std::vector<Value> eval_args(const std::vector<ExprPtr>& args, Environment& env)
{
    std::vector<Value> values;
    values.reserve(args.size());
    for (const auto& a : args)
        values.push_back(eval_expression(*a, env));
    return values;
}

BinaryOp assign_to_binary(AssignOp op)
{
    switch (op) {
    case AssignOp::Add: return BinaryOp::Add;
    case AssignOp::Sub: return BinaryOp::Sub;
    case AssignOp::Mul: return BinaryOp::Mul;
    case AssignOp::Div: return BinaryOp::Div;
    case AssignOp::Mod: return BinaryOp::Mod;
    case AssignOp::Set: break;
    }
    return BinaryOp::Add;
}

}  // namespace

Environment::Environment()
{
    define_builtin("len", make_function("len", python_len));
    define_builtin("abs", make_function("abs", [](const std::vector<Value>& args) -> Value {
                       expect_arity("abs", args, 1, 1);
                       return std::fabs(number_arg("abs", args, 0));
                   }));
    define_builtin("min", make_function("min", [](const std::vector<Value>& args) {
                       return extremum("min", args, false);
                   }));
    define_builtin("max", make_function("max", [](const std::vector<Value>& args) {
                       return extremum("max", args, true);
                   }));
    define_builtin("int", make_function("int", [](const std::vector<Value>& args) -> Value {
                       expect_arity("int", args, 1, 1);
                       return std::trunc(number_arg("int", args, 0));
                   }));
    define_builtin("floor", make_function("floor", [](const std::vector<Value>& args) -> Value {
                       expect_arity("floor", args, 1, 1);
                       return std::floor(number_arg("floor", args, 0));
                   }));
    define_builtin("float", make_function("float", [](const std::vector<Value>& args) -> Value {
                       expect_arity("float", args, 1, 1);
                       return number_arg("float", args, 0);
                   }));
    define_builtin("str", make_function("str", [](const std::vector<Value>& args) -> Value {
                       expect_arity("str", args, 1, 1);
                       return args[0].str();
                   }));
}

const Value* Environment::lookup(const std::string& name) const
{
    if (auto it = variables.find(name); it != variables.end())
        return &it->second;
    if (auto it = imported_.find(name); it != imported_.end())
        return &it->second;
    if (auto it = builtins_.find(name); it != builtins_.end())
        return &it->second;
    return nullptr;
}

void Environment::define_builtin(const std::string& name, Value value)
{
    builtins_[name] = std::move(value);
}

void Environment::register_module(const std::string& name, ModuleLoader loader)
{
    modules_[name] = std::move(loader);
}

void Environment::import_all(const std::string& module)
{
    auto it = modules_.find(module);
    if (it == modules_.end())
        throw EvalError("no module named '" + module + "'");
    if (!loaded_.insert(module).second)
        return;
    for (auto& [name, value] : it->second())
        imported_[name] = std::move(value);
}

Value eval_expression(const Expr& expr, Environment& env)
{
    return std::visit(
        [&](const auto& n) -> Value {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, StringLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, BoolLit>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, NoneLit>) {
                return Value();
            } else if constexpr (std::is_same_v<T, Ident>) {
                const Value* v = env.lookup(n.name);
                if (!v)
                    throw EvalError("name '" + n.name + "' is not defined");
                return *v;
            } else if constexpr (std::is_same_v<T, Attr>) {
                Value base = eval_expression(*n.base, env);
                if (!base.is_object())
                    throw EvalError("'" + std::string(base.type_name()) + "' object has no attribute '" + n.name + "'");
                return base.object()->get_attr(n.name);
            } else if constexpr (std::is_same_v<T, Index>) {
                Value base = eval_expression(*n.base, env);
                Value index = eval_expression(*n.index, env);
                if (base.is_list())
                    return (*base.list())[static_cast<size_t>(to_index(index, base.list()->size()))];
                if (base.is_string())
                    return std::string(1, base.string()[static_cast<size_t>(to_index(index, base.string().size()))]);
                throw EvalError("'" + std::string(base.type_name()) + "' object is not subscriptable");
            } else if constexpr (std::is_same_v<T, Call>) {
                if (const auto* attr = std::get_if<Attr>(&n.callee->node); attr && n.callee->parens == 0) {
                    Value base = eval_expression(*attr->base, env);
                    std::vector<Value> args = eval_args(n.args, env);
                    if (!base.is_object())
                        throw EvalError("'" + std::string(base.type_name()) + "' object has no method '" +
                                        attr->name + "'");
                    return base.object()->call_method(attr->name, args);
                }
                Value callee = eval_expression(*n.callee, env);
                std::vector<Value> args = eval_args(n.args, env);
                if (!callee.is_function())
                    throw EvalError("'" + std::string(callee.type_name()) + "' object is not callable");
                return callee.function()->fn(args);
            } else if constexpr (std::is_same_v<T, Unary>) {
                Value operand = eval_expression(*n.operand, env);
                if (n.op == UnaryOp::Not)
                    return !operand.truthy();
                if (!operand.is_number())
                    throw EvalError("bad operand type for unary -: '" + std::string(operand.type_name()) + "'");
                return -operand.number();
            } else {
                if (n.op == BinaryOp::And) {
                    Value lhs = eval_expression(*n.lhs, env);
                    return lhs.truthy() ? eval_expression(*n.rhs, env) : lhs;
                }
                if (n.op == BinaryOp::Or) {
                    Value lhs = eval_expression(*n.lhs, env);
                    return lhs.truthy() ? lhs : eval_expression(*n.rhs, env);
                }
                Value lhs = eval_expression(*n.lhs, env);
                Value rhs = eval_expression(*n.rhs, env);
                switch (n.op) {
                case BinaryOp::Eq:
                case BinaryOp::Ne:
                case BinaryOp::Lt:
                case BinaryOp::Le:
                case BinaryOp::Gt:
                case BinaryOp::Ge: return compare(n.op, lhs, rhs);
                default: return arithmetic(n.op, lhs, rhs);
                }
            }
        },
        expr.node);
}

namespace {

void store(const Expr& target, Value value, Environment& env)
{
    if (const auto* id = std::get_if<Ident>(&target.node)) {
        env.variables[id->name] = std::move(value);
    } else if (const auto* attr = std::get_if<Attr>(&target.node)) {
        Value base = eval_expression(*attr->base, env);
        if (!base.is_object())
            throw EvalError("cannot set attribute '" + attr->name + "' on '" + std::string(base.type_name()) + "'");
        base.object()->set_attr(attr->name, value);
    } else if (const auto* idx = std::get_if<Index>(&target.node)) {
        Value base = eval_expression(*idx->base, env);
        Value index = eval_expression(*idx->index, env);
        if (!base.is_list())
            throw EvalError("'" + std::string(base.type_name()) + "' object does not support item assignment");
        (*base.list())[static_cast<size_t>(to_index(index, base.list()->size()))] = std::move(value);
    } else {
        throw EvalError("cannot assign to expression");
    }
}

}  // namespace

void exec_statement(const Stmt& stmt, Environment& env)
{
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Assign>) {
                if (s.op == AssignOp::Set) {
                    store(*s.target, eval_expression(*s.value, env), env);
                    return;
                }
                Value current = eval_expression(*s.target, env);
                Value rhs = eval_expression(*s.value, env);
                store(*s.target, arithmetic(assign_to_binary(s.op), current, rhs), env);
            } else if constexpr (std::is_same_v<T, ExprStmt>) {
                eval_expression(*s.expr, env);
            } else if constexpr (std::is_same_v<T, Print>) {
                std::string line;
                for (size_t i = 0; i < s.args.size(); ++i) {
                    if (i)
                        line += ' ';
                    line += eval_expression(*s.args[i], env).str();
                }
                env.output += line;
                env.output += '\n';
            } else {
                env.import_all(s.module);
            }
        },
        stmt);
}

}  // namespace flowc::lang
