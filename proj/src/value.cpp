#include "flowc/value.hpp"

namespace flowc::lang {

std::string_view Value::type_name() const
{
    return std::visit(
        [](const auto& v) -> std::string_view {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, None>) return "NoneType";
            else if constexpr (std::is_same_v<T, double>) return "number";
            else if constexpr (std::is_same_v<T, bool>) return "bool";
            else if constexpr (std::is_same_v<T, std::string>) return "str";
            else if constexpr (std::is_same_v<T, ListPtr>) return "list";
            else if constexpr (std::is_same_v<T, ObjectPtr>) return v->type_name();
            else return "builtin_function";
        },
        v_);
}

bool Value::truthy() const
{
    return std::visit(
        [](const auto& v) -> bool {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, None>) return false;
            else if constexpr (std::is_same_v<T, double>) return v != 0.0;
            else if constexpr (std::is_same_v<T, bool>) return v;
            else if constexpr (std::is_same_v<T, std::string>) return !v.empty();
            else if constexpr (std::is_same_v<T, ListPtr>) return !v->empty();
            else return true;
        },
        v_);
}

std::string Value::str() const
{
    if (const auto* s = std::get_if<std::string>(&v_))
        return *s;
    return repr();
}

std::string Value::repr() const
{
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, None>) {
                return "None";
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "True" : "False";
            } else if constexpr (std::is_same_v<T, std::string>) {
                char quote = (v.find('\'') != std::string::npos && v.find('"') == std::string::npos) ? '"' : '\'';
                std::string out(1, quote);
                for (char c : v) {
                    if (c == '\\' || c == quote)
                        out += '\\';
                    if (c == '\n')
                        out += "\\n";
                    else if (c == '\t')
                        out += "\\t";
                    else
                        out += c;
                }
                return out + quote;
            } else if constexpr (std::is_same_v<T, ListPtr>) {
                std::string out = "[";
                for (size_t i = 0; i < v->size(); ++i) {
                    if (i)
                        out += ", ";
                    out += (*v)[i].repr();
                }
                return out + "]";
            } else if constexpr (std::is_same_v<T, ObjectPtr>) {
                return "<" + std::string(v->type_name()) + " object>";
            } else {
                return "<built-in function " + v->name + ">";
            }
        },
        v_);
}

bool operator==(const Value& a, const Value& b)
{
    if (a.v_.index() != b.v_.index())
        return false;
    if (a.is_list()) {
        const auto& la = *a.list();
        const auto& lb = *b.list();
        return la == lb;
    }
    if (a.is_object()) {
        const auto& oa = a.object();
        const auto& ob = b.object();
        if (oa == ob)
            return true;
        return oa->handle != 0 && oa->handle == ob->handle && oa->type_name() == ob->type_name();
    }
    if (a.is_function())
        return a.function()->name == b.function()->name;
    return a.v_ == b.v_;
}

Value Object::get_attr(const std::string& name)
{
    throw EvalError("'" + std::string(type_name()) + "' object has no attribute '" + name + "'");
}

void Object::set_attr(const std::string& name, const Value&)
{
    throw EvalError("attribute '" + name + "' of '" + std::string(type_name()) + "' object is read-only");
}

Value Object::call_method(const std::string& name, const std::vector<Value>&)
{
    throw EvalError("'" + std::string(type_name()) + "' object has no method '" + name + "'");
}

FunctionPtr make_function(std::string name, std::function<Value(const std::vector<Value>&)> fn)
{
    return std::make_shared<const NativeFunction>(NativeFunction{std::move(name), std::move(fn)});
}

void expect_arity(std::string_view fn, const std::vector<Value>& args, size_t min, size_t max)
{
    if (args.size() < min || args.size() > max) {
        std::string expected = min == max ? std::to_string(min)
                                          : std::to_string(min) + " to " + std::to_string(max);
        throw EvalError(std::string(fn) + "() takes " + expected + " argument(s), " +
                        std::to_string(args.size()) + " given");
    }
}

double number_arg(std::string_view fn, const std::vector<Value>& args, size_t index)
{
    if (index >= args.size() || !args[index].is_number())
        throw EvalError(std::string(fn) + "() argument " + std::to_string(index + 1) + " must be a number");
    return args[index].number();
}

double number_arg_or(std::string_view fn, const std::vector<Value>& args, size_t index, double fallback)
{
    if (index >= args.size() || args[index].is_none())
        return fallback;
    return number_arg(fn, args, index);
}

const std::string& string_arg(std::string_view fn, const std::vector<Value>& args, size_t index)
{
    if (index >= args.size() || !args[index].is_string())
        throw EvalError(std::string(fn) + "() argument " + std::to_string(index + 1) + " must be a string");
    return args[index].string();
}

}  // namespace flowc::lang
