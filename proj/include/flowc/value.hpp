#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "flowc/minilang.hpp"

namespace flowc::lang {

class Value;
class Object;
struct NativeFunction;

using List = std::vector<Value>;
using ListPtr = std::shared_ptr<List>;
using ObjectPtr = std::shared_ptr<Object>;
using FunctionPtr = std::shared_ptr<const NativeFunction>;

struct None {
    bool operator==(const None&) const = default;
};

/// Dynamic value of the mini-language. Lists and objects have reference
/// semantics, like their Python counterparts.
class Value {
public:
    using Storage = std::variant<None, double, bool, std::string, ListPtr, ObjectPtr, FunctionPtr>;

    Value() = default;
    Value(double n) : v_(n) {}
    Value(int n) : v_(static_cast<double>(n)) {}
    Value(bool b) : v_(b) {}
    Value(std::string s) : v_(std::move(s)) {}
    Value(const char* s) : v_(std::string(s)) {}
    Value(ListPtr list) : v_(std::move(list)) {}
    Value(ObjectPtr obj) : v_(std::move(obj)) {}
    Value(FunctionPtr fn) : v_(std::move(fn)) {}

    static Value list(List items) { return Value(std::make_shared<List>(std::move(items))); }

    bool is_none() const { return std::holds_alternative<None>(v_); }
    bool is_number() const { return std::holds_alternative<double>(v_); }
    bool is_bool() const { return std::holds_alternative<bool>(v_); }
    bool is_string() const { return std::holds_alternative<std::string>(v_); }
    bool is_list() const { return std::holds_alternative<ListPtr>(v_); }
    bool is_object() const { return std::holds_alternative<ObjectPtr>(v_); }
    bool is_function() const { return std::holds_alternative<FunctionPtr>(v_); }

    double number() const { return std::get<double>(v_); }
    bool boolean() const { return std::get<bool>(v_); }
    const std::string& string() const { return std::get<std::string>(v_); }
    const ListPtr& list() const { return std::get<ListPtr>(v_); }
    const ObjectPtr& object() const { return std::get<ObjectPtr>(v_); }
    const FunctionPtr& function() const { return std::get<FunctionPtr>(v_); }

    const Storage& storage() const { return v_; }

    std::string_view type_name() const;

    /// Python truthiness.
    bool truthy() const;

    /// `str(v)` as `print` shows it.
    std::string str() const;
    /// `repr(v)`, used for list elements.
    std::string repr() const;

    /// Structural for scalars and lists, identity-by-handle for objects.
    friend bool operator==(const Value& a, const Value& b);

private:
    Storage v_;
};

/// Runtime failure while evaluating mini-language code.
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Host object exposed to scripts (layouts, generators, randomizers...).
class Object {
public:
    virtual ~Object() = default;

    virtual std::string_view type_name() const = 0;
    virtual Value get_attr(const std::string& name);
    virtual void set_attr(const std::string& name, const Value& value);
    virtual Value call_method(const std::string& name, const std::vector<Value>& args);

    /// Run-local creation counter; two runs of the same program assign the
    /// same handles, which keeps final environments comparable across runs.
    std::uint64_t handle = 0;
};

struct NativeFunction {
    std::string name;
    std::function<Value(const std::vector<Value>&)> fn;
};

FunctionPtr make_function(std::string name, std::function<Value(const std::vector<Value>&)> fn);

// Argument helpers for host bindings.
void expect_arity(std::string_view fn, const std::vector<Value>& args, size_t min, size_t max);
double number_arg(std::string_view fn, const std::vector<Value>& args, size_t index);
double number_arg_or(std::string_view fn, const std::vector<Value>& args, size_t index, double fallback);
const std::string& string_arg(std::string_view fn, const std::vector<Value>& args, size_t index);

}  // namespace flowc::lang
