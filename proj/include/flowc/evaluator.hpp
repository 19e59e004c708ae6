#pragma once

#include <functional>
#include <map>
#include <set>
#include <string>

#include "flowc/minilang.hpp"
#include "flowc/value.hpp"

namespace flowc::lang {

using ModuleLoader = std::function<std::map<std::string, Value>()>;

/// Mutable state of one program run: user variables, imported names,
/// builtins and captured output. Single-threaded.
class Environment {
public:
    Environment();

    /// Variables assigned by the program.
    std::map<std::string, Value> variables;
    /// Text produced by `print`.
    std::string output;

    /// Name lookup order: variables, imported names, builtins.
    const Value* lookup(const std::string& name) const;

    void define_builtin(const std::string& name, Value value);
    void register_module(const std::string& name, ModuleLoader loader);

    /// Executes `from <module> import *`. Throws EvalError for unknown modules.
    void import_all(const std::string& module);

private:
    std::map<std::string, Value> builtins_;
    std::map<std::string, Value> imported_;
    std::map<std::string, ModuleLoader> modules_;
    std::set<std::string> loaded_;
};

Value eval_expression(const Expr& expr, Environment& env);

void exec_statement(const Stmt& stmt, Environment& env);

}  // namespace flowc::lang
