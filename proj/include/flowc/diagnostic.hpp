#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace flowc {

using InstructionId = std::string;

enum class Rule {
    C1_SELF_LOOP,
    C2_BAD_LOOP_TARGET,
    C3_NO_JOIN,
    DANGLING_REF,
    NO_ENTRY,
    PARSE_ERROR,
    W_UNREACHABLE,
};

enum class Severity { Error, Warning };

std::string_view rule_name(Rule rule);
std::optional<Rule> rule_from_name(std::string_view name);
Severity severity(Rule rule);

/// A constraint violation or parse error, optionally pinned to one instruction.
/// NO_ENTRY and document-level PARSE_ERRORs (malformed JSON) carry no instruction.
struct Diagnostic {
    Rule rule;
    std::optional<InstructionId> instruction;
    std::string message;

    bool is_error() const { return severity(rule) == Severity::Error; }
    bool operator==(const Diagnostic&) const = default;
};

/// `{"instruction": str|null, "message": str, "rule": str}`
nlohmann::json to_json(const Diagnostic& d);

/// One compact JSON object per line, as written to stderr by the CLI.
std::string to_json_lines(const std::vector<Diagnostic>& diagnostics);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

}  // namespace flowc
