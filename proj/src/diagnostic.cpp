#include "flowc/diagnostic.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace flowc {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 7> kRuleNames{{
    {Rule::C1_SELF_LOOP, "C1_SELF_LOOP"},
    {Rule::C2_BAD_LOOP_TARGET, "C2_BAD_LOOP_TARGET"},
    {Rule::C3_NO_JOIN, "C3_NO_JOIN"},
    {Rule::DANGLING_REF, "DANGLING_REF"},
    {Rule::NO_ENTRY, "NO_ENTRY"},
    {Rule::PARSE_ERROR, "PARSE_ERROR"},
    {Rule::W_UNREACHABLE, "W_UNREACHABLE"},
}};

}  // namespace

std::string_view rule_name(Rule rule)
{
    for (const auto& [r, name] : kRuleNames)
        if (r == rule)
            return name;
    return "UNKNOWN";
}

std::optional<Rule> rule_from_name(std::string_view name)
{
    for (const auto& [r, n] : kRuleNames)
        if (n == name)
            return r;
    return std::nullopt;
}

Severity severity(Rule rule)
{
    return rule == Rule::W_UNREACHABLE ? Severity::Warning : Severity::Error;
}

nlohmann::json to_json(const Diagnostic& d)
{
    nlohmann::json j;
    j["rule"] = rule_name(d.rule);
    j["instruction"] = d.instruction ? nlohmann::json(*d.instruction) : nlohmann::json(nullptr);
    j["message"] = d.message;
    return j;
}

std::string to_json_lines(const std::vector<Diagnostic>& diagnostics)
{
    std::string out;
    for (const auto& d : diagnostics) {
        out += to_json(d).dump(-1, ' ', true);
        out += '\n';
    }
    return out;
}

bool has_errors(const std::vector<Diagnostic>& diagnostics)
{
    return std::any_of(diagnostics.begin(), diagnostics.end(),
                       [](const Diagnostic& d) { return d.is_error(); });
}

}  // namespace flowc
