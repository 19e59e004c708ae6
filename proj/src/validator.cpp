#include "flowc/validator.hpp"

#include <set>

#include "flowc/g2w.hpp"

namespace flowc {

std::vector<InstructionId> unreachable_instructions(const FlowchartDoc& doc)
{
    std::vector<InstructionId> out;
    if (!doc.contains(doc.entry)) {
        for (const auto& [id, _] : doc.instructions)
            out.push_back(id);
        return out;
    }
    auto reached = reachable_from_entry(doc);
    std::set<InstructionId> seen(reached.begin(), reached.end());
    for (const auto& [id, _] : doc.instructions)
        if (!seen.count(id))
            out.push_back(id);
    return out;
}

std::vector<Diagnostic> validate(const FlowchartDoc& doc)
{
    std::vector<Diagnostic> out = find_self_loops(doc);
    if (out.empty())
        out = find_parse_errors(doc);
    if (out.empty()) {
        auto result = transform(doc);
        if (auto* d = std::get_if<Diagnostic>(&result))
            out.push_back(*d);
    }
    for (const auto& id : unreachable_instructions(doc))
        out.push_back({Rule::W_UNREACHABLE, id, "'" + id + "' is not reachable from the entry"});
    return out;
}

std::vector<Diagnostic> validate_text(std::string_view text)
{
    auto parsed = parse_flowchart(text);
    if (!parsed.ok())
        return parsed.diagnostics;
    return validate(*parsed.doc);
}

}  // namespace flowc
