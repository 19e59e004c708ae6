#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "flowc/diagnostic.hpp"

namespace flowc {

struct Block {
    InstructionId id;
    std::vector<std::string> code;
    std::optional<InstructionId> next;

    bool operator==(const Block&) const = default;
};

struct Branch {
    InstructionId id;
    std::string condition;
    std::optional<InstructionId> true_next;
    std::optional<InstructionId> false_next;

    bool operator==(const Branch&) const = default;
};

using Instruction = std::variant<Block, Branch>;

const InstructionId& instruction_id(const Instruction& instruction);

enum class EdgeLabel { Next, True, False };

std::string_view edge_label_name(EdgeLabel label);

struct Edge {
    EdgeLabel label;
    InstructionId target;

    bool operator==(const Edge&) const = default;
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The GOTO-style graph drawn in the editor. Structurally well-formed once
/// returned by parse_flowchart: the entry and every edge target resolve.
struct FlowchartDoc {
    std::string id;
    InstructionId entry;
    std::map<InstructionId, Instruction> instructions;
    /// Opaque editor data (canvas coordinates etc.); never affects semantics.
    nlohmann::json metadata = nlohmann::json::object();

    const Instruction& at(const InstructionId& id) const;
    bool contains(const InstructionId& id) const { return instructions.count(id) != 0; }

    bool operator==(const FlowchartDoc&) const = default;
};

/// Outgoing edges of `id`: Block yields at most one NEXT, Branch at most TRUE then FALSE.
/// Throws LookupError for an unknown id.
std::vector<Edge> successors(const FlowchartDoc& doc, const InstructionId& id);

/// Instructions reachable from the entry, in depth-first discovery order.
std::vector<InstructionId> reachable_from_entry(const FlowchartDoc& doc);

/// Exactly one of the two members is populated.
struct ParseOutcome {
    std::optional<FlowchartDoc> doc;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return doc.has_value(); }
};

ParseOutcome parse_flowchart(std::string_view text);
ParseOutcome parse_flowchart_json(const nlohmann::json& json);

nlohmann::json flowchart_to_json(const FlowchartDoc& doc);

/// Canonical text: sorted keys, two-space indent, ASCII-escaped, trailing newline.
std::string serialize_flowchart(const FlowchartDoc& doc);

}  // namespace flowc
