#pragma once

#include <string_view>
#include <vector>

#include "flowc/diagnostic.hpp"
#include "flowc/flowchart.hpp"

namespace flowc {

/// Constraint check for a parsed document. Error-level findings come first:
/// every C1 self-connection, otherwise every PARSE_ERROR in reachable code,
/// otherwise the single C2/C3 failure of the structuring attempt. Unreachable
/// instructions follow as W_UNREACHABLE warnings. The error part is empty
/// exactly when transform() succeeds.
std::vector<Diagnostic> validate(const FlowchartDoc& doc);

/// parse_flowchart followed by validate(); structural parse failures are returned as is.
std::vector<Diagnostic> validate_text(std::string_view text);

/// Instructions not reachable from the entry, in id order.
std::vector<InstructionId> unreachable_instructions(const FlowchartDoc& doc);

}  // namespace flowc
