#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flowc/codegen.hpp"
#include "flowc/diagnostic.hpp"
#include "flowc/flowchart.hpp"
#include "flowc/interp.hpp"

namespace flowc {

enum class Stage { Parse, Validate, Done };

/// Document text → validated, structured program. Shared by CLI and server.
struct Checked {
    Stage stage = Stage::Parse;  ///< where processing stopped
    std::optional<FlowchartDoc> doc;
    std::optional<WhileProgram> program;
    /// Parse diagnostics, or the full validator output (warnings included).
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return stage == Stage::Done; }
    /// The document failed as JSON/schema rather than on constraints.
    bool malformed() const;
};

Checked check_document(std::string_view text);
Checked check_json_document(const nlohmann::json& document);

struct CompileOutcome {
    Checked checked;
    std::optional<std::string> code;
};

CompileOutcome compile_document(std::string_view text, const EmitOptions& options = {});

}  // namespace flowc
