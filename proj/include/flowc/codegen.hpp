#pragma once

#include <string>

#include "flowc/g2w.hpp"

namespace flowc {

struct EmitOptions {
    int indent_width = 4;
    /// Append `# origin: <instruction-id>` to every statement and header line.
    bool annotate = false;
};

/// Python-syntax source for a structured program, one line per statement,
/// loop/branch header, `else:` and `pass` placeholder. Empty programs emit "".
std::string emit_python(const WhileProgram& program, const EmitOptions& options = {});

}  // namespace flowc
