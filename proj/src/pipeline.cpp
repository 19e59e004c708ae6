#include "flowc/pipeline.hpp"

#include "flowc/validator.hpp"

namespace flowc {

bool Checked::malformed() const
{
    if (stage != Stage::Parse)
        return false;
    for (const auto& d : diagnostics)
        if (d.rule == Rule::PARSE_ERROR)
            return true;
    return false;
}

namespace {

Checked finish(ParseOutcome parsed)
{
    Checked out;
    if (!parsed.ok()) {
        out.diagnostics = std::move(parsed.diagnostics);
        return out;
    }
    out.doc = std::move(parsed.doc);
    out.diagnostics = validate(*out.doc);
    if (has_errors(out.diagnostics)) {
        out.stage = Stage::Validate;
        return out;
    }
    auto result = transform(*out.doc);
    if (auto* d = std::get_if<Diagnostic>(&result)) {
        out.diagnostics.insert(out.diagnostics.begin(), *d);
        out.stage = Stage::Validate;
        return out;
    }
    out.program = std::move(std::get<WhileProgram>(result));
    out.stage = Stage::Done;
    return out;
}

}  // namespace

Checked check_document(std::string_view text)
{
    return finish(parse_flowchart(text));
}

Checked check_json_document(const nlohmann::json& document)
{
    return finish(parse_flowchart_json(document));
}

CompileOutcome compile_document(std::string_view text, const EmitOptions& options)
{
    CompileOutcome out{check_document(text), std::nullopt};
    if (out.checked.ok())
        out.code = emit_python(*out.checked.program, options);
    return out;
}

}  // namespace flowc
