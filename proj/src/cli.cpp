#include "flowc/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "flowc/pipeline.hpp"
#include "flowc/server.hpp"

namespace flowc::cli {

namespace {

std::optional<std::string> read_file(const std::string& path, std::ostream& err)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        err << "flowc: cannot read '" << path << "'\n";
        return std::nullopt;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool write_file(const std::string& path, const std::string& content, std::ostream& err)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << content) || !out.flush()) {
        err << "flowc: cannot write '" << path << "'\n";
        return false;
    }
    return true;
}

bool ends_with(const std::string& s, std::string_view suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

nlohmann::json run_error_json(const RunError& error)
{
    return {{"error", run_error_kind_name(error.kind)},
            {"instruction", error.origin ? nlohmann::json(*error.origin) : nlohmann::json()},
            {"message", error.message}};
}

}  // namespace

int cmd_validate(const std::string& path, std::ostream& err)
{
    auto text = read_file(path, err);
    if (!text)
        return kIo;
    Checked checked = check_document(*text);
    err << to_json_lines(checked.diagnostics);
    return has_errors(checked.diagnostics) ? kConstraint : kOk;
}

std::string default_output_path(const std::string& input)
{
    for (std::string_view suffix : {".flow.json", ".json"}) {
        if (ends_with(input, suffix))
            return input.substr(0, input.size() - suffix.size()) + ".py";
    }
    return input + ".py";
}

int cmd_compile(const CompileArgs& args, std::ostream& out, std::ostream& err)
{
    auto text = read_file(args.path, err);
    if (!text)
        return kIo;
    CompileOutcome result = compile_document(*text, EmitOptions{4, args.annotate});
    err << to_json_lines(result.checked.diagnostics);
    if (!result.code)
        return kConstraint;
    std::string target = args.out ? *args.out : (args.scene ? "build_scene.py" : default_output_path(args.path));
    if (target == "-") {
        out << *result.code;
        out.flush();
        return kOk;
    }
    return write_file(target, *result.code, err) ? kOk : kIo;
}

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err)
{
    auto text = read_file(args.path, err);
    if (!text)
        return kIo;
    Checked checked = check_document(*text);
    err << to_json_lines(checked.diagnostics);
    if (!checked.ok())
        return kConstraint;
    RunOptions options;
    options.seed = args.seed;
    options.step_limit = args.step_limit;
    RunResult result = run(*checked.program, options);
    out << result.output;
    out.flush();
    if (result.error) {
        err << run_error_json(*result.error).dump(-1, ' ', true) << "\n";
        return kRuntime;
    }
    if (args.scene_out && !write_file(*args.scene_out, procedural::scene_serialize(result.scene) + "\n", err))
        return kIo;
    if (args.obj_out && !write_file(*args.obj_out, procedural::scene_export_obj(result.scene), err))
        return kIo;
    return kOk;
}

int main(int argc, char** argv)
{
    CLI::App app{"Flowchart validator, compiler and procedural scene runner"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "flowc 1.0.0");

    std::string path;
    auto* validate = app.add_subcommand("validate", "Check a .flow.json document against the flowchart constraints");
    validate->add_option("path", path, "flowchart document")->required();

    CompileArgs compile;
    std::string compile_out;
    auto* comp = app.add_subcommand("compile", "Emit Python-syntax source for a flowchart");
    comp->add_option("path", compile.path, "flowchart document")->required();
    comp->add_option("--out", compile_out, "output file, or - for stdout");
    comp->add_flag("--annotate", compile.annotate, "append '# origin: <id>' comments");
    comp->add_flag("--scene", compile.scene, "write build_scene.py in the working directory");

    RunArgs runargs;
    std::string scene_out, obj_out;
    auto* runcmd = app.add_subcommand("run", "Interpret a flowchart and optionally export the scene");
    runcmd->add_option("path", runargs.path, "flowchart document")->required();
    runcmd->add_option("--seed", runargs.seed, "randomizer seed")->capture_default_str();
    runcmd->add_option("--scene-out", scene_out, "write the scene as JSON");
    runcmd->add_option("--obj-out", obj_out, "write the scene as Wavefront OBJ");
    runcmd->add_option("--step-limit", runargs.step_limit, "maximum statements plus condition checks")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);

    int port = 8787;
    std::string host = "127.0.0.1";
    auto* serve = app.add_subcommand("serve", "Serve the editor HTTP API");
    serve->add_option("--port", port, "TCP port")->capture_default_str()->check(CLI::Range(1, 65535));
    serve->add_option("--host", host, "bind address")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kOk : kIo;
    }

    if (*validate)
        return cmd_validate(path, std::cerr);
    if (*comp) {
        if (comp->count("--out"))
            compile.out = compile_out;
        return cmd_compile(compile, std::cout, std::cerr);
    }
    if (*runcmd) {
        if (runcmd->count("--scene-out"))
            runargs.scene_out = scene_out;
        if (runcmd->count("--obj-out"))
            runargs.obj_out = obj_out;
        return cmd_run(runargs, std::cout, std::cerr);
    }
    return server::serve(host, port, std::cerr) ? kOk : kIo;
}

}  // namespace flowc::cli
