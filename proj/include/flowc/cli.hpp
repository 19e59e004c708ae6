#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace flowc::cli {

enum ExitCode : int { kOk = 0, kConstraint = 1, kIo = 2, kRuntime = 3 };

/// Prints every diagnostic as a JSON line on `err`; kOk iff none is an error.
int cmd_validate(const std::string& path, std::ostream& err);

struct CompileArgs {
    std::string path;
    std::optional<std::string> out;  ///< "-" writes to `out` stream
    bool annotate = false;
    bool scene = false;  ///< name the output build_scene.py in the working directory
};

/// Default output path: the input path with `.flow.json` (or `.json`) replaced by `.py`.
std::string default_output_path(const std::string& input);

int cmd_compile(const CompileArgs& args, std::ostream& out, std::ostream& err);

struct RunArgs {
    std::string path;
    std::uint64_t seed = 0;
    std::optional<std::string> scene_out;
    std::optional<std::string> obj_out;
    std::uint64_t step_limit = 1'000'000;
};

int cmd_run(const RunArgs& args, std::ostream& out, std::ostream& err);

/// Full command line dispatch, including `serve`.
int main(int argc, char** argv);

}  // namespace flowc::cli
