#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "flowc/flowchart.hpp"
#include "flowc/g2w.hpp"
#include "flowc/procedural/scene.hpp"
#include "flowc/value.hpp"

namespace flowc {

inline constexpr std::uint64_t kDefaultStepLimit = 1'000'000;

struct RunOptions {
    std::uint64_t seed = 0;
    /// Statements executed plus conditions evaluated.
    std::uint64_t step_limit = kDefaultStepLimit;
    /// nullptr selects the builtin catalog. Must outlive the run.
    const procedural::PrefabCatalog* catalog = nullptr;
};

enum class RunErrorKind { StepLimit, Eval, Parse };

std::string_view run_error_kind_name(RunErrorKind kind);

struct RunError {
    RunErrorKind kind;
    std::string message;
    std::optional<InstructionId> origin;
};

struct RunResult {
    std::string output;  ///< everything printed, including output before an error
    procedural::Scene scene;
    std::uint64_t steps_executed = 0;
    std::map<std::string, lang::Value> env_final;
    std::optional<RunError> error;

    bool ok() const { return !error.has_value(); }
};

/// Executes a structured program. All randomness comes from the run seed.
RunResult run(const WhileProgram& program, const RunOptions& options = {});

/// Executes the graph literally, halting when the taken edge is missing.
/// Counts steps exactly like run(), so both agree on step-limit outcomes.
RunResult run_goto(const FlowchartDoc& doc, const RunOptions& options = {});

}  // namespace flowc
