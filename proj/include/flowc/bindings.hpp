#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>

#include "flowc/evaluator.hpp"
#include "flowc/procedural/generators.hpp"

namespace flowc {

/// Per-run state shared by every procedural object a script creates.
struct RunContext {
    RunContext(std::uint64_t seed, procedural::PrefabCatalog catalog);

    std::uint64_t seed;
    procedural::PrefabCatalog catalog;
    procedural::Scene scene;
    /// Used wherever a script omits an explicit randomizer. Stream 0.
    std::shared_ptr<procedural::Randomizer> default_randomizer;
    std::uint64_t next_stream = 1;
    std::uint64_t next_handle = 1;
};

/// Script-visible names of the procedural module: Randomizer, ManhattanLayout,
/// Vertex, PremadeBuildingGenerator, ProceduralBuildingGenerator, DetailsGenerator.
std::map<std::string, lang::Value> procedural_module(const std::shared_ptr<RunContext>& context);

/// Makes the module importable as `procedural` and its names resolvable as builtins.
void install_procedural(lang::Environment& env, const std::shared_ptr<RunContext>& context);

}  // namespace flowc
