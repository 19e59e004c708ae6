#pragma once

#include <optional>
#include <string>

#include "flowc/procedural/randomizer.hpp"
#include "flowc/procedural/scene.hpp"

namespace flowc::procedural {

inline constexpr double kDefaultBuildingHeight = 35;
inline constexpr double kDefaultBuildingWidth = 40;
inline constexpr double kDefaultFloorHeight = 3.5;

/// Places catalog buildings, one picked at random per call and scaled so its
/// nominal box becomes (width, width, height).
class PremadeBuildingGenerator {
public:
    PremadeBuildingGenerator(Scene& scene, const PrefabCatalog& catalog, Randomizer& rng);

    const SceneNode& generate(double x, double y, std::optional<double> height = std::nullopt,
                              std::optional<double> width = std::nullopt);

private:
    Scene* scene_;
    const PrefabCatalog* catalog_;
    Randomizer* rng_;
};

/// Assembles buildings floor by floor from wall, window, door and roof quads
/// on a square footprint centered at (x, y).
class ProceduralBuildingGenerator {
public:
    explicit ProceduralBuildingGenerator(Scene& scene, double floor_height = kDefaultFloorHeight);

    double floor_height() const { return floor_height_; }

    static int floors_for(double height, double floor_height = kDefaultFloorHeight);

    const SceneNode& generate(double x, double y, std::optional<double> height = std::nullopt,
                              std::optional<double> width = std::nullopt);

private:
    Scene* scene_;
    double floor_height_;
};

class DetailsGenerator {
public:
    DetailsGenerator(Scene& scene, const PrefabCatalog& catalog);

    const SceneNode& place(const std::string& name, double x, double y);

private:
    Scene* scene_;
    const PrefabCatalog* catalog_;
};

}  // namespace flowc::procedural
