#include "flowc/procedural/generators.hpp"

#include <cmath>
#include <string>

namespace flowc::procedural {

namespace {

void require_positive(const char* what, double value)
{
    if (!(value > 0) || !std::isfinite(value))
        throw ArgumentError(std::string(what) + " must be positive, got " + std::to_string(value));
}

}  // namespace

PremadeBuildingGenerator::PremadeBuildingGenerator(Scene& scene, const PrefabCatalog& catalog, Randomizer& rng)
    : scene_(&scene), catalog_(&catalog), rng_(&rng)
{
}

const SceneNode& PremadeBuildingGenerator::generate(double x, double y, std::optional<double> height,
                                                   std::optional<double> width)
{
    const double h = height.value_or(kDefaultBuildingHeight);
    const double w = width.value_or(kDefaultBuildingWidth);
    require_positive("building height", h);
    require_positive("building width", w);
    auto buildings = catalog_->buildings();
    if (buildings.empty())
        throw ConfigError("the prefab catalog has no buildings");
    auto last = static_cast<double>(buildings.size() - 1);
    auto index = static_cast<std::size_t>(std::min(rng_->discrete_interval(0, last), last));
    const Prefab& prefab = *buildings[index];

    SceneNode node;
    node.kind = NodeKind::Prefab;
    node.prefab_name = prefab.name;
    node.position = {x, y, 0};
    node.scale = {w / prefab.width, w / prefab.depth, h / prefab.height};
    return scene_->add(std::move(node));
}

ProceduralBuildingGenerator::ProceduralBuildingGenerator(Scene& scene, double floor_height)
    : scene_(&scene), floor_height_(floor_height)
{
    require_positive("floor height", floor_height);
}

int ProceduralBuildingGenerator::floors_for(double height, double floor_height)
{
    return std::max(1, static_cast<int>(std::floor(height / floor_height)));
}

const SceneNode& ProceduralBuildingGenerator::generate(double x, double y, std::optional<double> height,
                                                      std::optional<double> width)
{
    const double h = height.value_or(kDefaultBuildingHeight);
    const double w = width.value_or(kDefaultBuildingWidth);
    require_positive("building height", h);
    require_positive("building width", w);

    const int floors = floors_for(h, floor_height_);
    const double x0 = x - w / 2, x1 = x + w / 2;
    const double y0 = y - w / 2, y1 = y + w / 2;

    SceneNode node;
    node.kind = NodeKind::Generated;
    node.position = {x, y, 0};
    node.quads.reserve(static_cast<std::size_t>(4 * floors + 1));
    for (int f = 0; f < floors; ++f) {
        const double z0 = f * floor_height_;
        const double z1 = (f + 1) * floor_height_;
        const TextureLabel facade = f == 0 ? TextureLabel::Wall : TextureLabel::Window;
        // -y, +x, +y, -x faces; the door takes the -y face of the ground floor
        node.quads.push_back({{{{x0, y0, z0}, {x1, y0, z0}, {x1, y0, z1}, {x0, y0, z1}}},
                              f == 0 ? TextureLabel::Door : facade});
        node.quads.push_back({{{{x1, y0, z0}, {x1, y1, z0}, {x1, y1, z1}, {x1, y0, z1}}}, facade});
        node.quads.push_back({{{{x1, y1, z0}, {x0, y1, z0}, {x0, y1, z1}, {x1, y1, z1}}}, facade});
        node.quads.push_back({{{{x0, y1, z0}, {x0, y0, z0}, {x0, y0, z1}, {x0, y1, z1}}}, facade});
    }
    const double roof = floors * floor_height_;
    node.quads.push_back({{{{x0, y0, roof}, {x1, y0, roof}, {x1, y1, roof}, {x0, y1, roof}}}, TextureLabel::Roof});
    return scene_->add(std::move(node));
}

DetailsGenerator::DetailsGenerator(Scene& scene, const PrefabCatalog& catalog) : scene_(&scene), catalog_(&catalog) {}

const SceneNode& DetailsGenerator::place(const std::string& name, double x, double y)
{
    const Prefab& prefab = catalog_->detail(name);
    SceneNode node;
    node.kind = NodeKind::Prefab;
    node.prefab_name = prefab.name;
    node.position = {x, y, 0};
    return scene_->add(std::move(node));
}

}  // namespace flowc::procedural
