#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "flowc/procedural/layout.hpp"

namespace flowc::procedural {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CatalogLookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

enum class TextureLabel { Wall, Window, Door, Roof };

std::string_view label_name(TextureLabel label);

struct Point3 {
    double x = 0;
    double y = 0;
    double z = 0;

    bool operator==(const Point3&) const = default;
};

struct Quad {
    std::array<Point3, 4> corners;
    TextureLabel label;
};

enum class NodeKind { Prefab, Generated };

struct SceneNode {
    std::uint64_t id = 0;
    NodeKind kind = NodeKind::Prefab;
    std::optional<std::string> prefab_name;  ///< PREFAB only
    Point3 position;                         ///< x, y and elevation
    Point3 scale{1, 1, 1};
    std::vector<Quad> quads;  ///< GENERATED only, world coordinates
};

enum class PrefabCategory { Building, Detail };

/// A named model standing in for an authored mesh: only its nominal bounding box.
struct Prefab {
    std::string name;
    PrefabCategory category;
    double width;
    double depth;
    double height;
};

class PrefabCatalog {
public:
    /// The manifest shipped in assets/catalog.json, compiled in.
    static const PrefabCatalog& builtin();
    /// Throws ConfigError on a malformed manifest.
    static PrefabCatalog from_json(const nlohmann::json& manifest);

    const std::string& id() const { return id_; }
    const std::vector<Prefab>& prefabs() const { return prefabs_; }
    std::vector<const Prefab*> buildings() const;
    std::vector<std::string> detail_names() const;
    /// Throws CatalogLookupError listing the valid detail names.
    const Prefab& detail(const std::string& name) const;

    nlohmann::json to_json() const;

private:
    std::string id_;
    std::vector<Prefab> prefabs_;
};

/// The generated world. Append-only: nodes receive ids 1, 2, 3... in order.
class Scene {
public:
    explicit Scene(std::string catalog_id = PrefabCatalog::builtin().id());

    const SceneNode& add(SceneNode node);
    /// Records a generated layout's districts for display.
    void add_districts(const ManhattanLayout& layout);

    const std::vector<SceneNode>& nodes() const { return nodes_; }
    const std::vector<District>& districts() const { return districts_; }
    const std::string& catalog_id() const { return catalog_id_; }

private:
    std::string catalog_id_;
    std::vector<SceneNode> nodes_;
    std::vector<District> districts_;
};

/// Compact `.scene.json` document with sorted keys. `districts` is omitted
/// when no layout was generated and `catalog` when the builtin catalog is used,
/// so an empty scene is exactly `{"nodes":[]}`.
nlohmann::json scene_to_json(const Scene& scene);
std::string scene_serialize(const Scene& scene);

/// Wavefront OBJ: GENERATED quads as faces with `usemtl WALL|WINDOW|DOOR|ROOF`
/// grouped per node; PREFAB nodes as annotated placeholder boxes.
std::string scene_export_obj(const Scene& scene, const PrefabCatalog& catalog = PrefabCatalog::builtin());

}  // namespace flowc::procedural
