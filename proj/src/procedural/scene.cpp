#include "flowc/procedural/scene.hpp"

#include <charconv>

#include "catalog_data.hpp"

namespace flowc::procedural {

using nlohmann::json;

std::string_view label_name(TextureLabel label)
{
    switch (label) {
    case TextureLabel::Wall: return "WALL";
    case TextureLabel::Window: return "WINDOW";
    case TextureLabel::Door: return "DOOR";
    case TextureLabel::Roof: return "ROOF";
    }
    return "WALL";
}

const PrefabCatalog& PrefabCatalog::builtin()
{
    static const PrefabCatalog catalog = from_json(json::parse(detail::kBuiltinCatalogJson));
    return catalog;
}

PrefabCatalog PrefabCatalog::from_json(const json& manifest)
{
    PrefabCatalog catalog;
    try {
        catalog.id_ = manifest.at("id").get<std::string>();
        for (const auto& entry : manifest.at("prefabs")) {
            const auto& category = entry.at("category").get_ref<const std::string&>();
            if (category != "building" && category != "detail")
                throw ConfigError("unknown prefab category '" + category + "'");
            const auto& box = entry.at("bbox");
            if (!box.is_array() || box.size() != 3)
                throw ConfigError("prefab bbox must be [width, depth, height]");
            Prefab p{entry.at("name").get<std::string>(),
                     category == "building" ? PrefabCategory::Building : PrefabCategory::Detail,
                     box[0].get<double>(), box[1].get<double>(), box[2].get<double>()};
            if (!(p.width > 0 && p.depth > 0 && p.height > 0))
                throw ConfigError("prefab '" + p.name + "' has a non-positive bounding box");
            catalog.prefabs_.push_back(std::move(p));
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed prefab catalog: ") + e.what());
    }
    return catalog;
}

std::vector<const Prefab*> PrefabCatalog::buildings() const
{
    std::vector<const Prefab*> out;
    for (const auto& p : prefabs_)
        if (p.category == PrefabCategory::Building)
            out.push_back(&p);
    return out;
}

std::vector<std::string> PrefabCatalog::detail_names() const
{
    std::vector<std::string> out;
    for (const auto& p : prefabs_)
        if (p.category == PrefabCategory::Detail)
            out.push_back(p.name);
    return out;
}

const Prefab& PrefabCatalog::detail(const std::string& name) const
{
    for (const auto& p : prefabs_)
        if (p.category == PrefabCategory::Detail && p.name == name)
            return p;
    std::string valid;
    for (const auto& n : detail_names())
        valid += (valid.empty() ? "" : ", ") + n;
    throw CatalogLookupError("unknown detail '" + name + "'; valid names: " + valid);
}

json PrefabCatalog::to_json() const
{
    json prefabs = json::array();
    for (const auto& p : prefabs_) {
        prefabs.push_back({{"name", p.name},
                           {"category", p.category == PrefabCategory::Building ? "building" : "detail"},
                           {"bbox", {p.width, p.depth, p.height}}});
    }
    return {{"id", id_}, {"prefabs", std::move(prefabs)}};
}

Scene::Scene(std::string catalog_id) : catalog_id_(std::move(catalog_id)) {}

const SceneNode& Scene::add(SceneNode node)
{
    node.id = nodes_.size() + 1;
    nodes_.push_back(std::move(node));
    return nodes_.back();
}

void Scene::add_districts(const ManhattanLayout& layout)
{
    districts_.insert(districts_.end(), layout.districts().begin(), layout.districts().end());
}

namespace {

json point(const Point3& p)
{
    return json::array({p.x, p.y, p.z});
}

std::string num(double v)
{
    if (v == 0)
        return "0";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

json scene_to_json(const Scene& scene)
{
    json nodes = json::array();
    for (const auto& n : scene.nodes()) {
        json node;
        node["id"] = n.id;
        node["kind"] = n.kind == NodeKind::Prefab ? "PREFAB" : "GENERATED";
        node["position"] = point(n.position);
        node["scale"] = point(n.scale);
        if (n.prefab_name)
            node["prefab"] = *n.prefab_name;
        if (n.kind == NodeKind::Generated) {
            json quads = json::array();
            for (const auto& q : n.quads) {
                json corners = json::array();
                for (const auto& c : q.corners)
                    corners.push_back(point(c));
                quads.push_back({{"label", label_name(q.label)}, {"corners", std::move(corners)}});
            }
            node["quads"] = std::move(quads);
        }
        nodes.push_back(std::move(node));
    }
    json root;
    root["nodes"] = std::move(nodes);
    if (!scene.districts().empty()) {
        json districts = json::array();
        for (const auto& d : scene.districts()) {
            json boundary = json::array();
            for (const auto& v : d.boundary)
                boundary.push_back(json::array({v.x, v.y}));
            districts.push_back({{"i", d.i}, {"j", d.j}, {"boundary", std::move(boundary)}});
        }
        root["districts"] = std::move(districts);
    }
    if (scene.catalog_id() != PrefabCatalog::builtin().id())
        root["catalog"] = scene.catalog_id();
    return root;
}

std::string scene_serialize(const Scene& scene)
{
    return scene_to_json(scene).dump();
}

std::string scene_export_obj(const Scene& scene, const PrefabCatalog& catalog)
{
    std::string out = "# flowc scene export\n";
    std::size_t next_vertex = 1;
    auto vertex = [&](const Point3& p) {
        out += "v " + num(p.x) + " " + num(p.y) + " " + num(p.z) + "\n";
    };
    for (const auto& n : scene.nodes()) {
        if (n.kind == NodeKind::Generated) {
            out += "g node_" + std::to_string(n.id) + "\n";
            for (const auto& q : n.quads) {
                for (const auto& c : q.corners)
                    vertex(c);
                out += "usemtl " + std::string(label_name(q.label)) + "\n";
                out += "f " + std::to_string(next_vertex) + " " + std::to_string(next_vertex + 1) + " " +
                       std::to_string(next_vertex + 2) + " " + std::to_string(next_vertex + 3) + "\n";
                next_vertex += 4;
            }
            continue;
        }
        const std::string& name = n.prefab_name.value_or("unknown");
        double w = 1, d = 1, h = 1;
        for (const auto& p : catalog.prefabs()) {
            if (p.name == name) {
                w = p.width;
                d = p.depth;
                h = p.height;
                break;
            }
        }
        w *= n.scale.x;
        d *= n.scale.y;
        h *= n.scale.z;
        out += "# prefab " + name + " (node " + std::to_string(n.id) + "): placeholder box\n";
        out += "g node_" + std::to_string(n.id) + "\n";
        const double x0 = n.position.x - w / 2, x1 = n.position.x + w / 2;
        const double y0 = n.position.y - d / 2, y1 = n.position.y + d / 2;
        const double z0 = n.position.z, z1 = n.position.z + h;
        for (double z : {z0, z1}) {
            vertex({x0, y0, z});
            vertex({x1, y0, z});
            vertex({x1, y1, z});
            vertex({x0, y1, z});
        }
        out += "usemtl PREFAB\n";
        static constexpr int kFaces[6][4] = {{1, 4, 3, 2}, {5, 6, 7, 8}, {1, 2, 6, 5},
                                             {2, 3, 7, 6}, {3, 4, 8, 7}, {4, 1, 5, 8}};
        for (const auto& face : kFaces) {
            out += "f";
            for (int k : face)
                out += " " + std::to_string(next_vertex + static_cast<std::size_t>(k) - 1);
            out += "\n";
        }
        next_vertex += 8;
    }
    return out;
}

}  // namespace flowc::procedural
