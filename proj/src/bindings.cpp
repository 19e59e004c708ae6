#include "flowc/bindings.hpp"

#include <cmath>

namespace flowc {

using lang::EvalError;
using lang::Value;
using procedural::District;
using procedural::ManhattanLayout;
using procedural::Randomizer;
using procedural::SceneNode;
using Args = std::vector<Value>;

RunContext::RunContext(std::uint64_t seed_, procedural::PrefabCatalog catalog_)
    : seed(seed_),
      catalog(std::move(catalog_)),
      scene(catalog.id()),
      default_randomizer(std::make_shared<Randomizer>(seed_, Randomizer::kDefaultScatter, 0))
{
}

namespace {

using ContextPtr = std::shared_ptr<RunContext>;

template <typename T, typename... A>
std::shared_ptr<T> create(const ContextPtr& ctx, A&&... args)
{
    auto obj = std::make_shared<T>(std::forward<A>(args)...);
    obj->handle = ctx->next_handle++;
    return obj;
}

[[noreturn]] void no_attribute(std::string_view type, const std::string& name)
{
    throw EvalError("'" + std::string(type) + "' object has no attribute '" + name + "'");
}

std::optional<double> optional_number(std::string_view fn, const Args& args, size_t index)
{
    if (index >= args.size() || args[index].is_none())
        return std::nullopt;
    return lang::number_arg(fn, args, index);
}

class RandomizerObject : public lang::Object {
public:
    explicit RandomizerObject(std::shared_ptr<Randomizer> rng) : rng(std::move(rng)) {}

    std::string_view type_name() const override { return "Randomizer"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "scatter")
            return rng->scatter();
        no_attribute(type_name(), name);
    }

    void set_attr(const std::string& name, const Value& value) override
    {
        if (name != "scatter")
            no_attribute(type_name(), name);
        if (!value.is_number())
            throw EvalError("Randomizer.scatter must be a number");
        rng->set_scatter(value.number());
    }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name == "interval") {
            lang::expect_arity("interval", args, 2, 2);
            return rng->interval(lang::number_arg(name, args, 0), lang::number_arg(name, args, 1));
        }
        if (name == "discreteInterval") {
            lang::expect_arity(name, args, 2, 2);
            return rng->discrete_interval(lang::number_arg(name, args, 0), lang::number_arg(name, args, 1));
        }
        if (name == "around") {
            lang::expect_arity(name, args, 1, 1);
            return rng->around(lang::number_arg(name, args, 0));
        }
        if (name == "flipCoin") {
            lang::expect_arity(name, args, 0, 0);
            return rng->flip_coin();
        }
        no_attribute(type_name(), name);
    }

    std::shared_ptr<Randomizer> rng;
};

std::shared_ptr<Randomizer> randomizer_arg(std::string_view fn, const Args& args, size_t index,
                                          const ContextPtr& ctx)
{
    if (index >= args.size() || args[index].is_none())
        return ctx->default_randomizer;
    if (args[index].is_object()) {
        if (auto* r = dynamic_cast<RandomizerObject*>(args[index].object().get()))
            return r->rng;
    }
    throw EvalError(std::string(fn) + "() argument " + std::to_string(index + 1) + " must be a Randomizer");
}

class VertexObject : public lang::Object {
public:
    VertexObject(double x, double y) : x(x), y(y) {}

    std::string_view type_name() const override { return "Vertex"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "x")
            return x;
        if (name == "y")
            return y;
        no_attribute(type_name(), name);
    }

    void set_attr(const std::string& name, const Value& value) override
    {
        if (!value.is_number())
            throw EvalError("Vertex." + name + " must be a number");
        if (name == "x")
            x = value.number();
        else if (name == "y")
            y = value.number();
        else
            no_attribute(type_name(), name);
    }

    double x;
    double y;
};

Value make_vertex(const ContextPtr& ctx, procedural::Vertex v)
{
    return Value(lang::ObjectPtr(create<VertexObject>(ctx, v.x, v.y)));
}

class DistrictObject : public lang::Object {
public:
    DistrictObject(ContextPtr ctx, std::shared_ptr<const ManhattanLayout> layout, District district)
        : ctx(std::move(ctx)), layout(std::move(layout)), district(std::move(district))
    {
    }

    std::string_view type_name() const override { return "District"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "boundaryVerteces" || name == "boundaryVertices") {
            lang::List vertices;
            for (const auto& v : district.boundary)
                vertices.push_back(make_vertex(ctx, v));
            return Value::list(std::move(vertices));
        }
        if (name == "center")
            return make_vertex(ctx, district.centroid());
        if (name == "i")
            return district.i;
        if (name == "j")
            return district.j;
        if (name == "width")
            return district.width();
        if (name == "height")
            return district.height();
        no_attribute(type_name(), name);
    }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name == "distance_from_center" || name == "distanceFromCenter") {
            lang::expect_arity(name, args, 0, 0);
            return layout->distance_from_center(district);
        }
        no_attribute(type_name(), name);
    }

    ContextPtr ctx;
    std::shared_ptr<const ManhattanLayout> layout;
    District district;
};

class LayoutObject : public lang::Object {
public:
    LayoutObject(ContextPtr ctx, ManhattanLayout layout, std::shared_ptr<Randomizer> rng)
        : ctx(std::move(ctx)), layout(std::make_shared<ManhattanLayout>(std::move(layout))), rng(std::move(rng))
    {
    }

    std::string_view type_name() const override { return "ManhattanLayout"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "center")
            return make_vertex(ctx, layout->center());
        if (name == "nx")
            return static_cast<double>(layout->nx());
        if (name == "ny")
            return static_cast<double>(layout->ny());
        no_attribute(type_name(), name);
    }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name == "generate") {
            lang::expect_arity(name, args, 0, 1);
            auto source = args.empty() ? rng : randomizer_arg(name, args, 0, ctx);
            // a fresh layout object keeps district handles from earlier generations valid
            auto next = std::make_shared<ManhattanLayout>(layout->requested(), layout->diameter());
            next->generate(*source);
            layout = std::move(next);
            ctx->scene.add_districts(*layout);
            return Value();
        }
        if (name == "get_district_list" || name == "getDistrictList") {
            lang::expect_arity(name, args, 0, 0);
            if (!layout->generated())
                throw EvalError("ManhattanLayout.generate() must be called before get_district_list()");
            lang::List list;
            for (const auto& d : layout->districts())
                list.push_back(Value(lang::ObjectPtr(create<DistrictObject>(ctx, ctx, layout, d))));
            return Value::list(std::move(list));
        }
        if (name == "distance_from_center" || name == "distanceFromCenter") {
            lang::expect_arity(name, args, 1, 1);
            auto* district = args[0].is_object() ? dynamic_cast<DistrictObject*>(args[0].object().get()) : nullptr;
            if (!district)
                throw EvalError(name + "() expects a district");
            return layout->distance_from_center(district->district);
        }
        no_attribute(type_name(), name);
    }

    ContextPtr ctx;
    std::shared_ptr<ManhattanLayout> layout;
    std::shared_ptr<Randomizer> rng;
};

class SceneNodeObject : public lang::Object {
public:
    explicit SceneNodeObject(const SceneNode& node) : node(node) {}

    std::string_view type_name() const override { return "SceneNode"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "id")
            return static_cast<double>(node.id);
        if (name == "kind")
            return node.kind == procedural::NodeKind::Prefab ? "PREFAB" : "GENERATED";
        if (name == "prefab")
            return node.prefab_name ? Value(*node.prefab_name) : Value();
        if (name == "x")
            return node.position.x;
        if (name == "y")
            return node.position.y;
        if (name == "z")
            return node.position.z;
        no_attribute(type_name(), name);
    }

    SceneNode node;
};

Value node_value(const ContextPtr& ctx, const SceneNode& node)
{
    SceneNode summary = node;
    summary.quads.clear();
    return Value(lang::ObjectPtr(create<SceneNodeObject>(ctx, summary)));
}

class PremadeBuildingObject : public lang::Object {
public:
    PremadeBuildingObject(ContextPtr ctx, std::shared_ptr<Randomizer> rng) : ctx(std::move(ctx)), rng(std::move(rng)) {}

    std::string_view type_name() const override { return "PremadeBuildingGenerator"; }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name != "generate")
            no_attribute(type_name(), name);
        lang::expect_arity(name, args, 2, 4);
        procedural::PremadeBuildingGenerator gen(ctx->scene, ctx->catalog, *rng);
        const auto& node = gen.generate(lang::number_arg(name, args, 0), lang::number_arg(name, args, 1),
                                        optional_number(name, args, 2), optional_number(name, args, 3));
        return node_value(ctx, node);
    }

    ContextPtr ctx;
    std::shared_ptr<Randomizer> rng;
};

class ProceduralBuildingObject : public lang::Object {
public:
    ProceduralBuildingObject(ContextPtr ctx, double floor_height) : ctx(std::move(ctx)), floor_height(floor_height) {}

    std::string_view type_name() const override { return "ProceduralBuildingGenerator"; }

    Value get_attr(const std::string& name) override
    {
        if (name == "floorHeight")
            return floor_height;
        no_attribute(type_name(), name);
    }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name != "generate")
            no_attribute(type_name(), name);
        lang::expect_arity(name, args, 2, 4);
        procedural::ProceduralBuildingGenerator gen(ctx->scene, floor_height);
        const auto& node = gen.generate(lang::number_arg(name, args, 0), lang::number_arg(name, args, 1),
                                        optional_number(name, args, 2), optional_number(name, args, 3));
        return node_value(ctx, node);
    }

    ContextPtr ctx;
    double floor_height;
};

class DetailsObject : public lang::Object {
public:
    explicit DetailsObject(ContextPtr ctx) : ctx(std::move(ctx)) {}

    std::string_view type_name() const override { return "DetailsGenerator"; }

    Value call_method(const std::string& name, const Args& args) override
    {
        if (name != "place")
            no_attribute(type_name(), name);
        lang::expect_arity(name, args, 3, 3);
        procedural::DetailsGenerator gen(ctx->scene, ctx->catalog);
        const auto& node =
            gen.place(lang::string_arg(name, args, 0), lang::number_arg(name, args, 1), lang::number_arg(name, args, 2));
        return node_value(ctx, node);
    }

    ContextPtr ctx;
};

}  // namespace

std::map<std::string, Value> procedural_module(const ContextPtr& context)
{
    std::weak_ptr<RunContext> weak = context;
    auto lock = [weak] {
        auto ctx = weak.lock();
        if (!ctx)
            throw EvalError("the procedural module is no longer attached to a run");
        return ctx;
    };
    std::map<std::string, Value> names;
    names["Randomizer"] = lang::make_function("Randomizer", [lock](const Args& args) -> Value {
        lang::expect_arity("Randomizer", args, 0, 1);
        auto ctx = lock();
        double scatter = lang::number_arg_or("Randomizer", args, 0, Randomizer::kDefaultScatter);
        auto rng = std::make_shared<Randomizer>(ctx->seed, scatter, ctx->next_stream++);
        return Value(lang::ObjectPtr(create<RandomizerObject>(ctx, std::move(rng))));
    });
    names["ManhattanLayout"] = lang::make_function("ManhattanLayout", [lock](const Args& args) -> Value {
        lang::expect_arity("ManhattanLayout", args, 0, 3);
        auto ctx = lock();
        double n = lang::number_arg_or("ManhattanLayout", args, 0, ManhattanLayout::kDefaultDistricts);
        double d = lang::number_arg_or("ManhattanLayout", args, 1, ManhattanLayout::kDefaultDiameter);
        if (n != std::floor(n) || n < 1 || n > 1e6)
            throw EvalError("ManhattanLayout() district count must be a whole number between 1 and 1000000");
        auto rng = randomizer_arg("ManhattanLayout", args, 2, ctx);
        ManhattanLayout layout(static_cast<std::size_t>(n), d);
        return Value(lang::ObjectPtr(create<LayoutObject>(ctx, ctx, std::move(layout), std::move(rng))));
    });
    names["Vertex"] = lang::make_function("Vertex", [lock](const Args& args) -> Value {
        lang::expect_arity("Vertex", args, 0, 2);
        auto ctx = lock();
        return make_vertex(ctx, {lang::number_arg_or("Vertex", args, 0, 0), lang::number_arg_or("Vertex", args, 1, 0)});
    });
    names["PremadeBuildingGenerator"] = lang::make_function("PremadeBuildingGenerator", [lock](const Args& args) -> Value {
        lang::expect_arity("PremadeBuildingGenerator", args, 0, 1);
        auto ctx = lock();
        auto rng = randomizer_arg("PremadeBuildingGenerator", args, 0, ctx);
        return Value(lang::ObjectPtr(create<PremadeBuildingObject>(ctx, ctx, std::move(rng))));
    });
    names["ProceduralBuildingGenerator"] =
        lang::make_function("ProceduralBuildingGenerator", [lock](const Args& args) -> Value {
            lang::expect_arity("ProceduralBuildingGenerator", args, 0, 1);
            auto ctx = lock();
            double fh = lang::number_arg_or("ProceduralBuildingGenerator", args, 0, procedural::kDefaultFloorHeight);
            if (!(fh > 0))
                throw EvalError("ProceduralBuildingGenerator() floor height must be positive");
            return Value(lang::ObjectPtr(create<ProceduralBuildingObject>(ctx, ctx, fh)));
        });
    names["DetailsGenerator"] = lang::make_function("DetailsGenerator", [lock](const Args& args) -> Value {
        lang::expect_arity("DetailsGenerator", args, 0, 0);
        auto ctx = lock();
        return Value(lang::ObjectPtr(create<DetailsObject>(ctx, ctx)));
    });
    return names;
}

void install_procedural(lang::Environment& env, const ContextPtr& context)
{
    auto names = procedural_module(context);
    for (const auto& [name, value] : names)
        env.define_builtin(name, value);
    env.register_module("procedural", [names] { return names; });
}

}  // namespace flowc
