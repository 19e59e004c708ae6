#include "flowc/server.hpp"

#include <ostream>

#include <httplib.h>
#include <json.hpp>

#include "flowc/pipeline.hpp"

namespace flowc::server {

using nlohmann::json;

namespace {

Response reply(int status, const json& body)
{
    return {status, body.dump(-1, ' ', true)};
}

json diagnostics_json(const std::vector<Diagnostic>& diagnostics)
{
    json list = json::array();
    for (const auto& d : diagnostics)
        list.push_back(to_json(d));
    return list;
}

Response too_large()
{
    return reply(413, {{"error", "payload_too_large"}, {"limit", kMaxBodyBytes}});
}

Response bad_request(std::string message)
{
    return reply(400, {{"diagnostics", diagnostics_json({{Rule::PARSE_ERROR, std::nullopt, std::move(message)}})}});
}

json stats_json(const RunResult& result)
{
    return {{"steps", result.steps_executed},
            {"nodes", result.scene.nodes().size()},
            {"districts", result.scene.districts().size()}};
}

}  // namespace

Response handle_validate(std::string_view body)
{
    if (body.size() > kMaxBodyBytes)
        return too_large();
    Checked checked = check_document(body);
    int status = checked.malformed() ? 400 : 200;
    return reply(status, {{"diagnostics", diagnostics_json(checked.diagnostics)}});
}

Response handle_compile(std::string_view body)
{
    if (body.size() > kMaxBodyBytes)
        return too_large();
    CompileOutcome result = compile_document(body);
    if (result.code)
        return reply(200, {{"code", *result.code}, {"diagnostics", diagnostics_json(result.checked.diagnostics)}});
    int status = result.checked.malformed() ? 400 : 422;
    return reply(status, {{"diagnostics", diagnostics_json(result.checked.diagnostics)}});
}

Response handle_run(std::string_view body)
{
    if (body.size() > kMaxBodyBytes)
        return too_large();
    json request = json::parse(body.begin(), body.end(), nullptr, false);
    if (request.is_discarded() || !request.is_object())
        return bad_request("request body must be a JSON object");
    auto flowchart = request.find("flowchart");
    if (flowchart == request.end())
        return bad_request("request is missing 'flowchart'");

    RunOptions options;
    if (auto seed = request.find("seed"); seed != request.end() && !seed->is_null()) {
        if (!seed->is_number_unsigned())
            return bad_request("'seed' must be a non-negative integer");
        options.seed = seed->get<std::uint64_t>();
    }
    if (auto limit = request.find("step_limit"); limit != request.end() && !limit->is_null()) {
        if (!limit->is_number_unsigned() || limit->get<std::uint64_t>() == 0)
            return bad_request("'step_limit' must be a positive integer");
        options.step_limit = std::min(limit->get<std::uint64_t>(), kMaxStepLimit);
    }

    Checked checked = flowchart->is_string() ? check_document(flowchart->get_ref<const std::string&>())
                                             : check_json_document(*flowchart);
    if (!checked.ok()) {
        int status = checked.malformed() ? 400 : 422;
        return reply(status, {{"diagnostics", diagnostics_json(checked.diagnostics)}});
    }

    RunResult result = run(*checked.program, options);
    json out{{"stdout", result.output}, {"stats", stats_json(result)}};
    if (result.error) {
        out["error"] = run_error_kind_name(result.error->kind);
        out["message"] = result.error->message;
        out["instruction"] = result.error->origin ? json(*result.error->origin) : json();
    } else {
        out["scene"] = procedural::scene_to_json(result.scene);
    }
    return reply(200, out);
}

Response handle_catalog()
{
    return reply(200, procedural::PrefabCatalog::builtin().to_json());
}

struct HttpServer::Impl {
    httplib::Server http;
};

namespace {

void send(httplib::Response& res, const Response& r)
{
    res.status = r.status;
    res.set_content(r.body, "application/json");
}

}  // namespace

HttpServer::HttpServer() : impl_(std::make_unique<Impl>())
{
    auto& http = impl_->http;
    http.set_payload_max_length(kMaxBodyBytes);
    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
    http.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
    http.Post("/api/validate",
              [](const httplib::Request& req, httplib::Response& res) { send(res, handle_validate(req.body)); });
    http.Post("/api/compile",
              [](const httplib::Request& req, httplib::Response& res) { send(res, handle_compile(req.body)); });
    http.Post("/api/run", [](const httplib::Request& req, httplib::Response& res) { send(res, handle_run(req.body)); });
    http.Get("/api/catalog", [](const httplib::Request&, httplib::Response& res) { send(res, handle_catalog()); });
    http.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            json body{{"error", res.status == 413 ? "payload_too_large" : "http_error"}, {"status", res.status}};
            res.set_content(body.dump(), "application/json");
        }
    });
}

HttpServer::~HttpServer()
{
    stop();
}

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0)
        return impl_->http.bind_to_any_port(host);
    return impl_->http.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen_after_bind()
{
    return impl_->http.listen_after_bind();
}

void HttpServer::stop()
{
    if (impl_)
        impl_->http.stop();
}

bool HttpServer::running() const
{
    return impl_->http.is_running();
}

bool serve(const std::string& host, int port, std::ostream& log)
{
    HttpServer server;
    if (server.bind(host, port) < 0) {
        log << "flowc: cannot bind " << host << ":" << port << "\n";
        return false;
    }
    log << "flowc: serving on http://" << host << ":" << port << "/api\n";
    log.flush();
    return server.listen_after_bind();
}

}  // namespace flowc::server
