#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

namespace flowc::server {

inline constexpr std::size_t kMaxBodyBytes = 1 << 20;
inline constexpr std::uint64_t kMaxStepLimit = 10'000'000;

struct Response {
    int status = 200;
    std::string body;  ///< compact JSON
};

// Request handlers, independent of the socket layer. Each is stateless.
Response handle_validate(std::string_view body);
Response handle_compile(std::string_view body);
Response handle_run(std::string_view body);
Response handle_catalog();

/// HTTP front end with CORS, routing the handlers above under /api.
class HttpServer {
public:
    HttpServer();
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds `port`, or an ephemeral port when 0. Returns the bound port, or -1.
    int bind(const std::string& host, int port);
    /// Serves until stop(); returns false if the loop failed.
    bool listen_after_bind();
    void stop();
    bool running() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Blocking `flowc serve`.
bool serve(const std::string& host, int port, std::ostream& log);

}  // namespace flowc::server
