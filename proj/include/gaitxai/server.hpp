#pragma once

#include "gaitxai/api.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <thread>

namespace httplib {
class Server;
}

namespace gaitxai {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8080;  // 0 picks an ephemeral port
    /// Static client bundle mounted at "/ui/" when set.
    std::optional<std::filesystem::path> staticDir;
};

/// HTTP front end for an ApiService.
class HttpServer {
public:
    HttpServer(ApiService& api, ServerOptions options);
    ~HttpServer();
    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds the socket and returns the bound port. Throws Error if the address is unavailable.
    int bind();
    /// Serves on the calling thread until stop().
    void run();
    /// bind() + run() on a background thread; returns the bound port.
    int start();
    void stop();

private:
    ApiService& api_;
    ServerOptions options_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_ = -1;
};

}  // namespace gaitxai
