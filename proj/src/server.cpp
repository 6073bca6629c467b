#include "gaitxai/server.hpp"

#include "gaitxai/errors.hpp"

#include "httplib.h"

namespace gaitxai {

namespace {

void reply(const ApiResponse& r, httplib::Response& res) {
    res.status = r.status;
    res.set_content(r.body, r.contentType);
}

ApiRequest to_api_request(const httplib::Request& req) {
    ApiRequest r;
    r.method = req.method;
    r.path = req.path;
    for (const auto& [k, v] : req.params) r.query[k] = v;
    r.body = req.body;
    return r;
}

}  // namespace

HttpServer::HttpServer(ApiService& api, ServerOptions options)
    : api_(api), options_(std::move(options)), server_(std::make_unique<httplib::Server>()) {
    auto handler = [this](const httplib::Request& req, httplib::Response& res) {
        reply(api_.handle(to_api_request(req)), res);
    };
    // SO_REUSEADDR only: without SO_REUSEPORT a second instance on a busy port fails to bind.
    server_->set_socket_options([](socket_t sock) {
        int yes = 1;
        setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof yes);
    });
    const std::string any = R"(/(patients|groups|meta)(/.*)?)";
    server_->Get(any, handler);
    server_->Post(any, handler);
    if (options_.staticDir) {
        if (!server_->set_mount_point("/ui", options_.staticDir->string()))
            throw Error("static directory does not exist: " + options_.staticDir->string());
    }
    server_->set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) res.set_content(R"({"error":"no such endpoint"})", "application/json");
    });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
    if (options_.port == 0) {
        port_ = server_->bind_to_any_port(options_.host);
    } else {
        port_ = server_->bind_to_port(options_.host, options_.port) ? options_.port : -1;
    }
    if (port_ < 0) throw Error("cannot bind " + options_.host + ":" + std::to_string(options_.port));
    return port_;
}

void HttpServer::run() {
    if (port_ < 0) bind();
    server_->listen_after_bind();
}

int HttpServer::start() {
    const int port = bind();
    thread_ = std::thread([this] { server_->listen_after_bind(); });
    server_->wait_until_ready();
    return port;
}

void HttpServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace gaitxai
