#include "doctest.h"

#include "gaitxai/errors.hpp"
#include "gaitxai/server.hpp"
#include "support/served.hpp"

#include "httplib.h"
#include "json.hpp"

#include <filesystem>
#include <fstream>

using namespace gaitxai;
using nlohmann::json;

TEST_CASE("HTTP server exposes the API end to end") {
    ApiService api(testing_support::small_served_state());
    const auto dir = std::filesystem::temp_directory_path() / "gaitxai_tests" / "ui";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "index.html") << "<html>client</html>";
    HttpServer server(api, ServerOptions{"127.0.0.1", 0, dir});
    const int port = server.start();
    REQUIRE(port > 0);

    httplib::Client cli("127.0.0.1", port);
    const auto list = cli.Get("/patients");
    REQUIRE(list);
    CHECK(list->status == 200);
    CHECK(list->get_header_value("Content-Type") == "application/json");
    const auto patients = json::parse(list->body);
    REQUIRE_FALSE(patients.empty());
    const std::string id = patients[0]["id"];

    const auto overview = cli.Get("/patients/" + id + "/sides/left/overview?mode=group&format=svg");
    REQUIRE(overview);
    CHECK(overview->status == 200);
    CHECK(overview->get_header_value("Content-Type") == "image/svg+xml");

    const auto posted = cli.Post("/patients/" + id + "/sides/right/classification", R"({"class":"JumpGait"})",
                                 "application/json");
    REQUIRE(posted);
    CHECK(posted->status == 200);
    CHECK(json::parse(posted->body)["confirmed"] == "JumpGait");
    CHECK(api.confirmed().at({id, Side::Right}) == GaitClass::JumpGait);

    const auto missing = cli.Get("/patients/000000");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    CHECK(json::parse(missing->body).contains("error"));
    const auto unknown = cli.Get("/elsewhere");
    REQUIRE(unknown);
    CHECK(unknown->status == 404);

    const auto page = cli.Get("/ui/index.html");
    REQUIRE(page);
    CHECK(page->status == 200);
    CHECK(page->body == "<html>client</html>");

    // A second server on the same port is refused.
    HttpServer clash(api, ServerOptions{"127.0.0.1", port, std::nullopt});
    CHECK_THROWS_AS(clash.bind(), Error);
    server.stop();
}

TEST_CASE("missing static directory is rejected") {
    ApiService api(testing_support::small_served_state());
    CHECK_THROWS_AS(HttpServer(api, ServerOptions{"127.0.0.1", 0, std::filesystem::path("/nonexistent/ui")}), Error);
}
