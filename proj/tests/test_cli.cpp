#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tropism/cli.hpp"
#include "tropism/json.hpp"
#include "tropism/parser.hpp"

using namespace tropism;

namespace {

struct Result
{
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content)
{
    const auto path = std::filesystem::temp_directory_path() / ("tropism_cli_" + name);
    std::ofstream(path) << content;
    return path.string();
}

} // namespace

TEST_CASE("parse echoes a canonical form that parses back to the same system")
{
    const auto r = call({"parse", "--system", "illus3"});
    REQUIRE(r.code == 0);
    CHECK(parse_system(r.out) == builtin_system("illus3"));

    const auto j = call({"parse", "--system", "cyclic:4", "--format", "json"});
    REQUIRE(j.code == 0);
    const Json doc = Json::parse(j.out);
    CHECK(doc["nvars"] == 4);
    CHECK(doc["polys"].size() == 4);
    CHECK(doc["polys"][3]["terms"].size() == 2);
}

TEST_CASE("usage and syntax errors exit with 2, domain errors with 1")
{
    const auto empty = call({"parse", "--system", temp_file("empty.txt", "")});
    CHECK(empty.code == 2);
    CHECK(empty.err.find("empty") != std::string::npos);

    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"parse"}).code == 2);
    CHECK(call({"parse", "--system", "illus3", "--format", "xml"}).code == 2);
    CHECK(call({"parse", "--system", "/nonexistent/system.txt"}).code == 2);
    CHECK(call({"parse", "--system", temp_file("bad.txt", "x0^ + ;")}).code == 2);
    CHECK(call({"initforms", "--system", "illus3", "--vector", "1,2"}).code == 2);
    CHECK(call({"degree", "--rep", "backelin:1"}).code == 2);
    CHECK(call({"verify", "--system", "cyclic:4"}).code == 2);
    CHECK(call({"parse", "--help"}).code == 0);

    CHECK(call({"solve-binomial", "--system", "illus3"}).code == 1);
    CHECK(call({"degree", "--system", "cyclic:9", "--rep", "backelin:2"}).code == 1);

    setenv("TROPISM_FORGE_THREADS", "many", 1);
    CHECK(call({"tropisms", "--system", "cyclic:4"}).code == 2);
    unsetenv("TROPISM_FORGE_THREADS");
}

TEST_CASE("degree and components of Backelin sets")
{
    const auto r = call({"degree", "--system", "cyclic:9", "--rep", "backelin:3"});
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");

    const auto j = call({"degree", "--rep", "backelin:4", "--seed", "7", "--format", "json"});
    REQUIRE(j.code == 0);
    const Json doc = Json::parse(j.out);
    CHECK(doc["degree"] == 4);

    // the parametrization JSON reads back
    const std::string path = temp_file("rep.json", doc["parametrization"].dump());
    const auto again = call({"degree", "--system", "cyclic:16", "--rep", path});
    CHECK(again.code == 0);
    CHECK(again.out == "4\n");

    const auto c = call({"components", "--system", "cyclic:9", "--rep", "backelin:3", "--format", "json"});
    REQUIRE(c.code == 0);
    const Json comps = Json::parse(c.out);
    CHECK(comps["count"] == 6);
    for (const auto& comp : comps["components"])
        CHECK(comp["degree"] == 3);
}

TEST_CASE("verify points and parametrizations")
{
    const auto ok = call({"verify", "--system", "cyclic:9", "--roots-order", "3", "--point",
                          "1,1,u^2,u,u,1,u^2,u^2,u", "--format", "json"});
    REQUIRE(ok.code == 0);
    CHECK(Json::parse(ok.out)["satisfied"] == true);

    const auto ones = call({"verify", "--system", "cyclic:9", "--point", "1,1,1,1,1,1,1,1,1", "--format", "json"});
    REQUIRE(ones.code == 0);
    const Json doc = Json::parse(ones.out);
    CHECK(doc["satisfied"] == false);
    CHECK(doc["residuals"][0] == "9");

    const auto rep = call({"verify", "--system", "cyclic:16", "--rep", "backelin:4"});
    CHECK(rep.code == 0);
    CHECK(rep.out.rfind("satisfied", 0) == 0);
}

TEST_CASE("binomial systems and initial forms")
{
    const std::string path = temp_file("binomial.txt", "x0^2*x1*x2^4*x3^3 - 1; x0*x1*x2*x3 - 1;");
    const auto r = call({"solve-binomial", "--system", path, "--format", "json"});
    REQUIRE(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK(doc["d"] == 2);
    CHECK(doc["exact"] == true);
    CHECK(doc["solutions"].size() == 1);
    CHECK(doc["transform"].size() == 4);

    const auto init = call({"initforms", "--system", "illus3", "--vector", "1,0,0", "--vector", "0,1,0"});
    REQUIRE(init.code == 0);
    const auto F = builtin_system("illus3");
    CHECK(parse_system(init.out) == initial_form_system(F, {{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("tropisms of cyclic 4-roots with orbits")
{
    const auto r = call({"tropisms", "--system", "cyclic:4", "--dim", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const Json doc = Json::parse(r.out);
    CHECK_FALSE(doc["cones"].empty());
    REQUIRE(doc["orbits"].is_array());
    std::size_t members = 0;
    for (const auto& o : doc["orbits"])
        members += o["members"].size();
    CHECK(members == doc["cones"].size());
}

TEST_CASE("puiseux on cyclic 9-roots is exact and byte-deterministic")
{
    const std::vector<std::string> args{"puiseux", "--system", "cyclic:9", "--dim", "2", "--roots-order", "3",
                                        "--format", "json"};
    setenv("TROPISM_FORGE_THREADS", "1", 1);
    const auto serial = call(args);
    unsetenv("TROPISM_FORGE_THREADS");
    const auto parallel = call(args);
    REQUIRE(serial.code == 0);
    CHECK(serial.out == parallel.out);

    const Json doc = Json::parse(serial.out);
    const Json u{1, 1, -2, 1, 1, -2, 1, 1, -2};
    const Json v{0, 1, -1, 0, 1, -1, 0, 1, -1};
    const std::vector<std::string> coefs{"1", "1", "u^2", "u", "u", "1", "u^2", "u^2", "u"};
    const std::vector<Json> exps{Json{"1", "0"}, Json{"1", "1"}, Json{"-2", "-1"}};
    bool found = false;
    for (const auto& dev : doc["developments"]) {
        if (dev["tropisms"] != Json{u, v})
            continue;
        bool match = dev["exact"] == true;
        for (std::size_t j = 0; j < 9 && match; ++j) {
            match = dev["coords"][j]["coef"] == coefs[j] && dev["coords"][j]["exp"] == exps[j % 3] &&
                    dev["coords"][j]["second"].is_null();
        }
        found = found || match;
    }
    CHECK(found);
}
