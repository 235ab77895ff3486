#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "qdt/cache.hpp"
#include "qdt/config.hpp"
#include "qdt/errors.hpp"

using namespace qdt;

namespace {

std::string binPath() {
    const char* p = std::getenv("QUIVERDT_BIN");
    return p ? p : "./quiverdt";
}

std::string configDir() {
    const char* p = std::getenv("QDT_CONFIG_DIR");
    return p ? p : "../configs";
}

struct RunResult {
    int rc = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = binPath() + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    RunResult r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int status = pclose(p);
    r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string freshDir(const std::string& tag) {
    std::string tpl = "/tmp/qdt_" + tag + "_XXXXXX";
    char* got = mkdtemp(tpl.data());
    REQUIRE(got != nullptr);
    return tpl;
}

std::string writeFile(const std::string& dir, const std::string& name, const std::string& text) {
    std::string path = dir + "/" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("config parsing") {
    QuiverConfig cfg = parseQuiverConfig(R"(
        # comment line
        vertices = ["a", "b"]
        arrows = [["a", "b"], ["b", "b"],]   # trailing comma tolerated
    )");
    CHECK(cfg.quiver.numVertices() == 2);
    CHECK(cfg.quiver.arrowCount(0, 1) == 1);
    CHECK(cfg.quiver.loopCount(1) == 1);
    CHECK(!cfg.charge.has_value());

    QuiverConfig charged = parseQuiverConfig(
        "vertices = [\"1\", \"2\"]\narrows = [[\"1\", \"2\"]]\n"
        "charge = [[\"-1\", \"1\"], [\"1/2\", \"3\"]]\n");
    REQUIRE(charged.charge.has_value());
    CHECK(charged.charge->numVertices() == 2);
    CHECK(charged.charge->eval({1, 0}) == std::pair<Rat, Rat>{Rat(-1), Rat(1)});
    CHECK(charged.charge->eval({0, 1}) == std::pair<Rat, Rat>{Rat(1, 2), Rat(3)});

    // Unquoted atoms work for names and numbers alike.
    QuiverConfig bare = parseQuiverConfig("vertices = [1, 2]\narrows = [[1, 2]]");
    CHECK(bare.quiver.numArrows() == 1);
}

TEST_CASE("config rejection") {
    CHECK_THROWS_AS(parseQuiverConfig("arrows = []"), ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = []\narrows = []"), ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]"), ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]\narrows = [[\"1\", \"2\"]]"),
                    ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\", \"1\"]\narrows = []"), ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]\narrows = [[\"1\"]]"), ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]\narrows = []\nextra = [\"x\"]"),
                    ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]\nvertices = [\"1\"]\narrows = []"),
                    ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"\narrows = []"), ConfigError);
    CHECK_THROWS_AS(
        parseQuiverConfig("vertices = [\"1\"]\narrows = []\ncharge = [[\"x\", \"1\"]]"),
        ConfigError);
    CHECK_THROWS_AS(parseQuiverConfig("vertices = [\"1\"]\narrows = []\ncharge = [[\"1\", \"0\"]]"),
                    ConfigError);
    CHECK_THROWS_AS(
        parseQuiverConfig(
            "vertices = [\"1\", \"2\"]\narrows = []\ncharge = [[\"0\", \"1\"]]"),
        ConfigError);
    CHECK_THROWS_AS(loadQuiverConfig("/nonexistent/quiver.toml"), ConfigError);
    CHECK_THROWS_AS(parseRatText("1/0"), ConfigError);
    CHECK(parseRatText("-7/2") == Rat(-7, 2));
}

TEST_CASE("reordered arrow lists hash identically") {
    QuiverConfig a = parseQuiverConfig(
        "vertices = [\"1\", \"2\"]\narrows = [[\"1\", \"2\"], [\"2\", \"1\"], [\"1\", \"1\"]]");
    QuiverConfig b = parseQuiverConfig(
        "vertices = [\"1\", \"2\"]\narrows = [[\"1\", \"1\"], [\"1\", \"2\"], [\"2\", \"1\"]]");
    CHECK(a.quiver.canonicalString() == b.quiver.canonicalString());
    QuiverConfig c = parseQuiverConfig("vertices = [\"1\", \"2\"]\narrows = [[\"2\", \"1\"]]");
    CHECK(a.quiver.canonicalString() != c.quiver.canonicalString());
}

TEST_CASE("cache store round trip") {
    const std::string dir = freshDir("cache");
    Cache cache(dir);
    const std::string key = cacheKey("vertices[1];arrows[]", "op", "bound=2");
    CHECK(!cache.get(key).has_value());
    cache.put(key, "{\"x\":1}");
    REQUIRE(cache.get(key).has_value());
    CHECK(*cache.get(key) == "{\"x\":1}");

    // Same material, same key; any field change moves it.
    CHECK(key == cacheKey("vertices[1];arrows[]", "op", "bound=2"));
    CHECK(key != cacheKey("vertices[1];arrows[]", "op", "bound=3"));
    CHECK(key != cacheKey("vertices[1];arrows[]", "other", "bound=2"));

    std::ofstream(dir + "/" + key + ".json") << "not json at all";
    CHECK(!cache.get(key).has_value());
    cache.put(key, "repaired");
    CHECK(*cache.get(key) == "repaired");

    Cache disabled("");
    CHECK(!disabled.enabled());
    disabled.put(key, "ignored");
    CHECK(!disabled.get(key).has_value());
}

TEST_CASE("moment fiber count command") {
    RunResult r = run("count --quiver " + configDir() + "/a2.toml --gamma 1,1 --q 3");
    CHECK(r.rc == 0);
    CHECK(r.out.find("raw   5") != std::string::npos);
    CHECK(r.out.find("stack 5/4") != std::string::npos);

    RunResult js = run("count --quiver " + configDir() + "/a2.toml --gamma 1,1 --q 3 --out json");
    CHECK(js.rc == 0);
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc.at("raw").get<std::string>() == "5");
    CHECK(doc.at("stack").get<std::string>() == "5/4");
}

TEST_CASE("Kac table command") {
    RunResult r = run("kac --quiver " + configDir() + "/kronecker.toml --bound 2");
    CHECK(r.rc == 0);
    CHECK(r.out.find("(1,1)  q + 1") != std::string::npos);

    RunResult js = run("kac --quiver " + configDir() + "/kronecker.toml --bound 2 --out json");
    auto doc = nlohmann::json::parse(js.out);
    auto a11 = doc.at("kac").at("(1,1)");
    REQUIRE(a11.size() == 2);
    CHECK(a11[0].get<std::string>() == "1");
    CHECK(a11[1].get<std::string>() == "1");
}

TEST_CASE("verification command exits zero on the Jordan quiver") {
    RunResult r = run("verify --quiver " + configDir() + "/jordan.toml --bound 2 --primes 2,3,5");
    CHECK(r.rc == 0);
    CHECK(r.out.find("residuals all zero: yes") != std::string::npos);
}

TEST_CASE("twist sweep command") {
    RunResult r = run("twist-check --quiver " + configDir() + "/a2.toml --bound 3");
    CHECK(r.rc == 0);
    CHECK(r.out.find("failures 0") != std::string::npos);
}

TEST_CASE("exit codes") {
    const std::string dir = freshDir("cfg");
    writeFile(dir, "bad.toml", "vertcies = [\"1\"]\n");
    CHECK(run("kac --quiver " + dir + "/bad.toml").rc == 2);
    CHECK(run("kac --quiver " + dir + "/missing.toml").rc == 2);
    CHECK(run("count --quiver " + configDir() + "/a2.toml --gamma 1 --q 3").rc == 2);
    CHECK(run("count --quiver " + configDir() + "/a2.toml --gamma 1,1").rc == 2);
    CHECK(run("count --quiver " + configDir() + "/twoloop.toml --gamma 3 --q 5").rc == 3);
    CHECK(run("dt --quiver " + configDir() + "/a2.toml --charge \"1,1;1,1\" --bound 2").rc == 2);
    CHECK(run("kac --quiver " + configDir() + "/a2.toml --bound 0").rc == 2);
    CHECK(run("kac --quiver " + configDir() + "/a2.toml --primes 2,2").rc == 2);
}

TEST_CASE("cold and warm cache runs print identical bytes") {
    const std::string dir = freshDir("warm");
    const std::string common = "verify --quiver " + configDir() +
                               "/jordan.toml --bound 2 --primes 2,3 --cache " + dir;
    RunResult cold = run(common);
    RunResult warm = run(common);
    CHECK(cold.rc == 0);
    CHECK(warm.rc == 0);
    CHECK(cold.out == warm.out);

    // The warm run was served from the store: one entry exists for the job.
    RunResult jsonCold = run(common + " --out json");
    RunResult jsonWarm = run(common + " --out json");
    CHECK(jsonCold.out == jsonWarm.out);
    CHECK(nlohmann::json::parse(jsonCold.out).at("allResidualsZero").get<bool>());
}

TEST_CASE("dt command factors under a generic charge") {
    RunResult r = run("dt --quiver " + configDir() +
                      "/a2.toml --bound 2 --primes 2,3 --charge \"-1,1;1,1\"");
    CHECK(r.rc == 0);
    CHECK(r.out.find("ray -1:1") != std::string::npos);
    CHECK(r.out.find("ray 0:1") != std::string::npos);
    CHECK(r.out.find("ray 1:1") != std::string::npos);
    CHECK(r.out.find("omega(1,1) = -L") != std::string::npos);
}

TEST_CASE("qdim command reports concordant oracles") {
    RunResult r = run("qdim --quiver " + configDir() + "/jordan.toml --bound 3");
    CHECK(r.rc == 0);
    CHECK(r.out.find("(3)  dim 3") != std::string::npos);
    RunResult js = run("qdim --quiver " + configDir() + "/jordan.toml --gamma 2 --out json");
    auto doc = nlohmann::json::parse(js.out);
    CHECK(doc.at("(2)").at("dim").get<long>() == 2);
    CHECK(doc.at("(2)").at("rankDefault").get<long>() == 2);
    CHECK(doc.at("(2)").at("rankPerturbed").get<long>() == 2);
}
