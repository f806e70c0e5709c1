#include "doctest.h"
#include "rowpade/cli.hpp"
#include "rowpade/report.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using rowpade::report::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "rowpade");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = rowpade::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    const fs::path dir = fs::temp_directory_path() / "rowpade_cli_test";
    fs::create_directories(dir);
    return dir;
}

fs::path write_file(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run({"list-examples"}).code == rowpade::cli::ok);
    CHECK(run({}).code == rowpade::cli::usage_error);
    CHECK(run({"bogus"}).code == rowpade::cli::usage_error);
    CHECK(run({"verify", "no-such-suite"}).code == rowpade::cli::usage_error);
    CHECK(run({"approximate", "--series", "catalog:5.1-fg", "--n", "x"}).code == rowpade::cli::usage_error);
    CHECK(run({"approximate", "--series", "catalog:nope", "--n", "4", "--m", "1"}).code == rowpade::cli::usage_error);
    CHECK(run({"approximate", "--series", "catalog:5.1-fg", "--n", "1", "--multi-index", "3,3"}).code ==
          rowpade::cli::usage_error);

    const auto bad = write_file("bad.json", "{not json");
    CHECK(run({"approximate", "--series", bad.string(), "--n", "4", "--m", "1"}).code == rowpade::cli::usage_error);

    // h carries log constants, so sup errors cannot be evaluated
    const auto out = scratch() / "h_fail.json";
    const auto r = run({"row", "--series", "catalog:5.3-h", "--multi-index", "1,1", "--n-range", "4:5", "--compact",
                        "circle:r=0.5,points=8", "--out", out.string()});
    CHECK(r.code == rowpade::cli::numeric_failure);
    CHECK_FALSE(json::parse(slurp(out))["failures"].empty());
}

TEST_CASE("list-examples names the catalog") {
    const auto r = run({"list-examples"});
    CHECK(r.out.find("5.1-fg") != std::string::npos);
    CHECK(r.out.find("5.3-hhat") != std::string::npos);
}

TEST_CASE("approximate reports") {
    SUBCASE("fg alternates") {
        const auto r = run({"approximate", "--series", "catalog:5.1-fg", "--n", "6", "--multi-index", "1,1"});
        REQUIRE(r.code == 0);
        const auto doc = json::parse(r.out);
        CHECK(doc["schema"] == "rowpade-report");
        CHECK(doc["schema_version"] == 1);
        CHECK(doc["command"] == "approximate");
        CHECK(doc["result"]["denominator"]["coefficients"] == json::array({"-1", "0", "1"}));
        CHECK(doc["result"]["denominator"]["precision_bits"].is_null());
    }
    SUBCASE("fw closed form") {
        const auto r = run({"approximate", "--series", "catalog:5.1-fw", "--params", "p=2", "--n", "5", "--multi-index", "1,1"});
        REQUIRE(r.code == 0);
        CHECK(json::parse(r.out)["result"]["denominator"]["coefficients"] == json::array({"-28/31", "0", "1"}));
    }
    SUBCASE("rational spec file") {
        const auto spec = write_file("geo.json", R"({"kind":"rational","num":["1"],"den":["1","-1"]})");
        const auto r = run({"approximate", "--series", spec.string(), "--n", "4", "--m", "1"});
        REQUIRE(r.code == 0);
        const auto res = json::parse(r.out)["result"];
        CHECK(res["denominator"]["coefficients"] == json::array({"-1", "1"}));
        CHECK(res["contact"]["remainder_vanishes"] == true);
    }
    SUBCASE("float mode tags precision") {
        const auto r = run({"approximate", "--series", "catalog:5.1-fg", "--n", "5", "--multi-index", "1,1", "--mode", "float",
                            "--precision-bits", "128"});
        REQUIRE(r.code == 0);
        const auto den = json::parse(r.out)["result"]["denominator"];
        CHECK(den["mode"] == "float");
        CHECK(den["precision_bits"] == 128);
        CHECK(den["coefficients"] == json::array({"1", "0", "1"}));
    }
}

TEST_CASE("report round trip") {
    const auto out = scratch() / "fw_row.json";
    const auto r = run({"row", "--series", "catalog:5.1-fw", "--params", "p=2", "--multi-index", "1,1", "--n-range", "4:12",
                        "--indicator-points", "1", "--compact", "circle:r=0.5,points=16", "--out", out.string()});
    REQUIRE(r.code == 0);
    const std::string text = slurp(out);
    const auto doc = json::parse(text);
    CHECK(doc.dump(2) + "\n" == text);
    CHECK(json::parse(doc.dump()).dump() == doc.dump());
    CHECK(doc["records"].size() == 9);

    const std::string csv = slurp(fs::path(out).replace_extension(".csv"));
    CHECK(csv.rfind("n,quantity,value\n", 0) == 0);
    CHECK(csv.find("abs_A:c1") != std::string::npos);
    CHECK(csv.find("sup_error:c1:K1") != std::string::npos);
}

TEST_CASE("h and hhat rows give identical denominators") {
    auto denominators = [](const std::string& name) {
        const auto r = run({"row", "--series", "catalog:" + name, "--multi-index", "1,1", "--n-range", "4:10"});
        REQUIRE(r.code == 0);
        std::vector<std::string> dens;
        for (const auto& rec : json::parse(r.out)["records"]) dens.push_back(rec["simultaneous"]["denominator"]["coefficients"].dump());
        return dens;
    };
    CHECK(denominators("5.3-h") == denominators("5.3-hhat"));
}

TEST_CASE("verify writes json") {
    const auto r = run({"verify", "exact-denominators"});
    CHECK(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["command"] == "verify");
    CHECK(r.err.find("PASS") != std::string::npos);
}
