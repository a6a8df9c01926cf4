#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;
using cyclo::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result invoke(std::vector<std::string> args, const std::atomic<bool>* cancel = nullptr) {
    std::ostringstream out, err;
    const int code = run(args, out, err, cancel);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("value") {
    auto r = invoke({"value", "--m", "7"});
    CHECK(r.code == 0);
    CHECK(r.out.find("127") != std::string::npos);

    r = invoke({"value", "20", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["delta"] == 5);
    CHECK(j["psi"]["value"] == "41");
    CHECK(j["psi_plus"]["value"] == "41");
    CHECK(j["psi_minus"]["value"] == "1");

    CHECK(invoke({"value", "0"}).code == cyclo::cli::kExitUsage);
}

TEST_CASE("value digit count for a large index") {
    const auto r = invoke({"value", "60287", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["phi"]["bits"] == 56772);
    CHECK(j["phi"]["digits"] == 17091);
    CHECK_FALSE(j["phi"].contains("value"));
}

TEST_CASE("split and classify") {
    auto r = invoke({"split", "28", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["phi_plus"]["value"] == "29");
    CHECK(j["phi_minus"]["value"] == "113");
    CHECK(invoke({"split", "27"}).code == cyclo::cli::kExitUsage);

    r = invoke({"classify", "--n", "2047", "--m", "11", "--format", "json"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["class"] == "composite");
    CHECK(j["witness"] == "23");

    r = invoke({"classify", "--m", "17"});
    CHECK(r.code == 0);
    CHECK(r.out.find("proven_prime") != std::string::npos);
    CHECK(invoke({"classify"}).code == cyclo::cli::kExitUsage);
    CHECK(invoke({"classify", "--n", "12x"}).code == cyclo::cli::kExitUsage);
}

TEST_CASE("order and sophie") {
    auto r = invoke({"order", "--p", "89"});
    CHECK(r.code == 0);
    CHECK(r.out.find("= 11") != std::string::npos);
    CHECK(invoke({"order", "--p", "91"}).code == cyclo::cli::kExitUsage);
    r = invoke({"order", "--x", "25", "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).size() > 0);

    r = invoke({"sophie", "--limit", "30", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "p,q,p_mod4,q_mod8,jacobi2q,divides,proper\n11,23,3,7,1,1,1\n23,47,3,7,1,1,1\n");
    CHECK(invoke({"sophie", "--p", "3"}).code == cyclo::cli::kExitUsage);
}

TEST_CASE("survey output formats") {
    auto r = invoke({"survey", "--kmax", "2", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out == "k,phi_prime,psi_prime,psi_plus_prime,psi_minus_prime\n1,1,1,0,0\n2,3,3,1,0\n");
    r = invoke({"survey", "--kmax", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.size() == 2);
    CHECK(j[1]["phi_prime"] == 3);
    CHECK(invoke({"survey", "--kmax", "0"}).code == cyclo::cli::kExitUsage);
    CHECK(invoke({"survey", "--kmax", "18"}).code == cyclo::cli::kExitUsage);
}

TEST_CASE("survey interrupt and resume") {
    const fs::path store = fs::temp_directory_path() / ("cyclo-cli-" + std::to_string(::getpid()) + ".jsonl");
    fs::remove(store);
    std::atomic<bool> cancel{true};
    auto r = invoke({"survey", "--kmax", "6", "--resume", store.string()}, &cancel);
    CHECK(r.code == cyclo::cli::kExitInterrupted);
    r = invoke({"survey", "--kmax", "6", "--resume", store.string(), "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(r.out.find("\n6,33,36,7,5\n") != std::string::npos);

    r = invoke({"validate", "--bound", "64", "--store", store.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);

    std::ofstream(store, std::ios::app) << "broken line\n";
    r = invoke({"survey", "--kmax", "6", "--resume", store.string()});
    CHECK(r.code == cyclo::cli::kExitIo);
    CHECK(r.err.find("line") != std::string::npos);
    fs::remove(store);
}

TEST_CASE("density, constant-c, census") {
    auto r = invoke({"density", "--k", "15", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["sum"].get<double>() == doctest::Approx(223.4).epsilon(0.3 / 223.4));
    CHECK(j["index_set"] == "exclude_4_mod_8");

    r = invoke({"constant-c", "--format", "json"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["c"].get<double>() == doctest::Approx(0.999774).epsilon(1e-6));

    r = invoke({"census", "--x", "25", "--override", "0", "--format", "json"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["witnessed"][0]["m"] == 11);
    CHECK(j["witnessed"][0]["p"] == 23);
}

TEST_CASE("check suites and usage errors") {
    auto r = invoke({"check", "--suite", "identities", "--limit", "2000"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("PASS", 0) == 0);
    CHECK(invoke({"check", "--suite", "bounds", "--limit", "2000"}).code == 0);
    CHECK(invoke({"check", "--suite", "phi-ratio", "--z", "100000"}).code == 0);
    CHECK(invoke({"check", "--suite", "magnitude", "--limit", "700", "--slack", "2"}).code ==
          cyclo::cli::kExitCheckFailed);
    CHECK(invoke({"check", "--suite", "nope"}).code == cyclo::cli::kExitUsage);
    CHECK(invoke({"frobnicate"}).code == cyclo::cli::kExitUsage);
    CHECK(invoke({}).code == cyclo::cli::kExitUsage);
    CHECK(invoke({"--help"}).code == 0);
    CHECK(invoke({"value", "7", "--seed", "12345"}).code == 0);
}

}
