#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "photonmol/cli.hpp"

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "photonmol");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = photonmol::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("photonmol_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("missing subcommand is a usage error") {
    const auto r = run({});
    CHECK(r.code == 1);
    CHECK((r.out + r.err).find("point") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({"point", "--bogus"}).code == 1);
}

TEST_CASE("point at the single-drive optimum antibunches") {
    const auto r = run({"point", "--j", "10", "--eps-a", "0.01", "--eps-b", "0", "--delta", "0.2887", "--u", "0.00385"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("result").at("g2_a").get<double>() < 1e-3);
    CHECK(j.at("params").at("coupling_j") == 10.0);
}

TEST_CASE("point accepts a parameter file and solver choice") {
    const auto dir = scratch("params");
    const auto file = dir / "p.json";
    std::ofstream(file) << R"({"coupling_j": 10, "delta_a": 3.3333, "delta_b": 3.3333, "u_a": 0.01875,
                               "u_b": 0.01875, "eps_a": 0.01, "eps_b": 0.0033333})";
    const auto r = run({"point", "--params", file.string(), "--solver", "hierarchy"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("result").at("solver") == "Hierarchy");

    std::ofstream(file) << R"({"coupling": 10})";
    CHECK(run({"point", "--params", file.string()}).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("exit codes for invalid input and solver failure") {
    CHECK(run({"point", "--kappa", "0"}).code == 1);
    const auto failed = run({"point", "--kappa", "1e-30", "--j", "10"});
    CHECK(failed.code == 2);
    CHECK(failed.err.find("kappa_a=1e-30") != std::string::npos);
}

TEST_CASE("optimize reports the dual-drive optimum") {
    const auto r = run({"optimize", "--j", "10", "--eta", "3", "--phi", "0"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("delta_opt").get<double>() == doctest::Approx(3.33).epsilon(0.02));
    CHECK(j.at("method") == "Numeric");

    const auto asym = nlohmann::json::parse(run({"optimize", "--j", "10", "--eta", "3", "--method", "dual-asymptotic"}).out);
    CHECK(asym.at("u_opt").get<double>() == doctest::Approx(0.01875));
    const auto single = nlohmann::json::parse(run({"optimize", "--j", "10", "--eta", "inf"}).out);
    CHECK(single.at("delta_opt").get<double>() == doctest::Approx(0.2887).epsilon(0.1));
    CHECK(run({"optimize", "--j", "10", "--eta", "1", "--method", "dual-exact"}).code == 1);
}

TEST_CASE("sweep writes a CSV and sidecar, identical across thread counts") {
    const auto dir = scratch("sweep");
    const auto config = dir / "config.json";
    std::ofstream(config) << R"cfg({
        "base": {"coupling_j": 10, "eps_a": 0.01},
        "axis1": {"parameter": "eta", "min": 2, "max": 5, "count": 3},
        "axis2": {"parameter": "delta", "min": 1, "max": 4, "count": 4},
        "constraints": ["u := dual_drive_u(kappa, j, eta)"],
        "solver": "MasterEquation"
    })cfg";
    const auto one = dir / "one.csv";
    const auto many = dir / "many.csv";
    REQUIRE(run({"sweep", "--config", config.string(), "--out", one.string()}).code == 0);
    REQUIRE(run({"--threads", "8", "sweep", "--config", config.string(), "--out", many.string()}).code == 0);
    CHECK(slurp(one) == slurp(many));
    const std::string text = slurp(one);
    CHECK(std::count(text.begin(), text.end(), '\n') == 13);

    const auto meta = nlohmann::json::parse(slurp(dir / "one.meta.json"));
    CHECK(meta.at("rows") == 12);
    CHECK(meta.at("config").at("axis1").at("parameter") == "eta");

    CHECK(run({"sweep", "--config", (dir / "missing.json").string(), "--out", one.string()}).code == 1);
    std::filesystem::remove_all(dir);
}

TEST_CASE("figure subcommand") {
    const auto dir = scratch("figure");
    const auto r = run({"figure", "fig4d", "--out-dir", dir.string(), "--resolution", "5", "--solver", "hierarchy"});
    REQUIRE(r.code == 0);
    CHECK(std::filesystem::exists(dir / "fig4d.csv"));
    CHECK(std::filesystem::exists(dir / "fig4d_plot.py"));
    CHECK(std::filesystem::exists(dir / "fig4d.meta.json"));

    const auto bad = run({"figure", "fig9", "--out-dir", dir.string()});
    CHECK(bad.code == 1);
    CHECK(bad.err.find("fig1a") != std::string::npos);
    std::filesystem::remove_all(dir);
}
