#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
    int code = -1;
    std::string out;
};

// stderr folded into the captured text
Run run(const std::string& args) {
    const std::string cmd = std::string(FQS_BINARY) + " " + args + " 2>&1";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), p)) r.out += buf.data();
    const int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / ("fqs_cli_" + name);
    fs::remove_all(d);
    return d;
}

fs::path write_config(const fs::path& dir, const json& j) {
    fs::create_directories(dir);
    const fs::path p = dir / "config.json";
    std::ofstream(p) << j.dump();
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string example(const std::string& name) { return std::string(FQS_SOURCE_DIR) + "/config/" + name; }

}  // namespace

TEST_CASE("invalid epsilon exits 2 with a structured error and no outputs") {
    const fs::path dir = fresh_dir("bad_eps");
    const auto cfg = write_config(dir / "in", json{{"preset", "DrivenQubit"}, {"epsilon", 0.0}});
    const auto r = run("simulate --config " + cfg.string() + " --out " + (dir / "out").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("InvalidEpsilon") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("non-Hermitian custom drive is rejected") {
    const fs::path dir = fresh_dir("non_herm");
    json j = json::parse(slurp(example("custom.json")));
    j["params"]["components"]["-1"] = {0.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
    const auto cfg = write_config(dir / "in", j);
    const auto r = run("simulate --config " + cfg.string() + " --out " + (dir / "out").string());
    CHECK(r.code == 2);
    CHECK(r.out.find("NonHermitianPair") != std::string::npos);
    CHECK_FALSE(fs::exists(dir / "out"));
}

TEST_CASE("unknown config keys and suites are validation errors") {
    const fs::path dir = fresh_dir("unknown");
    const auto cfg = write_config(dir / "in", json{{"preset", "DrivenQubit"}, {"epsilonn", 1e-3}});
    CHECK(run("simulate --config " + cfg.string() + " --out " + (dir / "out").string()).code == 2);
    CHECK(run("verify --suite nope --out " + (dir / "out").string()).code == 2);
    CHECK(run("simulate --config " + (dir / "missing.json").string()).code == 2);
}

TEST_CASE("resources emits one row per regime") {
    const fs::path dir = fresh_dir("resources");
    const auto r = run("resources --out " + dir.string());
    CHECK(r.code == 0);
    std::istringstream csv(slurp(dir / "resources.csv"));
    std::string line;
    int rows = 0;
    std::getline(csv, line);
    CHECK(line.rfind("regime,", 0) == 0);
    while (std::getline(csv, line)) ++rows;
    CHECK(rows == 5);
    const auto j = json::parse(slurp(dir / "resources.json"));
    CHECK(j.at("rows").size() == 5);
}

TEST_CASE("simulate over one period on the driven qubit") {
    const fs::path dir = fresh_dir("simulate");
    const auto cfg = write_config(dir / "in", json{{"preset", "DrivenQubit"},
                                                   {"t_periods", 1},
                                                   {"epsilon", 1e-4},
                                                   {"seed", 3}});
    const auto a = run("simulate --config " + cfg.string() + " --out " + (dir / "a").string());
    CHECK(a.code == 0);
    const auto ja = json::parse(slurp(dir / "a" / "result.json"));
    CHECK(ja.at("fidelity").get<double>() >= 0.9999);
    CHECK(ja.at("deviation").get<double>() <= 1e-4);
    CHECK(fs::exists(dir / "a" / "state.csv"));
    CHECK(fs::exists(dir / "a" / "summary.csv"));

    // identical inputs give identical records apart from the timestamp
    const auto b = run("simulate --config " + cfg.string() + " --out " + (dir / "b").string());
    CHECK(b.code == 0);
    auto jb = json::parse(slurp(dir / "b" / "result.json"));
    auto ja2 = ja;
    ja2.erase("timestamp");
    jb.erase("timestamp");
    CHECK(ja2 == jb);
    CHECK(slurp(dir / "a" / "state.csv") == slurp(dir / "b" / "state.csv"));
}

TEST_CASE("output selection limits the files written") {
    const fs::path dir = fresh_dir("outputs");
    const auto cfg = write_config(dir / "in", json{{"preset", "DrivenQubit"},
                                                   {"t", 0.5},
                                                   {"epsilon", 1e-3},
                                                   {"outputs", {"summary"}}});
    CHECK(run("simulate --config " + cfg.string() + " --out " + (dir / "out").string()).code == 0);
    CHECK(fs::exists(dir / "out" / "summary.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "state.csv"));
    CHECK_FALSE(fs::exists(dir / "out" / "result.json"));
}

TEST_CASE("example configs load") {
    for (const char* name : {"custom.json", "longtime.json", "adiabatic_prep.json"}) {
        const fs::path dir = fresh_dir(std::string("example_") + name);
        const auto r = run("simulate --config " + example(name) + " --out " + dir.string());
        CHECK_MESSAGE(r.code == 0, name << ": " << r.out);
    }
    const fs::path dir = fresh_dir("example_resources");
    CHECK(run("resources --config " + example("resources.json") + " --out " + dir.string()).code == 0);
    const auto j = json::parse(slurp(dir / "resources.json"));
    CHECK(j.at("rows").size() == 2 * 2 * 2 * 5);
}

TEST_CASE("Hubbard preset over half a period") {
    const fs::path dir = fresh_dir("hubbard");
    const auto cfg = write_config(dir / "in", json{{"preset", "Hubbard2"}, {"t_periods", 0.5}, {"epsilon", 1e-3}});
    const auto r = run("simulate --config " + cfg.string() + " --out " + (dir / "out").string());
    CHECK_MESSAGE(r.code == 0, r.out);
    const auto j = json::parse(slurp(dir / "out" / "result.json"));
    CHECK(j.at("fidelity").get<double>() >= 1.0 - 1e-3);
}

TEST_CASE("encodings suite residuals") {
    const fs::path dir = fresh_dir("encodings");
    CHECK(run("verify --suite encodings --out " + dir.string()).code == 0);
    const auto j = json::parse(slurp(dir / "verify.json"));
    int residuals = 0;
    for (const auto& row : j.at("rows")) {
        const auto name = row.at("name").get<std::string>();
        if (name.size() > 9 && name.substr(name.size() - 9) == ":residual") {
            ++residuals;
            CHECK(row.at("measured").get<double>() <= 1e-10);
        }
    }
    CHECK(residuals > 20);
}

TEST_CASE("bounds suite on the driven qubit has no violations") {
    const fs::path dir = fresh_dir("verify");
    const auto r = run("verify --suite bounds --threads 2 --out " + dir.string());
    CHECK_MESSAGE(r.code == 0, r.out);
    const auto j = json::parse(slurp(dir / "verify.json"));
    CHECK(j.at("violations").get<int>() == 0);
    CHECK(j.at("rows").size() > 200);
}
