// fqs: simulate, verify and cost Floquet Hamiltonian simulation from a JSON config.
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "fqs/amplification.hpp"
#include "fqs/config.hpp"
#include "fqs/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fqs;

namespace {

enum Exit { kOk = 0, kViolation = 1, kValidation = 2, kNumerical = 3 };

struct Options {
    std::string config;
    std::string out = "out";
    int threads = 0;
    std::optional<std::uint64_t> seed;
    std::string suite = "all";
};

void setup_logging() {
    auto logger = spdlog::stderr_color_mt("fqs");
    spdlog::set_default_logger(logger);
    spdlog::set_pattern("[%l] %v");
    const char* env = std::getenv("FQS_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug") {
        spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
        spdlog::set_level(spdlog::level::info);
    } else {
        spdlog::set_level(spdlog::level::err);
    }
}

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

std::string f17(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void print_error(const std::string& code, const std::string& message) {
    json rec{{"error", code}, {"message", message}};
    std::cerr << rec.dump() << "\n";
}

ExperimentConfig load(const Options& opt) {
    ExperimentConfig cfg = opt.config.empty() ? parse_config(json::object()) : load_config(opt.config);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.threads < 0) throw Error(ErrorCode::InvalidConfig, "--threads must be >= 0");
    if (opt.threads > 0) set_threads(opt.threads);
    return cfg;
}

bool wants(const ExperimentConfig& cfg, const std::string& what) {
    if (cfg.outputs.empty()) return true;
    return std::find(cfg.outputs.begin(), cfg.outputs.end(), what) != cfg.outputs.end();
}

json complex_list(const Vec& v) {
    json a = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}

json resource_json(const ResourceEstimate& r) {
    return {{"regime", regime_name(r.regime)},
            {"ancilla_qubits", r.ancilla_qubits},
            {"ancilla_expr", r.ancilla_expr},
            {"query_complexity", r.query_complexity},
            {"query_expr", r.query_expr},
            {"gates_per_query", r.gates_per_query},
            {"gates_expr", r.gates_expr},
            {"o_log_term", r.o_log_term},
            {"l_max", r.l_max},
            {"crossover_time", r.crossover_time},
            {"high_frequency", r.high_frequency},
            {"scaling_only", r.scaling_only},
            {"display_only", r.display_only}};
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

int cmd_simulate(const ExperimentConfig& cfg, const Options& opt) {
    const auto start = std::chrono::steady_clock::now();
    spdlog::info("simulate {} t={} eps={}", preset_name(cfg.preset), cfg.t, cfg.epsilon);
    PipelineOptions po;
    po.oracle_tol = cfg.oracle_tol;
    if (!cfg.model.lcu.empty()) po.alphas = mode_alphas(cfg.model.lcu);
    const bool longtime = cfg.regime == Regime::LongTime;
    PipelineResult r = longtime ? run_longtime(cfg.model.H, cfg.model.psi0, cfg.t, cfg.epsilon, po)
                                : run_adiabatic(cfg.model.H, cfg.model.psi0, cfg.t, cfg.epsilon, po);
    for (const auto& w : r.diag.warnings) spdlog::warn("{}", w);
    // Bernoulli draws at the exact success probability
    const double p = r.diag.success_probability;
    std::mt19937_64 rng(cfg.seed);
    std::bernoulli_distribution draw(std::clamp(p, 0.0, 1.0));
    const long shots = 10000;
    long hits = 0;
    for (long k = 0; k < shots; ++k) hits += draw(rng) ? 1 : 0;
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    spdlog::info("l_max={} fidelity={} deviation={}", r.diag.l_max, r.diag.fidelity, r.diag.deviation);

    fs::create_directories(opt.out);
    const fs::path dir = opt.out;
    if (wants(cfg, "state")) {
        std::ostringstream os;
        os << "index,re,im,exact_re,exact_im\n";
        for (Eigen::Index i = 0; i < r.state.size(); ++i)
            os << i << ',' << f17(r.state(i).real()) << ',' << f17(r.state(i).imag()) << ','
               << f17(r.exact(i).real()) << ',' << f17(r.exact(i).imag()) << '\n';
        write_file(dir / "state.csv", os.str());
    }
    if (wants(cfg, "summary")) {
        std::ostringstream os;
        os << "preset,regime,t,epsilon,l_max,sambe_dim,periods,success_probability,"
              "sampled_success_probability,fidelity,deviation,wall_time_s\n";
        os << preset_name(cfg.preset) << ',' << (longtime ? "longtime" : "adiabatic") << ',' << f17(cfg.t) << ','
           << f17(cfg.epsilon) << ',' << r.diag.l_max << ',' << r.diag.sambe_dim << ',' << r.diag.periods << ','
           << f17(p) << ',' << f17(double(hits) / shots) << ',' << f17(r.diag.fidelity) << ','
           << f17(r.diag.deviation) << ',' << f17(wall) << '\n';
        write_file(dir / "summary.csv", os.str());
    }
    if (wants(cfg, "json")) {
        json j{{"timestamp", iso_timestamp()},
               {"command", "simulate"},
               {"preset", preset_name(cfg.preset)},
               {"regime", longtime ? "longtime" : "adiabatic"},
               {"t", cfg.t},
               {"epsilon", cfg.epsilon},
               {"seed", cfg.seed},
               {"l_max", r.diag.l_max},
               {"sambe_dim", r.diag.sambe_dim},
               {"periods", r.diag.periods},
               {"remainder", r.diag.remainder},
               {"success_probability", p},
               {"sampled_success_probability", double(hits) / shots},
               {"fidelity", r.diag.fidelity},
               {"deviation", r.diag.deviation},
               {"state", complex_list(r.state)},
               {"exact", complex_list(r.exact)},
               {"warnings", r.diag.warnings}};
        if (r.diag.resource.query_complexity > 0.0) j["resource"] = resource_json(r.diag.resource);
        write_file(dir / "result.json", j.dump(2) + "\n");
    }
    return r.diag.deviation <= cfg.epsilon ? kOk : kViolation;
}

std::string context_string(const std::map<std::string, double>& ctx) {
    std::string s;
    for (const auto& [k, v] : ctx) s += (s.empty() ? "" : ";") + k + "=" + f17(v);
    return s;
}

int cmd_verify(const ExperimentConfig& cfg, const Options& opt) {
    spdlog::info("verify suite={} threads={}", opt.suite, max_threads());
    const auto rows = run_suite(opt.suite, cfg, Exec::Parallel);
    const int bad = count_violations(rows);
    fs::create_directories(opt.out);
    const fs::path dir = opt.out;
    std::ostringstream os;
    os << "suite,name,bound,measured,slack,premise_ok,context\n";
    json jr = json::array();
    for (const auto& r : rows) {
        const auto& b = r.report;
        os << r.suite << ',' << b.name << ',' << f17(b.bound) << ',' << f17(b.measured) << ',' << f17(b.slack)
           << ',' << (b.premise_ok ? 1 : 0) << ',' << quote(context_string(b.context)) << '\n';
        jr.push_back({{"suite", r.suite},
                      {"name", b.name},
                      {"bound", b.bound},
                      {"measured", b.measured},
                      {"slack", b.slack},
                      {"premise_ok", b.premise_ok},
                      {"context", b.context}});
        if (b.slack < -kSlackTol) spdlog::error("violation {} bound={} measured={}", b.name, b.bound, b.measured);
    }
    if (wants(cfg, "bounds")) write_file(dir / "bounds.csv", os.str());
    if (wants(cfg, "json"))
        write_file(dir / "verify.json",
                   json{{"timestamp", iso_timestamp()},
                        {"command", "verify"},
                        {"suite", opt.suite},
                        {"rows", jr},
                        {"violations", bad}}
                           .dump(2) + "\n");
    std::cout << rows.size() << " checks, " << bad << " violations\n";
    return bad == 0 ? kOk : kViolation;
}

int cmd_resources(const ExperimentConfig& cfg, const Options& opt) {
    const auto& g = cfg.resources;
    std::ostringstream os;
    os << "regime,alpha,gamma,omega,t,epsilon,n_a,ancilla_qubits,ancilla_expr,query_complexity,query_expr,"
          "gates_per_query,gates_expr,o_log_term,l_max,crossover_time,high_frequency,scaling_only,display_only\n";
    json jr = json::array();
    for (double w : g.omegas)
        for (double t : g.times)
            for (double e : g.epsilons)
                for (auto reg : g.regimes) {
                    ResourceParams p = g.base;
                    p.omega = w;
                    p.t = t;
                    p.epsilon = e;
                    const auto r = resources(reg, p);
                    os << regime_name(reg) << ',' << f17(p.alpha) << ',' << f17(p.gamma) << ',' << f17(w) << ','
                       << f17(t) << ',' << f17(e) << ',' << p.n_a << ',' << r.ancilla_qubits << ','
                       << quote(r.ancilla_expr) << ',' << f17(r.query_complexity) << ',' << quote(r.query_expr)
                       << ',' << f17(r.gates_per_query) << ',' << quote(r.gates_expr) << ',' << f17(r.o_log_term)
                       << ',' << r.l_max << ',' << f17(r.crossover_time) << ',' << (r.high_frequency ? 1 : 0)
                       << ',' << (r.scaling_only ? 1 : 0) << ',' << (r.display_only ? 1 : 0) << '\n';
                    json row = resource_json(r);
                    row["alpha"] = p.alpha;
                    row["gamma"] = p.gamma;
                    row["omega"] = w;
                    row["t"] = t;
                    row["epsilon"] = e;
                    jr.push_back(row);
                }
    fs::create_directories(opt.out);
    const fs::path dir = opt.out;
    if (wants(cfg, "resources")) write_file(dir / "resources.csv", os.str());
    if (wants(cfg, "json"))
        write_file(dir / "resources.json",
                   json{{"timestamp", iso_timestamp()}, {"command", "resources"}, {"rows", jr}}.dump(2) + "\n");
    std::cout << os.str();
    return kOk;
}

bool is_validation(ErrorCode c) {
    return c != ErrorCode::StepUnderflow && c != ErrorCode::QuadratureResidual;
}

}  // namespace

int main(int argc, char** argv) {
    setup_logging();
    CLI::App app{"Floquet Hamiltonian simulation: pipelines, bound verification and resource tables"};
    app.require_subcommand(1);
    Options opt;
    std::uint64_t seed = 0;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config, "experiment config (JSON)");
        sub->add_option("--out", opt.out, "output directory");
        sub->add_option("--threads", opt.threads, "worker threads for sweeps");
        sub->add_option("--seed", seed, "RNG seed, overrides the config")->each([&](const std::string&) {
            opt.seed = seed;
        });
    };
    auto* sim = app.add_subcommand("simulate", "run the configured pipeline");
    auto* ver = app.add_subcommand("verify", "check bounds against measurements");
    auto* res = app.add_subcommand("resources", "emit the resource comparison table");
    for (auto* s : {sim, ver, res}) add_common(s);
    ver->add_option("--suite", opt.suite, "bounds | encodings | amplification | all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kValidation;
    }

    ExperimentConfig cfg;
    try {
        cfg = load(opt);
        if (ver->parsed() && opt.suite != "all" && opt.suite != "bounds" && opt.suite != "encodings" &&
            opt.suite != "amplification")
            throw Error(ErrorCode::InvalidConfig, "unknown suite '" + opt.suite + "'");
    } catch (const Error& e) {
        print_error(e.name(), e.what());
        return kValidation;
    } catch (const std::exception& e) {
        print_error("InvalidConfig", e.what());
        return kValidation;
    }

    try {
        if (sim->parsed()) return cmd_simulate(cfg, opt);
        if (ver->parsed()) return cmd_verify(cfg, opt);
        return cmd_resources(cfg, opt);
    } catch (const Error& e) {
        print_error(e.name(), e.what());
        return is_validation(e.code()) ? kValidation : kNumerical;
    } catch (const std::exception& e) {
        print_error("NumericalFailure", e.what());
        return kNumerical;
    }
}
