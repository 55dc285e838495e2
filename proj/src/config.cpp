#include "fqs/config.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

namespace fqs {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidConfig, msg); }

double num(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) bad(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

std::vector<double> num_list(const json& j, const char* key, std::vector<double> fallback) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (v.is_number()) return {v.get<double>()};
    if (!v.is_array()) bad(std::string("field '") + key + "' must be a number or an array");
    std::vector<double> out;
    for (const auto& x : v) {
        if (!x.is_number()) bad(std::string("field '") + key + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || it.key() == a;
        if (!ok) bad("unknown field '" + it.key() + "' in " + where);
    }
}

PresetKind parse_preset(const std::string& s) {
    if (s == "DrivenQubit") return PresetKind::DrivenQubit;
    if (s == "Hubbard2") return PresetKind::Hubbard2;
    if (s == "AdiabaticPrep") return PresetKind::AdiabaticPrep;
    if (s == "GaussianPacket") return PresetKind::GaussianPacket;
    if (s == "Custom") return PresetKind::Custom;
    bad("unknown preset '" + s + "'");
}

ResourceRegime parse_regime(const std::string& s) {
    for (auto r : {ResourceRegime::Adiabatic, ResourceRegime::LongTime, ResourceRegime::Qubitization,
                   ResourceRegime::TruncatedDyson, ResourceRegime::Trotter})
        if (s == regime_name(r)) return r;
    bad("unknown resource regime '" + s + "'");
}

Mat load_matrix(const json& entry, int dim, const std::string& base_dir) {
    std::vector<double> values;
    if (entry.is_array()) {
        values = entry.get<std::vector<double>>();
    } else if (entry.is_object() && entry.contains("file")) {
        std::filesystem::path p = entry.at("file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        values = read_interleaved_file(p.string());
    } else {
        bad("matrix must be an interleaved array or {\"file\": path}");
    }
    return matrix_from_interleaved(values, dim);
}

Model custom_model(const json& c, const std::string& base_dir) {
    check_keys(c, {"omega", "dim", "profile", "components", "lcu"}, "custom");
    if (!c.contains("dim") || !c.contains("components")) bad("custom preset needs dim and components");
    const int dim = c.at("dim").get<int>();
    if (dim < 2) bad("custom dim must be >= 2");
    const double omega = num(c, "omega", 1.0);
    std::map<int, Mat> comps;
    for (auto it = c.at("components").begin(); it != c.at("components").end(); ++it)
        comps[std::stoi(it.key())] = load_matrix(it.value(), dim, base_dir);
    int mm = 0;
    for (const auto& [m, _] : comps) mm = std::max(mm, std::abs(m));
    Profile prof = FiniteProfile{mm};
    if (c.contains("profile")) {
        const auto& p = c.at("profile");
        const std::string kind = p.value("kind", "finite");
        if (kind == "finite") {
            prof = FiniteProfile{p.value("m_max", mm)};
        } else if (kind == "exp") {
            prof = ExpDecayProfile{num(p, "h", 1.0), num(p, "zeta", 1.0)};
        } else {
            bad("profile kind must be finite or exp");
        }
    }
    Model m;
    m.name = "Custom";
    m.H = from_components(omega, comps, prof);
    if (c.contains("lcu")) {
        for (auto it = c.at("lcu").begin(); it != c.at("lcu").end(); ++it) {
            LCU l;
            for (const auto& term : it.value()) {
                LCUTerm t;
                t.coef = num(term, "coef", 0.0);
                t.unitary = load_matrix(term.at("unitary"), dim, base_dir);
                l.terms.push_back(t);
            }
            m.lcu[std::stoi(it.key())] = l;
        }
    }
    m.psi0 = Vec::Zero(dim);
    m.psi0(0) = 1.0;
    return m;
}

Model build_model(PresetKind kind, const json& p, const std::string& base_dir) {
    switch (kind) {
    case PresetKind::DrivenQubit:
        check_keys(p, {"delta", "v", "omega"}, "params");
        return driven_qubit(num(p, "delta", 1.0), num(p, "v", 1.0), num(p, "omega", 1.0));
    case PresetKind::Hubbard2: {
        check_keys(p, {"eps_k", "U", "V", "omega"}, "params");
        Hubbard2Params hp;
        auto e = num_list(p, "eps_k", {hp.eps_k[0], hp.eps_k[1]});
        auto v = num_list(p, "V", {hp.V[0], hp.V[1]});
        if (e.size() != 2 || v.size() != 2) bad("Hubbard2 needs two eps_k and two V values");
        hp.eps_k = {e[0], e[1]};
        hp.V = {v[0], v[1]};
        hp.U = num(p, "U", hp.U);
        hp.omega = num(p, "omega", hp.omega);
        return hubbard2(hp).model;
    }
    case PresetKind::AdiabaticPrep:
        check_keys(p, {"d0", "d1", "omega"}, "params");
        return adiabatic_prep(num(p, "d0", 1.0), num(p, "d1", 1.0), num(p, "omega", 1.0));
    case PresetKind::GaussianPacket: {
        check_keys(p, {"p", "omega", "omega_tau", "delta", "m_store"}, "params");
        GaussianPacketParams gp;
        gp.p = static_cast<int>(num(p, "p", gp.p));
        gp.omega = num(p, "omega", gp.omega);
        gp.omega_tau = num(p, "omega_tau", gp.omega_tau);
        gp.delta = num(p, "delta", gp.delta);
        gp.m_store = static_cast<int>(num(p, "m_store", gp.m_store));
        return gaussian_packet(gp);
    }
    case PresetKind::Custom:
        return custom_model(p, base_dir);
    }
    bad("unhandled preset");
}

}  // namespace

const char* preset_name(PresetKind p) {
    switch (p) {
    case PresetKind::DrivenQubit: return "DrivenQubit";
    case PresetKind::Hubbard2: return "Hubbard2";
    case PresetKind::AdiabaticPrep: return "AdiabaticPrep";
    case PresetKind::GaussianPacket: return "GaussianPacket";
    case PresetKind::Custom: return "Custom";
    }
    return "Unknown";
}

Mat matrix_from_interleaved(const std::vector<double>& values, int dim) {
    if (dim < 1 || values.size() != std::size_t(2) * dim * dim)
        bad("interleaved matrix needs 2 * dim * dim values, got " + std::to_string(values.size()));
    Mat m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) {
            const std::size_t k = 2 * (std::size_t(r) * dim + c);
            m(r, c) = cd(values[k], values[k + 1]);
        }
    return m;
}

std::vector<double> read_interleaved_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad("cannot open matrix file " + path);
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes % sizeof(double) != 0) bad("matrix file size is not a multiple of 8 bytes: " + path);
    std::vector<double> out(bytes / sizeof(double));
    in.seekg(0);
    in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(bytes));
    return out;
}

ExperimentConfig parse_config(const json& j, const std::string& base_dir) {
    if (!j.is_object()) bad("config must be a JSON object");
    check_keys(j, {"preset", "params", "t", "t_periods", "epsilon", "regime", "seed", "oracle_tol",
                   "psi0", "outputs", "random_states", "resources"},
               "config");
    ExperimentConfig cfg;
    cfg.preset = parse_preset(j.value("preset", std::string("DrivenQubit")));
    const json params = j.value("params", json::object());
    cfg.model = build_model(cfg.preset, params, base_dir);

    cfg.epsilon = num(j, "epsilon", cfg.epsilon);
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0))
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
    cfg.oracle_tol = num(j, "oracle_tol", cfg.oracle_tol);
    if (!(cfg.oracle_tol >= 1e-13 && cfg.oracle_tol <= 1e-6)) bad("oracle_tol must lie in [1e-13, 1e-6]");
    if (j.contains("t") && j.contains("t_periods")) bad("give either t or t_periods, not both");
    cfg.t = j.contains("t") ? num(j, "t", 0.0) : num(j, "t_periods", 1.0) * cfg.model.H.period();
    if (!(cfg.t >= 0.0) || !std::isfinite(cfg.t)) bad("t must be finite and >= 0");

    const std::string regime = j.value("regime", std::string("adiabatic"));
    if (regime == "adiabatic") {
        cfg.regime = Regime::Adiabatic;
    } else if (regime == "longtime") {
        cfg.regime = Regime::LongTime;
        if (cfg.t < cfg.model.H.period() * (1.0 - 1e-12)) bad("longtime regime needs t >= T");
    } else {
        bad("regime must be adiabatic or longtime");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer()) bad("seed must be an integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    cfg.random_states = static_cast<int>(num(j, "random_states", cfg.random_states));
    if (cfg.random_states < 1) bad("random_states must be >= 1");

    if (j.contains("psi0")) {
        const auto v = j.at("psi0").get<std::vector<double>>();
        const int d = cfg.model.H.dim();
        if (v.size() != std::size_t(2 * d)) bad("psi0 needs 2 * dim interleaved values");
        Vec psi(d);
        for (int i = 0; i < d; ++i) psi(i) = cd(v[2 * i], v[2 * i + 1]);
        if (std::abs(psi.norm() - 1.0) > 1e-10) bad("psi0 must be normalized");
        cfg.model.psi0 = psi;
    }
    if (j.contains("outputs")) cfg.outputs = j.at("outputs").get<std::vector<std::string>>();
    for (const auto& o : cfg.outputs)
        if (o != "state" && o != "summary" && o != "json" && o != "bounds" && o != "resources")
            bad("unknown output selector '" + o + "'");

    // resource grid, defaulting to the model's own scales
    const auto scales = energy_scales(cfg.model.H, cfg.model.lcu.empty()
                                                       ? std::nullopt
                                                       : std::optional(mode_alphas(cfg.model.lcu)));
    auto& rg = cfg.resources;
    rg.base.alpha = scales.alpha;
    rg.base.gamma = scales.gamma_upper;
    rg.base.omega = cfg.model.H.omega();
    rg.base.m_max = std::max(cfg.model.H.m_max(), 1);
    rg.base.lambda = local_energy_scale(cfg.model.H);
    const json r = j.value("resources", json::object());
    check_keys(r, {"alpha", "gamma", "omega", "t", "epsilon", "n_a", "C", "m_max", "trotter_order", "lambda",
                   "regimes"},
               "resources");
    rg.base.alpha = num(r, "alpha", rg.base.alpha);
    rg.base.gamma = num(r, "gamma", rg.base.gamma);
    rg.base.n_a = static_cast<int>(num(r, "n_a", rg.base.n_a));
    rg.base.C = num(r, "C", rg.base.C);
    rg.base.m_max = static_cast<int>(num(r, "m_max", rg.base.m_max));
    rg.base.trotter_order = static_cast<int>(num(r, "trotter_order", rg.base.trotter_order));
    rg.base.lambda = num(r, "lambda", rg.base.lambda);
    rg.omegas = num_list(r, "omega", {rg.base.omega});
    rg.times = num_list(r, "t", {cfg.t > 0.0 ? cfg.t : cfg.model.H.period()});
    rg.epsilons = num_list(r, "epsilon", {cfg.epsilon});
    if (r.contains("regimes")) {
        for (const auto& s : r.at("regimes")) rg.regimes.push_back(parse_regime(s.get<std::string>()));
    } else {
        rg.regimes = {ResourceRegime::Trotter, ResourceRegime::Qubitization, ResourceRegime::Adiabatic,
                      ResourceRegime::LongTime, ResourceRegime::TruncatedDyson};
    }
    for (double e : rg.epsilons)
        if (!(e > 0.0 && e < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "resource epsilon must lie in (0, 1)");
    for (double x : rg.times)
        if (!(x > 0.0)) bad("resource times must be > 0");
    for (double x : rg.omegas)
        if (!(x > 0.0)) bad("resource omegas must be > 0");
    if (!(rg.base.alpha > 0.0) || rg.base.gamma < 0.0 || rg.base.n_a < 0 || rg.base.m_max < 1 ||
        rg.base.trotter_order < 1)
        bad("resource parameters out of range");
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open config " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        bad(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_config(j, std::filesystem::path(path).parent_path().string());
}

}  // namespace fqs
