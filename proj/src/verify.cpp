#include "fqs/verify.hpp"

#include <cmath>

#include "fqs/blockenc.hpp"

namespace fqs {

namespace {

void add(std::vector<SuiteRow>& rows, const std::string& suite, BoundReport r) {
    rows.push_back({suite, std::move(r)});
}

void add_all(std::vector<SuiteRow>& rows, const std::string& suite, const std::vector<BoundReport>& rs) {
    for (const auto& r : rs) add(rows, suite, r);
}

const Model& finite_model(const ExperimentConfig& cfg, const Model& fallback) {
    return cfg.model.H.is_finite() ? cfg.model : fallback;
}

void bounds_suite(const ExperimentConfig& cfg, Exec exec, std::vector<SuiteRow>& rows) {
    const std::string s = "bounds";
    const Model dq = driven_qubit();
    const Model& m = finite_model(cfg, dq);
    std::vector<int> lms;
    for (int l = 3; l <= 12; ++l) lms.push_back(l);
    add_all(rows, s, truncation_sweep(m.H, lms, {0.5, 1.0, 2.0}, cfg.oracle_tol, exec));

    const double gamma = energy_scales(m.H).gamma;
    std::vector<double> times;
    for (double gt : {0.25, 0.5, 1.0, 1.5, 2.0}) times.push_back(gt / gamma);
    add_all(rows, s, lieb_robinson_sweep(m.H, 16, times, exec));

    const Model gp = cfg.model.H.is_finite() ? gaussian_packet() : cfg.model;
    add_all(rows, s, lieb_robinson_exp_sweep(gp.H, 24, {0.25, 0.5, 1.0}, 12, exec));

    for (int lm : {4, 6, 8}) add_all(rows, s, symmetry_sweep(m.H, lm, 1.0 / gamma, 1, exec));

    for (double eps : {1e-2, 1e-4, 1e-6})
        for (double gt : {0.5, 1.0, 2.0}) {
            const int lm = choose_l_max(gt, 1.0, 1, eps).l_max;
            add(rows, s, make_report("choose_l_max_round_trip", eps, truncation_bound(lm, gt, 1.0, 1).value,
                                     {{"epsilon", eps}, {"gamma_t", gt}, {"l_max", lm}}));
        }
    for (double kappa : {0.5, 1.0, 2.0, 5.0})
        for (double eta : {1e-2, 1e-6, 1e-10}) {
            const double x = prop1_threshold(kappa, eta);
            for (double f : {1.0, 2.0})
                add(rows, s, make_report("prop1_threshold", eta, std::pow(kappa / (f * x), f * x),
                                         {{"kappa", kappa}, {"eta", eta}, {"x", f * x}}));
        }
    double worst = -1e300;
    for (int n = 1; n <= 170; ++n)
        worst = std::max(worst, std::log(2.0) + n * (std::log(double(n)) - 1.0) - std::lgamma(n + 1.0));
    add(rows, s, make_report("stirling", 0.0, worst, {{"n_max", 170}}));
}

void encoding_rows(std::vector<SuiteRow>& rows, const std::string& name, const BlockEncoding& be,
                   std::map<std::string, double> ctx) {
    const std::string s = "encodings";
    add(rows, s, make_report(name + ":residual", 1e-10, be.residual(), ctx));
    add(rows, s, make_report(name + ":unitarity", 1e-12, be.unitarity_defect(), ctx));
    add(rows, s, make_report(name + ":state_norm", 1e-12, std::abs(be.state.norm() - 1.0), ctx));
    add(rows, s, make_report(name + ":alpha_dominates", be.alpha, spectral_norm(be.target), ctx));
}

void encodings_suite(const ExperimentConfig& cfg, std::vector<SuiteRow>& rows) {
    const std::string s = "encodings";
    std::vector<Model> models{driven_qubit(), hubbard2().model, adiabatic_prep()};
    if (cfg.preset == PresetKind::Custom && !cfg.model.lcu.empty() && cfg.model.H.is_finite())
        models.push_back(cfg.model);
    for (const auto& m : models)
        for (const auto& [k, l] : m.lcu) encoding_rows(rows, m.name + ":lcu", encode_lcu(l), {{"m", k}});

    for (int L : {1, 2, 4, 8}) {
        const SpMat diff = linear_potential_oracle(L) - linear_potential_oracle_from_comparator(L);
        double worst = 0.0;
        for (int k = 0; k < diff.outerSize(); ++k)
            for (SpMat::InnerIterator it(diff, k); it; ++it) worst = std::max(worst, std::abs(it.value()));
        add(rows, s, make_report("comparator_vs_direct", 1e-12, worst, {{"L", L}}));
        for (bool comp : {false, true})
            encoding_rows(rows, comp ? "linear_potential:comparator" : "linear_potential",
                          encode_linear_potential(L, 1.0, 1, comp), {{"L", L}});
    }
    const Model dq = driven_qubit();
    for (int L = 2; L <= 8; ++L) encoding_rows(rows, "effective:DrivenQubit", encode_effective(dq.H, L, dq.lcu), {{"L", L}});
    const Model hb = hubbard2().model;
    for (int L : {2, 4, 8}) encoding_rows(rows, "effective:Hubbard2", encode_effective(hb.H, L, hb.lcu), {{"L", L}});

    for (int L : {2, 4}) {
        const auto w = walk_operator(encode_effective(dq.H, L, dq.lcu));
        const auto chk = verify_walk(w);
        add(rows, s, make_report("walk_eigenphase", 1e-8, chk.max_eigen_error, {{"L", L}}));
        add(rows, s, make_report("walk_invariance", 1e-8, chk.max_invariance_residual, {{"L", L}}));
    }
    const Model ap = adiabatic_prep();
    for (const auto& [k, l] : ap.lcu) {
        const auto chk = verify_walk(walk_operator(encode_lcu(l)));
        add(rows, s, make_report("walk_eigenphase:AdiabaticPrep", 1e-8, chk.max_eigen_error, {{"m", k}}));
    }
    for (double tau : {1.0, 5.0, 20.0})
        for (double eps : {1e-6, 1e-10}) {
            const auto qd = query_degree(tau, eps);
            add(rows, s, make_report("query_degree_grid", eps, jacobi_anger_grid_error(tau, qd.q),
                                     {{"tau", tau}, {"epsilon", eps}, {"q", qd.q}}));
            add(rows, s, make_report("query_degree_envelope", 4.0 * std::max(qd.closed_form, 1.0), qd.q,
                                     {{"tau", tau}, {"epsilon", eps}}));
        }
}

void amplification_suite(const ExperimentConfig& cfg, Exec exec, std::vector<SuiteRow>& rows) {
    const std::string s = "amplification";
    const Model dq = driven_qubit();
    const Model& m = finite_model(cfg, dq);
    const double eps = 1e-3;
    const auto sc = energy_scales(m.H);
    const double t = 1.0 / sc.gamma;
    const int lm = choose_l_max(sc.gamma_upper, t, m.H.m_max(), eps).l_max;
    const Vec psi = m.psi0;
    const double naive = success_probability(naive_circuit(m.H, lm, t), psi);
    const double p_naive = 1.0 / (2.0 * lm);
    add(rows, s, make_report("naive_probability", 0.2 * p_naive, std::abs(naive - p_naive), {{"l_max", lm}}));
    const auto a1 = amp1(m.H, lm, t, true);
    add(rows, s, make_report("amp1_probability", 2 * eps, std::abs(success_probability(a1, psi) - 0.25),
                             {{"l_max", lm}, {"epsilon", eps}}));
    const auto a2 = oblivious_amplify(a1);
    add(rows, s, make_report("amp2_probability", eps, 1.0 - success_probability(a2, psi),
                             {{"l_max", lm}, {"epsilon", eps}}));
    const Mat exact = exact_propagator(m.H, t, cfg.oracle_tol);
    const double e1 = spectral_norm(a1.block00() - 0.5 * exact);
    const double e2 = spectral_norm(a2.block00() - exact);
    add(rows, s, make_report("amp2_vs_amp1_error", 3.0 * e1, e2, {{"l_max", lm}}));
    add(rows, s, make_report("amp1_contract", eps / 3.0, e1, {{"l_max", lm}}));

    const auto pc = adiabatic_columns(m.H, t, eps);
    const auto states = random_states(m.H.dim(), cfg.random_states, cfg.seed);
    const auto dev = deviation_sweep(m.H, pc, t, states, cfg.oracle_tol, exec);
    for (std::size_t k = 0; k < dev.size(); ++k)
        add(rows, s, make_report("adiabatic_deviation", eps, dev[k], {{"state", double(k)}, {"l_max", pc.l_max}}));
}

}  // namespace

std::vector<SuiteRow> run_suite(const std::string& suite, const ExperimentConfig& cfg, Exec exec) {
    std::vector<SuiteRow> rows;
    const bool all = suite == "all";
    if (!all && suite != "bounds" && suite != "encodings" && suite != "amplification")
        throw Error(ErrorCode::InvalidConfig, "suite must be bounds, encodings, amplification or all");
    if (all || suite == "bounds") bounds_suite(cfg, exec, rows);
    if (all || suite == "encodings") encodings_suite(cfg, rows);
    if (all || suite == "amplification") amplification_suite(cfg, exec, rows);
    return rows;
}

int count_violations(const std::vector<SuiteRow>& rows) {
    int n = 0;
    for (const auto& r : rows) n += r.report.slack < -kSlackTol ? 1 : 0;
    return n;
}

}  // namespace fqs
