#include "fqs/sweeps.hpp"

#include <cmath>
#include <exception>
#include <mutex>
#include <random>

#include <omp.h>

namespace fqs {

void set_threads(int n) {
    if (n < 1) throw Error(ErrorCode::InvalidConfig, "thread count must be >= 1");
    omp_set_num_threads(n);
}

int max_threads() { return omp_get_max_threads(); }

void for_each_index(int n, Exec exec, const std::function<void(int)>& body) {
    if (exec == Exec::Serial) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::exception_ptr err;
    std::mutex mu;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
        } catch (...) {
            std::lock_guard lock(mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

std::vector<BoundReport> truncation_sweep(const FourierHamiltonian& H, const std::vector<int>& l_maxes,
                                          const std::vector<double>& gamma_ts, double oracle_tol,
                                          Exec exec) {
    const double gamma = energy_scales(H).gamma;
    const int mm = std::max(H.m_max(), 1);
    // one oracle propagator per time, shared by every l_max
    std::vector<Mat> exact(gamma_ts.size());
    for_each_index(static_cast<int>(gamma_ts.size()), exec, [&](int k) {
        exact[k] = exact_propagator(H, gamma_ts[k] / gamma, oracle_tol);
    });
    const int n = static_cast<int>(l_maxes.size() * gamma_ts.size());
    std::vector<BoundReport> out(n);
    for_each_index(n, exec, [&](int i) {
        const int k = i % static_cast<int>(gamma_ts.size());
        const int lm = l_maxes[i / gamma_ts.size()];
        const double gt = gamma_ts[k], t = gt / gamma;
        const Mat approx = sambe_extract_operator(H, lm, t);
        const auto b = truncation_bound(lm, gamma, t, mm);
        out[i] = make_report("truncation", b.value, spectral_norm(exact[k] - approx),
                             {{"l_max", lm}, {"gamma_t", gt}, {"t", t}}, b.premise_ok);
    });
    return out;
}

namespace {

struct Column {
    double t;
    int l_src;
};

// Transition norms ||<l| e^{-i op t} |l_src>|| for every l, one column per (t, l_src).
std::vector<std::vector<double>> transition_norms(const SambeOperator& op, const std::vector<Column>& cols,
                                                  Exec exec) {
    auto prop = PropagatorCache::global().get(op.matrix);
    const auto& sp = op.space;
    std::vector<std::vector<double>> out(cols.size());
    for_each_index(static_cast<int>(cols.size()), exec, [&](int i) {
        const Mat c = transition_column(*prop, sp, cols[i].l_src, cols[i].t);
        std::vector<double> norms(sp.width());
        for (int l = sp.lo(); l <= sp.hi(); ++l)
            norms[sp.slot(l)] = spectral_norm(c.block(sp.offset(l), 0, sp.d, sp.d));
        out[i] = std::move(norms);
    });
    return out;
}

std::vector<Column> all_columns(const SambeSpace& sp, const std::vector<double>& times) {
    std::vector<Column> cols;
    for (double t : times)
        for (int l = sp.lo(); l <= sp.hi(); ++l) cols.push_back({t, l});
    return cols;
}

}  // namespace

std::vector<BoundReport> lieb_robinson_sweep(const FourierHamiltonian& H, int L,
                                             const std::vector<double>& times, Exec exec) {
    const auto op = build_effective(H, L);
    const double gamma = energy_scales(H).gamma;
    const int mm = std::max(H.m_max(), 1);
    const auto cols = all_columns(op.space, times);
    const auto norms = transition_norms(op, cols, exec);
    std::vector<BoundReport> out;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (int l = op.space.lo(); l <= op.space.hi(); ++l) {
            const int dl = std::abs(l - cols[i].l_src);
            const auto b = lr_bound(dl, gamma, cols[i].t, mm);
            if (dl == 0 || !b.premise_ok) continue;
            out.push_back(make_report("lieb_robinson", b.value, norms[i][op.space.slot(l)],
                                      {{"l", l}, {"l_src", cols[i].l_src}, {"t", cols[i].t}}));
        }
    return out;
}

std::vector<BoundReport> lieb_robinson_exp_sweep(const FourierHamiltonian& H, int L,
                                                 const std::vector<double>& times, int dl_max,
                                                 Exec exec) {
    const auto* prof = std::get_if<ExpDecayProfile>(&H.profile());
    if (!prof) throw Error(ErrorCode::InvalidConfig, "exponential-decay sweep needs an exponential profile");
    const auto op = build_effective(H, L);
    const auto cols = all_columns(op.space, times);
    const auto norms = transition_norms(op, cols, exec);
    std::vector<BoundReport> out;
    for (std::size_t i = 0; i < cols.size(); ++i)
        for (int l = op.space.lo(); l <= op.space.hi(); ++l) {
            const int dl = std::abs(l - cols[i].l_src);
            if (dl > dl_max) continue;
            out.push_back(make_report("lieb_robinson_exp", lr_bound_exp(dl, prof->h, prof->zeta, cols[i].t),
                                      norms[i][op.space.slot(l)],
                                      {{"l", l}, {"l_src", cols[i].l_src}, {"t", cols[i].t}}));
        }
    return out;
}

std::vector<BoundReport> symmetry_sweep(const FourierHamiltonian& H, int l_max, double t, int stride,
                                        Exec exec) {
    if (stride < 1) throw Error(ErrorCode::InvalidConfig, "stride must be >= 1");
    const int L = 4 * l_max;
    const auto op = build_effective(H, L);
    const auto& sp = op.space;
    auto prop = PropagatorCache::global().get(op.matrix);
    const double gamma = energy_scales(H).gamma;
    const int mm = std::max(H.m_max(), 1);
    SambeSpace inner{l_max, 1};
    const Mat ref = transition_column(*prop, sp, 0, t);
    std::vector<int> srcs;
    for (int l = inner.lo(); l <= inner.hi(); ++l) srcs.push_back(l);
    std::vector<std::vector<BoundReport>> parts(srcs.size());
    for_each_index(static_cast<int>(srcs.size()), exec, [&](int i) {
        const int ls = srcs[i];
        const Mat col = transition_column(*prop, sp, ls, t);
        const cd phase = std::exp(I1 * (double(ls) * H.omega() * t));
        for (int l = sp.lo(); l <= sp.hi(); l += stride) {
            const int shifted = ominus(l, ls, L);
            const Mat diff = col.block(sp.offset(l), 0, sp.d, sp.d) -
                             phase * ref.block(sp.offset(shifted), 0, sp.d, sp.d);
            parts[i].push_back(make_report("symmetry", symmetry_bound(l, ls, l_max, gamma, t, mm),
                                           spectral_norm(diff),
                                           {{"l", l}, {"l_src", ls}, {"l_max", l_max}, {"t", t}}));
        }
    });
    std::vector<BoundReport> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<double> deviation_sweep(const FourierHamiltonian& H, const PipelineColumns& pc, double t,
                                    const std::vector<Vec>& states, double oracle_tol, Exec exec) {
    std::vector<double> out(states.size());
    const auto& sp = pc.space;
    for_each_index(static_cast<int>(states.size()), exec, [&](int i) {
        const Vec exact = exact_evolve(H, states[i], t, oracle_tol).vector;
        Vec diff = pc.columns * states[i];
        diff.segment(sp.offset(0), sp.d) -= exact;
        out[i] = diff.norm();
    });
    return out;
}

std::vector<Vec> random_states(int d, int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    std::vector<Vec> out;
    for (int k = 0; k < count; ++k) {
        Vec v(d);
        for (int i = 0; i < d; ++i) v(i) = cd(g(rng), g(rng));
        out.push_back(v / v.norm());
    }
    return out;
}

}  // namespace fqs
