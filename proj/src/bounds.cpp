#include "fqs/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>

namespace fqs {

namespace {

constexpr double kE = std::numbers::e;

void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
}

int ceil_div(int a, int b) { return (a + b - 1) / b; }

}  // namespace

double power_over_factorial(double x, int n) {
    if (n < 0) return 0.0;
    if (n == 0) return 1.0;
    if (x == 0.0) return 0.0;
    return std::exp(n * std::log(x) - std::lgamma(n + 1.0));
}

LRBound lr_bound(int dl, double gamma, double t, int m_max) {
    LRBound b;
    const double gt = gamma * t;
    dl = std::abs(dl);
    b.n = ceil_div(dl, m_max);
    b.premise_ok = dl >= 2.0 * m_max * gt;
    b.value = 2.0 * power_over_factorial(gt, b.n);
    b.relaxed = b.n == 0 ? 1.0 : std::pow(kE * gt / b.n, b.n);
    return b;
}

double lr_bound_exp(int dl, double h, double zeta, double t) {
    const auto c = decay_constants(zeta);
    return std::exp(-(std::abs(dl) - 2.0 * c.beta * c.zeta_prime * h * t) / c.zeta_prime + 2.0 / c.beta);
}

TruncationBound truncation_bound(int l_max, double gamma, double t, int m_max) {
    TruncationBound b;
    const double gt = gamma * t;
    b.n = ceil_div(l_max, m_max);
    b.premise_ok = l_max >= 2.0 * m_max * gt;
    const double f = power_over_factorial(gt, b.n);
    b.value = 20.0 * m_max * f;
    b.edge_part = 4.0 * m_max * f;
    b.interior_part = 16.0 * m_max * f;
    return b;
}

double truncation_bound_exp(int l_max, double h, double zeta, double t) {
    const auto c = decay_constants(zeta);
    return 4.0 * c.zeta_prime *
           std::exp(2.0 * c.beta * h * t - (l_max - 1.0) / c.zeta_prime + 2.0 / c.beta);
}

double truncation_error_condition(int l_max, double gamma_t, int m_max) {
    const double k = l_max - m_max;
    if (k <= 0) return std::numeric_limits<double>::infinity();
    if (gamma_t == 0.0) return 0.0;
    return 10.0 * m_max * std::pow(kE * m_max * gamma_t / k, k / m_max);
}

double prop1_threshold(double kappa, double eta) {
    if (!(kappa > 0.0)) throw Error(ErrorCode::InvalidConfig, "kappa must be > 0");
    if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "eta must lie in (0, 1)");
    const double lg = std::log(1.0 / eta);
    return kE * kappa + 4.0 * lg / std::log(kE + lg / kappa);
}

int symmetry_order(int l, int l_src, int l_max, int m_max) {
    const int num = 8 * l_max - 2 * m_max - std::abs(l) - std::abs(l_src);
    return num <= 0 ? 0 : ceil_div(num, m_max);
}

double symmetry_bound(int l, int l_src, int l_max, double gamma, double t, int m_max) {
    SambeSpace inner{l_max, 1}, outer{4 * l_max, 1};
    if (!inner.contains(l_src) || !outer.contains(l))
        throw Error(ErrorCode::IndexOutOfRange, "symmetry bound needs l_src in D^l_max, l in D^4l_max");
    return 8.0 * power_over_factorial(gamma * t, symmetry_order(l, l_src, l_max, m_max));
}

bool stirling_holds(int n) {
    if (n == 0) return true;
    return std::lgamma(n + 1.0) >= std::log(2.0) + n * (std::log(double(n)) - 1.0);
}

BoundReport make_report(std::string name, double bound, double measured,
                        std::map<std::string, double> context, bool premise_ok) {
    BoundReport r;
    r.name = std::move(name);
    r.bound = bound;
    r.measured = measured;
    r.slack = bound - measured;
    r.premise_ok = premise_ok;
    r.context = std::move(context);
    return r;
}

const char* regime_name(ResourceRegime r) {
    switch (r) {
    case ResourceRegime::Adiabatic: return "Adiabatic";
    case ResourceRegime::LongTime: return "LongTime";
    case ResourceRegime::Qubitization: return "Qubitization";
    case ResourceRegime::TruncatedDyson: return "TruncatedDyson";
    case ResourceRegime::Trotter: return "Trotter";
    }
    return "Unknown";
}

ResourceEstimate resources(ResourceRegime regime, const ResourceParams& p) {
    check_epsilon(p.epsilon);
    if (!(p.alpha > 0.0) || !(p.omega > 0.0) || !(p.t > 0.0) || p.gamma < 0.0 || p.n_a < 0)
        throw Error(ErrorCode::InvalidConfig, "resource parameters must be positive");
    ResourceEstimate r;
    r.regime = regime;
    const double at = p.alpha * p.t;
    const double lam = p.lambda > 0.0 ? p.lambda : p.alpha;
    r.high_frequency = p.omega >= lam;
    switch (regime) {
    case ResourceRegime::Trotter: {
        r.ancilla_qubits = 0;
        r.ancilla_expr = "0";
        r.query_complexity = at * std::pow(at / p.epsilon, 1.0 / p.trotter_order);
        r.query_expr = "alpha t (alpha t / eps)^(1/p)";
        r.gates_expr = "O(C)";
        r.gates_per_query = p.C;
        break;
    }
    case ResourceRegime::Qubitization: {
        const double lg = std::log(1.0 / p.epsilon);
        r.ancilla_qubits = p.n_a + 1;
        r.ancilla_expr = "n_a + O(1)";
        r.query_complexity = at + lg / std::log(kE + lg / at);
        r.query_expr = "alpha t + ln(1/eps) / ln(e + (alpha t)^-1 ln(1/eps))";
        r.gates_expr = "O(C + n_a)";
        r.gates_per_query = p.C + p.n_a;
        break;
    }
    case ResourceRegime::Adiabatic: {
        const double lg = std::log(1.0 / p.epsilon);
        const double gt = p.gamma * p.t;
        r.o_log_term = gt > 0.0 ? lg / std::log(kE + lg / gt) : 0.0;
        r.query_complexity = at + lg / std::log(kE + lg / (at + r.o_log_term));
        r.query_expr = "alpha t + ln(1/eps) / ln(e + {alpha t + o}^-1 ln(1/eps)), "
                       "o = ln(1/eps) / ln(e + (gamma t)^-1 ln(1/eps))";
        r.l_max = choose_l_max(p.gamma, p.t, p.m_max, p.epsilon).l_max;
        r.ancilla_qubits = p.n_a + static_cast<int>(std::ceil(std::log2(8.0 * r.l_max)));
        r.ancilla_expr = "n_a + ceil(log2(8 l_max))";
        r.gates_expr = "O(n_a + log(gamma t) + log log(1/eps))";
        r.gates_per_query = p.n_a + std::log(std::max(gt, 1.0)) + std::log(std::max(lg, 1.0));
        break;
    }
    case ResourceRegime::LongTime: {
        const double wt = p.omega * p.t;
        const double lg = std::log(wt / p.epsilon);
        const double gw = p.gamma / p.omega;
        r.o_log_term = gw > 0.0 ? lg / std::log(kE + lg / gw) : 0.0;
        r.query_complexity = at + wt * lg / std::log(kE + lg / (p.alpha / p.omega + r.o_log_term));
        r.query_expr = "alpha t + omega t ln(omega t/eps) / ln(e + {alpha/omega + o}^-1 ln(omega t/eps)), "
                       "o = ln(omega t/eps) / ln(e + (gamma/omega)^-1 ln(omega t/eps))";
        const double T = 2.0 * std::numbers::pi / p.omega;
        const int n = std::max(1, static_cast<int>(std::floor(p.t / T)));
        r.l_max = choose_l_max(p.gamma, T, p.m_max, std::min(p.epsilon / n, 0.5), Regime::LongTime).l_max;
        r.ancilla_qubits = p.n_a + static_cast<int>(std::ceil(std::log2(8.0 * r.l_max)));
        r.ancilla_expr = "n_a + ceil(log2(8 l_max^T))";
        r.gates_expr = "O(n_a + log(gamma/omega) + log log(omega t/eps))";
        r.gates_per_query = p.n_a + std::log(std::max(gw, 1.0)) + std::log(std::max(lg, 1.0));
        r.crossover_time = std::exp(std::min(p.alpha / p.omega, 700.0)) / p.omega;
        break;
    }
    case ResourceRegime::TruncatedDyson: {
        const double lg = std::log(at / p.epsilon);
        r.query_complexity = at * lg / std::log(lg);
        r.query_expr = "alpha t ln(alpha t/eps) / ln ln(alpha t/eps)";
        const double arg = (p.gamma * p.omega * p.t / p.alpha + at) / p.epsilon;
        r.ancilla_qubits = p.n_a + static_cast<int>(std::ceil(std::log2(std::max(arg, 1.0))));
        r.ancilla_expr = "n_a + O(log{(gamma omega t/alpha + alpha t)/eps})";
        r.display_only = true;
        r.gates_expr = "O(C + n_a)";
        r.gates_per_query = p.C + p.n_a;
        break;
    }
    }
    return r;
}

std::vector<ResourceEstimate> resource_table(const ResourceParams& p) {
    std::vector<ResourceEstimate> rows;
    for (auto r : {ResourceRegime::Trotter, ResourceRegime::Qubitization, ResourceRegime::Adiabatic,
                   ResourceRegime::LongTime, ResourceRegime::TruncatedDyson})
        rows.push_back(resources(r, p));
    return rows;
}

Mat floquet_magnus_first(const FourierHamiltonian& H) {
    // H1 = (1/(2iT)) sum_{m,n} [H_m, H_n] I(m,n),
    // I(m,n) = int_0^T dt1 e^{-i m w t1} int_0^t1 dt2 e^{-i n w t2}
    const double T = H.period(), w = H.omega();
    const int d = H.dim();
    Mat acc = Mat::Zero(d, d);
    for (const auto& [m, hm] : H.components())
        for (const auto& [n, hn] : H.components()) {
            cd integral = 0.0;
            if (n == 0) {
                if (m == 0) continue;
                integral = I1 * T / (double(m) * w);
            } else {
                double delta = (m == 0 ? 1.0 : 0.0) - (m + n == 0 ? 1.0 : 0.0);
                if (delta == 0.0) continue;
                integral = T * delta / (I1 * double(n) * w);
            }
            acc += (hm * hn - hn * hm) * integral;
        }
    Mat out = acc / (2.0 * I1 * T);
    return 0.5 * (out + out.adjoint());
}

Mat floquet_magnus_first_quadrature(const FourierHamiltonian& H, int panels) {
    using GL = boost::math::quadrature::gauss<double, 20>;
    std::vector<double> x, wts;
    const auto& ab = GL::abscissa();
    const auto& wg = GL::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        x.push_back(ab[i]);
        wts.push_back(wg[i]);
        if (ab[i] != 0.0) {
            x.push_back(-ab[i]);
            wts.push_back(wg[i]);
        }
    }
    auto nodes = [&](double a, double b, std::vector<double>& pts, std::vector<double>& ws) {
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double lo = a + p * h;
            for (std::size_t i = 0; i < x.size(); ++i) {
                pts.push_back(lo + 0.5 * h * (x[i] + 1.0));
                ws.push_back(0.5 * h * wts[i]);
            }
        }
    };
    const double T = H.period();
    std::vector<double> t1s, w1s;
    nodes(0.0, T, t1s, w1s);
    Mat acc = Mat::Zero(H.dim(), H.dim());
    for (std::size_t i = 0; i < t1s.size(); ++i) {
        const Mat h1 = evaluate_at(H, t1s[i]);
        std::vector<double> t2s, w2s;
        nodes(0.0, t1s[i], t2s, w2s);
        Mat inner = Mat::Zero(H.dim(), H.dim());
        for (std::size_t j = 0; j < t2s.size(); ++j) inner += w2s[j] * evaluate_at(H, t2s[j]);
        acc += w1s[i] * (h1 * inner - inner * h1);
    }
    return acc / (2.0 * I1 * T);
}

double local_energy_scale(const FourierHamiltonian& H) {
    double s = 0.0;
    for (const auto& kv : H.components()) s += spectral_norm(kv.second);
    return s;
}

FMExpansion floquet_magnus(const FourierHamiltonian& H, int order) {
    if (order < 0 || order > 1) throw Error(ErrorCode::InvalidConfig, "Floquet-Magnus order must be 0 or 1");
    FMExpansion fm;
    fm.order = order;
    fm.lambda = local_energy_scale(H);
    fm.H_FM = H.component(0);
    if (order == 1) fm.H_FM += floquet_magnus_first(H);
    return fm;
}

}  // namespace fqs
