#include "fqs/blockenc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/bessel.hpp>

namespace fqs {

namespace {

using Trip = Eigen::Triplet<cd>;

void add_dense(std::vector<Trip>& trip, Eigen::Index r0, Eigen::Index c0, const Mat& b) {
    for (Eigen::Index j = 0; j < b.cols(); ++j)
        for (Eigen::Index i = 0; i < b.rows(); ++i)
            if (b(i, j) != cd(0.0)) trip.emplace_back(r0 + i, c0 + j, b(i, j));
}

void add_sparse(std::vector<Trip>& trip, Eigen::Index r0, Eigen::Index c0, const SpMat& b) {
    for (int k = 0; k < b.outerSize(); ++k)
        for (SpMat::InnerIterator it(b, k); it; ++it) trip.emplace_back(r0 + it.row(), c0 + it.col(), it.value());
}

SpMat sparse_kron(const SpMat& a, const SpMat& b) {
    std::vector<Trip> trip;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator ia(a, k); ia; ++ia)
            for (int l = 0; l < b.outerSize(); ++l)
                for (SpMat::InnerIterator ib(b, l); ib; ++ib)
                    trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                      ia.value() * ib.value());
    SpMat out(a.rows() * b.rows(), a.cols() * b.cols());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

SpMat sparse_identity(Eigen::Index n) {
    SpMat id(n, n);
    id.setIdentity();
    return id;
}

// V_l on the label register of D^L
RVec lp_sign(int L, int l) {
    SambeSpace sp{L, 1};
    RVec v(sp.width());
    for (int lp = sp.lo(); lp <= sp.hi(); ++lp) v(sp.slot(lp)) = lp < l ? -1.0 : 1.0;
    return v;
}

SpMat diag_sparse(const RVec& v) {
    std::vector<Trip> trip;
    for (Eigen::Index i = 0; i < v.size(); ++i) trip.emplace_back(i, i, v(i));
    SpMat out(v.size(), v.size());
    out.setFromTriplets(trip.begin(), trip.end());
    return out;
}

double max_abs(const SpMat& a) {
    double m = 0.0;
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

}  // namespace

Mat BlockEncoding::encoded() const {
    std::vector<Trip> trip;
    for (int a = 0; a < anc_dim; ++a)
        if (state(a) != cd(0.0))
            for (int i = 0; i < sys_dim; ++i) trip.emplace_back(a * sys_dim + i, i, state(a));
    SpMat g(Eigen::Index(anc_dim) * sys_dim, sys_dim);
    g.setFromTriplets(trip.begin(), trip.end());
    SpMat tmp = oracle * g;
    return Mat(SpMat(g.adjoint()) * tmp);
}

double BlockEncoding::residual() const { return spectral_norm(encoded() - target / alpha); }

double BlockEncoding::unitarity_defect() const {
    SpMat p = SpMat(oracle.adjoint()) * oracle - sparse_identity(oracle.rows());
    return max_abs(p);
}

BlockEncoding encode_lcu(const LCU& lcu) {
    if (lcu.terms.empty()) throw Error(ErrorCode::AllZero, "LCU has no terms");
    const int n = static_cast<int>(lcu.terms.size());
    const int d = static_cast<int>(lcu.terms.front().unitary.rows());
    for (const auto& t : lcu.terms) {
        if (t.coef < 0.0) throw Error(ErrorCode::NegativeCoefficient, "LCU coefficient is negative");
        if (t.unitary.rows() != d || t.unitary.cols() != d || fqs::unitarity_defect(t.unitary) > 1e-10)
            throw Error(ErrorCode::NonUnitaryTerm, "LCU term is not a unitary of the common size");
    }
    BlockEncoding be;
    be.alpha = lcu.alpha();
    if (!(be.alpha > 0.0)) throw Error(ErrorCode::AllZero, "LCU coefficients are all zero");
    be.anc_dim = n;
    be.sys_dim = d;
    std::vector<Trip> trip;
    be.state = Vec(n);
    for (int j = 0; j < n; ++j) {
        add_dense(trip, Eigen::Index(j) * d, Eigen::Index(j) * d, lcu.terms[j].unitary);
        be.state(j) = std::sqrt(lcu.terms[j].coef / be.alpha);
    }
    be.oracle = SpMat(Eigen::Index(n) * d, Eigen::Index(n) * d);
    be.oracle.setFromTriplets(trip.begin(), trip.end());
    be.target = lcu.reconstruct();
    return be;
}

SpMat comparator(int L) {
    if (L < 1) throw Error(ErrorCode::InvalidConfig, "L must be >= 1");
    SambeSpace sp{L, 1};
    const int w = sp.width();
    std::vector<Trip> trip;
    for (int l = sp.lo(); l <= sp.hi(); ++l)
        for (int lp = sp.lo(); lp <= sp.hi(); ++lp)
            for (int b = 0; b < 2; ++b) {
                const int flip = lp < l ? 1 : 0;
                const int src = (sp.slot(l) * w + sp.slot(lp)) * 2 + b;
                const int dst = (sp.slot(l) * w + sp.slot(lp)) * 2 + (b ^ flip);
                trip.emplace_back(dst, src, 1.0);
            }
    SpMat c(2 * w * w, 2 * w * w);
    c.setFromTriplets(trip.begin(), trip.end());
    return c;
}

SpMat linear_potential_oracle(int L, int d) {
    if (L < 1 || d < 1) throw Error(ErrorCode::InvalidConfig, "L, d must be >= 1");
    SambeSpace sp{L, 1};
    const int w = sp.width();
    RVec diag(Eigen::Index(w) * w * d);
    for (int l = sp.lo(); l <= sp.hi(); ++l) {
        const RVec v = lp_sign(L, l);
        for (int s = 0; s < w; ++s) diag.segment((Eigen::Index(sp.slot(l)) * w + s) * d, d).setConstant(v(s));
    }
    return diag_sparse(diag);
}

SpMat linear_potential_oracle_from_comparator(int L, int d) {
    const SpMat comp = comparator(L);
    const int w = 2 * L;
    RVec z(2);
    z << 1.0, -1.0;
    const SpMat zb = sparse_kron(sparse_identity(Eigen::Index(w) * w), diag_sparse(z));
    const SpMat full = SpMat(comp.adjoint()) * zb * comp;
    // restrict to the comparator bit b = 0, then widen by I_d
    std::vector<Trip> trip;
    for (int k = 0; k < full.outerSize(); ++k)
        for (SpMat::InnerIterator it(full, k); it; ++it)
            if (it.row() % 2 == 0 && it.col() % 2 == 0) trip.emplace_back(it.row() / 2, it.col() / 2, it.value());
    SpMat restricted(Eigen::Index(w) * w, Eigen::Index(w) * w);
    restricted.setFromTriplets(trip.begin(), trip.end());
    return sparse_kron(restricted, sparse_identity(d));
}

BlockEncoding encode_linear_potential(int L, double omega, int d, bool via_comparator) {
    if (!(omega > 0.0)) throw Error(ErrorCode::InvalidConfig, "omega must be > 0");
    BlockEncoding be;
    be.oracle = via_comparator ? linear_potential_oracle_from_comparator(L, d) : linear_potential_oracle(L, d);
    be.anc_dim = 2 * L;
    be.sys_dim = 2 * L * d;
    be.state = Vec::Constant(2 * L, 1.0 / std::sqrt(2.0 * L));
    be.alpha = L * omega;
    be.target = build_linear_potential(L, omega, d).dense();
    return be;
}

EffectiveLayout effective_layout(const FourierHamiltonian& H, int L, const ModeLCU& lcu) {
    EffectiveLayout lay;
    for (const auto& [m, h] : H.components()) {
        if (h.cwiseAbs().maxCoeff() == 0.0) continue;
        auto it = lcu.find(m);
        if (it == lcu.end() || it->second.terms.empty())
            throw Error(ErrorCode::MissingModeEncoding, "no LCU for mode " + std::to_string(m));
        lay.modes.push_back(m);
        lay.a_dim = std::max<int>(lay.a_dim, static_cast<int>(it->second.terms.size()));
    }
    if (lay.modes.empty()) throw Error(ErrorCode::AllZero, "Hamiltonian has no nonzero mode");
    lay.n_modes = static_cast<int>(lay.modes.size());
    lay.b_dim = 2 * L;
    return lay;
}

BlockEncoding encode_effective(const FourierHamiltonian& H, int L, const ModeLCU& lcu) {
    if (!H.is_finite()) throw Error(ErrorCode::InvalidConfig, "effective oracle needs a finite profile");
    const EffectiveLayout lay = effective_layout(H, L, lcu);
    const int d = H.dim();
    SambeSpace sp{L, d};
    const int sys = sp.dim();

    double alpha = 0.0;
    for (int m : lay.modes) {
        for (const auto& t : lcu.at(m).terms) {
            if (t.coef < 0.0) throw Error(ErrorCode::NegativeCoefficient, "LCU coefficient is negative");
            if (fqs::unitarity_defect(t.unitary) > 1e-10)
                throw Error(ErrorCode::NonUnitaryTerm, "LCU term is not unitary");
        }
        alpha += lcu.at(m).alpha();
    }
    const double lp_alpha = L * H.omega();
    BlockEncoding be;
    be.alpha = alpha + lp_alpha;
    be.anc_dim = lay.dim();
    be.sys_dim = sys;
    be.state = Vec::Zero(be.anc_dim);

    std::vector<Trip> trip;
    const SpMat id_d = sparse_identity(d);
    for (int c = 0; c < lay.n_modes; ++c) {
        const int m = lay.modes[c];
        const SpMat add = adder(m, L).sparseView();
        const auto& terms = lcu.at(m).terms;
        for (int a = 0; a < lay.a_dim; ++a) {
            const SpMat u = a < int(terms.size()) ? sparse_kron(add, terms[a].unitary.sparseView())
                                                  : sparse_identity(sys);
            for (int b = 0; b < lay.b_dim; ++b) {
                const Eigen::Index r0 = Eigen::Index(lay.index(0, c, b, a)) * sys;
                add_sparse(trip, r0, r0, u);
            }
            if (a < int(terms.size())) be.state(lay.index(0, c, 0, a)) = std::sqrt(terms[a].coef / be.alpha);
        }
    }
    // flag branch: -V_b (x) I_d, independent of the c and a registers
    for (int b = 0; b < lay.b_dim; ++b) {
        const SpMat u = sparse_kron(diag_sparse(-lp_sign(L, sp.label(b))), id_d);
        for (int c = 0; c < lay.n_modes; ++c)
            for (int a = 0; a < lay.a_dim; ++a) {
                const Eigen::Index r0 = Eigen::Index(lay.index(1, c, b, a)) * sys;
                add_sparse(trip, r0, r0, u);
            }
        be.state(lay.index(1, 0, b, 0)) = std::sqrt(lp_alpha / be.alpha / lay.b_dim);
    }
    be.oracle = SpMat(Eigen::Index(be.anc_dim) * sys, Eigen::Index(be.anc_dim) * sys);
    be.oracle.setFromTriplets(trip.begin(), trip.end());
    be.target = build_effective_pbc(H, L).dense();
    return be;
}

Vec g_coef(const std::vector<double>& alphas) {
    double total = 0.0;
    for (double a : alphas) {
        if (a < 0.0) throw Error(ErrorCode::NegativeCoefficient, "mode weight is negative");
        total += a;
    }
    if (!(total > 0.0)) throw Error(ErrorCode::AllZero, "all mode weights are zero");
    Vec g(alphas.size());
    for (std::size_t k = 0; k < alphas.size(); ++k) g(k) = std::sqrt(alphas[k] / total);
    return g;
}

Vec g_coef(const std::map<int, double>& alphas) {
    std::vector<double> v;
    for (const auto& [m, a] : alphas) v.push_back(a);
    return g_coef(v);
}

WalkOperator walk_operator(const BlockEncoding& be, int max_dim) {
    WalkOperator w;
    const SpMat herm_diff = be.oracle - SpMat(be.oracle.adjoint());
    if (max_abs(herm_diff) <= 1e-12) {
        w.source = be;
    } else {
        w.hermitianized = true;
        BlockEncoding h = be;
        const Eigen::Index n = be.oracle.rows();
        std::vector<Trip> trip;
        add_sparse(trip, 0, n, be.oracle);
        add_sparse(trip, n, 0, SpMat(be.oracle.adjoint()));
        h.oracle = SpMat(2 * n, 2 * n);
        h.oracle.setFromTriplets(trip.begin(), trip.end());
        h.anc_dim = 2 * be.anc_dim;
        h.state = Vec(h.anc_dim);
        h.state << be.state / std::sqrt(2.0), be.state / std::sqrt(2.0);
        w.source = h;
    }
    const auto& s = w.source;
    const Eigen::Index n = s.oracle.rows();
    if (n > max_dim) throw Error(ErrorCode::InvalidConfig, "walk operator too large for dense assembly");
    // reflection about |G> (x) I applied to the dense oracle
    Mat o = Mat(s.oracle);
    Mat g = Mat::Zero(n, s.sys_dim);
    for (int a = 0; a < s.anc_dim; ++a) g.block(Eigen::Index(a) * s.sys_dim, 0, s.sys_dim, s.sys_dim) =
        s.state(a) * Mat::Identity(s.sys_dim, s.sys_dim);
    w.matrix = 2.0 * g * (g.adjoint() * o) - o;
    return w;
}

WalkCheck verify_walk(const WalkOperator& w) {
    const auto& s = w.source;
    WalkCheck out;
    Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (s.target + s.target.adjoint()));
    const Eigen::Index n = w.matrix.rows();
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double x = std::clamp(es.eigenvalues()(k) / s.alpha, -1.0, 1.0);
        Vec u1 = Vec::Zero(n);
        for (int a = 0; a < s.anc_dim; ++a)
            u1.segment(Eigen::Index(a) * s.sys_dim, s.sys_dim) = s.state(a) * es.eigenvectors().col(k);
        Vec y = w.matrix * u1;
        Vec perp = y - u1 * u1.dot(y);
        Mat q;
        if (perp.norm() < 1e-10) {
            q = u1;
        } else {
            q.resize(n, 2);
            q.col(0) = u1;
            q.col(1) = perp / perp.norm();
        }
        Mat wq = w.matrix * q;
        Mat b = q.adjoint() * wq;
        out.max_invariance_residual = std::max(out.max_invariance_residual, (wq - q * b).norm());
        Eigen::ComplexEigenSolver<Mat> ce(b);
        const double sq = std::sqrt(std::max(0.0, 1.0 - x * x));
        std::vector<cd> got(ce.eigenvalues().data(), ce.eigenvalues().data() + b.rows());
        std::sort(got.begin(), got.end(), [](cd a, cd c) { return a.imag() < c.imag(); });
        std::vector<cd> want = got.size() == 1 ? std::vector<cd>{cd(x, 0.0)}
                                                : std::vector<cd>{cd(x, -sq), cd(x, sq)};
        const double theta = std::acos(x);
        for (std::size_t j = 0; j < got.size(); ++j) {
            out.max_eigen_error = std::max(out.max_eigen_error, std::abs(got[j] - want[j]));
            out.max_phase_error = std::max(out.max_phase_error, std::abs(std::abs(std::arg(got[j])) - theta));
        }
        ++out.pairs;
    }
    return out;
}

double jacobi_anger_tail(double tau, int q) {
    if (tau < 0.0) throw Error(ErrorCode::InvalidConfig, "tau must be >= 0");
    if (tau == 0.0) return 0.0;
    const double h = tau / 2.0;
    // |J_k(tau)| <= (tau/2)^k / k!; pick K where that envelope is negligible and geometric
    int K = std::max(q + 1, static_cast<int>(std::ceil(tau)) + 2);
    auto env = [&](int k) { return std::exp(k * std::log(h) - std::lgamma(k + 1.0)); };
    while (env(K + 1) > 1e-40 || h / (K + 2) > 0.5) ++K;
    double sum = 0.0;
    for (int k = q + 1; k <= K; ++k) sum += std::abs(boost::math::cyl_bessel_j(k, tau));
    const double rem = env(K + 1) / (1.0 - h / (K + 2));
    return 2.0 * (sum + rem);
}

double jacobi_anger_grid_error(double tau, int q, int n_points) {
    std::vector<cd> c(q + 1);
    for (int k = 0; k <= q; ++k) {
        const double j = boost::math::cyl_bessel_j(k, tau);
        c[k] = (k == 0 ? 1.0 : 2.0) * std::pow(-I1, k) * j;
    }
    double err = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const double x = -1.0 + 2.0 * i / (n_points - 1);
        // Chebyshev recurrence
        double t0 = 1.0, t1 = x;
        cd acc = c[0];
        if (q >= 1) acc += c[1] * t1;
        for (int k = 2; k <= q; ++k) {
            const double t2 = 2.0 * x * t1 - t0;
            acc += c[k] * t2;
            t0 = t1;
            t1 = t2;
        }
        err = std::max(err, std::abs(std::exp(-I1 * (x * tau)) - acc));
    }
    return err;
}

QueryDegree query_degree(double tau, double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
    if (tau < 0.0) throw Error(ErrorCode::InvalidConfig, "tau must be >= 0");
    QueryDegree qd;
    qd.tau = tau;
    qd.epsilon = epsilon;
    const double lg = std::log(1.0 / epsilon);
    qd.closed_form = tau > 0.0 ? tau + lg / std::log(std::numbers::e + lg / tau) : 0.0;
    int q = 0;
    while (jacobi_anger_tail(tau, q) > epsilon) ++q;
    qd.q = std::max(q, 1);
    qd.tail = jacobi_anger_tail(tau, qd.q);
    const double ref = std::max(qd.closed_form, 1.0);
    qd.within_envelope = qd.q <= 4.0 * ref && qd.q >= ref / 4.0;
    return qd;
}

}  // namespace fqs
