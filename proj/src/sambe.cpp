#include "fqs/sambe.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace fqs {

namespace {

void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps < 1.0))
        throw Error(ErrorCode::InvalidEpsilon, "epsilon must lie in (0, 1)");
}

void add_block(std::vector<Eigen::Triplet<cd>>& trip, const SambeSpace& sp, int l, int l2,
               const Mat& b, double tol = 0.0) {
    const int r0 = sp.offset(l), c0 = sp.offset(l2);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            if (std::abs(b(i, j)) > tol) trip.emplace_back(r0 + i, c0 + j, b(i, j));
}

}  // namespace

Mat SambeOperator::block(int l, int l_src) const {
    if (!space.contains(l) || !space.contains(l_src))
        throw Error(ErrorCode::IndexOutOfRange, "Sambe label outside D^L");
    Mat full = Mat(matrix.block(space.offset(l), space.offset(l_src), space.d, space.d));
    return full;
}

int oplus(int l, int m, int L) {
    const int n = 2 * L;
    int r = (l + m + L - 1) % n;
    if (r < 0) r += n;
    return r - L + 1;
}

int ominus(int l, int m, int L) { return oplus(l, -m, L); }

DecayConstants decay_constants(double zeta) {
    DecayConstants c;
    c.beta = 1.0 / (1.0 - std::exp(-1.0 / zeta));
    c.zeta_prime = 1.0 / (1.0 / zeta - 1.0 + std::exp(-1.0 / zeta));
    return c;
}

TruncationOrder choose_l_max(double gamma, double t, int m_max, double epsilon, Regime regime) {
    check_epsilon(epsilon);
    if (m_max < 1) throw Error(ErrorCode::InvalidConfig, "m_max must be >= 1");
    const double gt = gamma * t;
    if (gt < 0.0) throw Error(ErrorCode::InvalidConfig, "gamma t must be >= 0");
    TruncationOrder out{m_max + 1, regime, epsilon};
    if (gt == 0.0) return out;
    const double e = std::numbers::e;
    const double lg = std::log(10.0 * m_max / epsilon);
    const double x = e * e * m_max * gt + 4.0 * m_max * lg / std::log(e + lg / (e * gt));
    out.l_max = m_max + static_cast<int>(std::ceil(x));
    return out;
}

TruncationOrder choose_l_max_exp(double h, double zeta, double t, double epsilon, Regime regime) {
    check_epsilon(epsilon);
    if (!(h > 0.0) || !(zeta > 0.0)) throw Error(ErrorCode::InvalidConfig, "h, zeta must be > 0");
    const auto c = decay_constants(zeta);
    const double zp = c.zeta_prime;
    const double x = 2.0 * c.beta * zp * h * t + zp * std::log(1.0 / epsilon) +
                     zp * std::log(4.0 * zp) + 2.0 * zp / c.beta + 1.0;
    return {static_cast<int>(std::ceil(x)), regime, epsilon};
}

SambeOperator build_effective(const FourierHamiltonian& H, int L) {
    if (L < 1) throw Error(ErrorCode::InvalidConfig, "L must be >= 1");
    SambeSpace sp{L, H.dim()};
    std::vector<Eigen::Triplet<cd>> trip;
    const Mat id = Mat::Identity(H.dim(), H.dim());
    for (int l = sp.lo(); l <= sp.hi(); ++l) {
        add_block(trip, sp, l, l, H.component(0) - double(l) * H.omega() * id);
        for (const auto& [m, h] : H.components()) {
            if (m == 0 || !sp.contains(l + m)) continue;
            // <l| . |l+m> = H_{-m}
            add_block(trip, sp, l, l + m, H.component(-m));
        }
    }
    SambeOperator op{sp, SpMat(sp.dim(), sp.dim()), SambeKind::Effective};
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    return op;
}

SambeOperator build_linear_potential(int L, double omega, int d) {
    if (L < 1 || d < 1) throw Error(ErrorCode::InvalidConfig, "L, d must be >= 1");
    SambeSpace sp{L, d};
    std::vector<Eigen::Triplet<cd>> trip;
    for (int l = sp.lo(); l <= sp.hi(); ++l)
        for (int j = 0; j < d; ++j)
            if (l != 0) trip.emplace_back(sp.offset(l) + j, sp.offset(l) + j, cd(l * omega, 0.0));
    SambeOperator op{sp, SpMat(sp.dim(), sp.dim()), SambeKind::LinearPotential};
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    return op;
}

SambeOperator build_effective_pbc(const FourierHamiltonian& H, int L) {
    const int mm = H.m_max();
    if (L < mm + 1)
        throw Error(ErrorCode::LTooSmall, "PBC refinement needs L >= m_max + 1");
    SambeSpace sp{L, H.dim()};
    std::vector<Eigen::Triplet<cd>> trip;
    const Mat id = Mat::Identity(H.dim(), H.dim());
    for (int l = sp.lo(); l <= sp.hi(); ++l) {
        add_block(trip, sp, l, l, -double(l) * H.omega() * id);
        for (const auto& [m, h] : H.components()) {
            // Add_m |l> = |l (+) m>
            add_block(trip, sp, oplus(l, m, L), l, h);
        }
    }
    SambeOperator op{sp, SpMat(sp.dim(), sp.dim()), SambeKind::EffectivePBC};
    op.matrix.setFromTriplets(trip.begin(), trip.end());
    return op;
}

Mat adder(int m, int L) {
    const int n = 2 * L;
    Mat a = Mat::Zero(n, n);
    SambeSpace sp{L, 1};
    for (int l = sp.lo(); l <= sp.hi(); ++l) a(sp.slot(oplus(l, m, L)), sp.slot(l)) = 1.0;
    return a;
}

double fold_quasienergy(double e, double omega) {
    double f = e - omega * std::floor(e / omega + 0.5);
    if (f >= 0.5 * omega) f -= omega;
    return f;
}

std::vector<Quasienergy> quasienergies(const SambeOperator& op, double omega, bool interior_only,
                                       double tol, double leak_tol) {
    const Mat dense = op.dense();
    if (hermiticity_defect(dense) > kHermTol)
        throw Error(ErrorCode::NonHermitian, "quasienergies need a Hermitian operator");
    Eigen::SelfAdjointEigenSolver<Mat> es(dense);
    const auto& sp = op.space;
    std::vector<double> vals;
    for (int k = 0; k < sp.dim(); ++k) {
        if (interior_only) {
            double leak = 0.0;
            for (int l = sp.lo(); l <= sp.hi(); ++l)
                if (2 * std::abs(l) > sp.L)
                    leak += es.eigenvectors().col(k).segment(sp.offset(l), sp.d).squaredNorm();
            if (leak > leak_tol) continue;
        }
        vals.push_back(fold_quasienergy(es.eigenvalues()(k), omega));
    }
    std::sort(vals.begin(), vals.end());
    std::vector<Quasienergy> out;
    for (double v : vals) {
        if (!out.empty() && v - out.back().value <= tol) {
            ++out.back().weight;
        } else {
            out.push_back({v, 1});
        }
    }
    // merge clusters split across the zone edge
    if (out.size() > 1 && out.front().value + omega - out.back().value <= tol) {
        out.front().weight += out.back().weight;
        out.pop_back();
    }
    return out;
}

}  // namespace fqs
