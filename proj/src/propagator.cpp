#include "fqs/propagator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <vector>

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/numeric/odeint.hpp>

namespace fqs {

namespace {

namespace odeint = boost::numeric::odeint;
using OdeState = std::vector<double>;

Mat integrate_columns(const FourierHamiltonian& H, const Mat& psi0, double t, double tol,
                      long* steps_out) {
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw Error(ErrorCode::InvalidConfig, "ODE tolerance must lie in [1e-13, 1e-6]");
    const int d = H.dim();
    const int k = static_cast<int>(psi0.cols());
    std::vector<std::pair<int, Mat>> modes;
    for (const auto& [m, h] : H.components())
        if (h.cwiseAbs().maxCoeff() > 0.0) modes.emplace_back(m, h);
    const double w = H.omega();

    OdeState x(2 * d * k);
    Eigen::Map<Mat>(reinterpret_cast<cd*>(x.data()), d, k) = psi0;
    if (t == 0.0) {
        if (steps_out) *steps_out = 0;
        return psi0;
    }

    auto rhs = [&](const OdeState& xs, OdeState& dx, double tt) {
        Eigen::Map<const Mat> psi(reinterpret_cast<const cd*>(xs.data()), d, k);
        Eigen::Map<Mat> out(reinterpret_cast<cd*>(dx.data()), d, k);
        Mat h = Mat::Zero(d, d);
        for (const auto& [m, hm] : modes) h += std::exp(-I1 * (double(m) * w * tt)) * hm;
        out.noalias() = -I1 * (h * psi);
    };

    const double local = std::max(tol * 1e-3, 5e-15);
    auto stepper = odeint::make_controlled(local, local, odeint::runge_kutta_fehlberg78<OdeState>());
    const double sign = t > 0 ? 1.0 : -1.0;
    const double tend = std::abs(t);
    double scale = 0.0;
    for (const auto& [m, hm] : modes) scale += hm.cwiseAbs().sum() / d;
    double dt = std::min(tend, 0.1 / std::max(scale + w, 1e-3));
    double tt = 0.0;
    long steps = 0;
    // integrate in |t|, flipping the generator sign for negative times
    auto rhs_signed = [&](const OdeState& xs, OdeState& dx, double s) {
        rhs(xs, dx, sign * s);
        if (sign < 0)
            for (auto& v : dx) v = -v;
    };
    const double end_tol = 1e-15 * std::max(1.0, tend);
    while (tend - tt > end_tol) {
        if (tt + dt > tend) dt = tend - tt;
        auto res = stepper.try_step(rhs_signed, x, tt, dt);
        if (res == odeint::success) {
            ++steps;
        } else if (dt < 1e-14 * tend) {
            throw Error(ErrorCode::StepUnderflow, "adaptive step fell below 1e-14 t");
        }
    }
    if (steps_out) *steps_out = steps;
    return Eigen::Map<Mat>(reinterpret_cast<cd*>(x.data()), d, k);
}

}  // namespace

SystemState exact_evolve(const FourierHamiltonian& H, const Vec& psi0, double t, double tol) {
    if (psi0.size() != H.dim()) throw Error(ErrorCode::InvalidConfig, "psi0 has wrong dimension");
    if (std::abs(psi0.norm() - 1.0) > 1e-10)
        throw Error(ErrorCode::InvalidConfig, "psi0 must be normalized");
    SystemState s;
    Mat out = integrate_columns(H, psi0, t, tol, &s.steps);
    s.vector = out.col(0);
    s.drift = std::abs(s.vector.norm() - 1.0);
    s.vector.normalize();
    s.time = t;
    return s;
}

Mat exact_propagator(const FourierHamiltonian& H, double t, double tol) {
    return integrate_columns(H, Mat::Identity(H.dim(), H.dim()), t, tol, nullptr);
}

std::vector<double> monodromy_quasienergies(const FourierHamiltonian& H, double tol) {
    const double T = H.period();
    Mat U = exact_propagator(H, T, tol);
    Eigen::ComplexEigenSolver<Mat> es(U);
    std::vector<double> out;
    for (int k = 0; k < U.rows(); ++k)
        out.push_back(fold_quasienergy(-std::arg(es.eigenvalues()(k)) / T, H.omega()));
    std::sort(out.begin(), out.end());
    return out;
}

Propagator::Propagator(const SpMat& a) : dim_(static_cast<int>(a.rows())) {
    SpMat diff = a - SpMat(a.adjoint());
    double defect = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SpMat::InnerIterator it(diff, k); it; ++it) defect = std::max(defect, std::abs(it.value()));
    if (defect > kHermTol) throw Error(ErrorCode::NonHermitian, "generator is not Hermitian");
    if (dim_ <= kDenseLimit) {
        init_dense(Mat(a));
        return;
    }
    dense_ = false;
    sparse_ = a;
    sparse_.makeCompressed();
    // Gershgorin interval
    RVec rad = RVec::Zero(dim_), diag = RVec::Zero(dim_);
    for (int k = 0; k < sparse_.outerSize(); ++k)
        for (SpMat::InnerIterator it(sparse_, k); it; ++it) {
            if (it.row() == it.col())
                diag(it.row()) = it.value().real();
            else
                rad(it.row()) += std::abs(it.value());
        }
    double lo = (diag - rad).minCoeff(), hi = (diag + rad).maxCoeff();
    center_ = 0.5 * (lo + hi);
    radius_ = 0.5 * (hi - lo) * (1.0 + 1e-12) + 1e-12;
}

Propagator::Propagator(const Mat& a) : dim_(static_cast<int>(a.rows())) {
    if (hermiticity_defect(a) > kHermTol)
        throw Error(ErrorCode::NonHermitian, "generator is not Hermitian");
    init_dense(a);
}

void Propagator::init_dense(const Mat& a) {
    dense_ = true;
    Mat herm = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<Mat> es(herm);
    evecs_ = es.eigenvectors();
    evals_ = es.eigenvalues();
}

Mat Propagator::apply(const Mat& v, double t) const {
    if (t == 0.0) return v;
    if (!dense_) return chebyshev(v, t);
    Eigen::VectorXcd phase(dim_);
    for (int k = 0; k < dim_; ++k) phase(k) = std::exp(-I1 * (evals_(k) * t));
    return evecs_ * (phase.asDiagonal() * (evecs_.adjoint() * v));
}

Vec Propagator::apply(const Vec& v, double t) const {
    Mat m = v;
    return apply(m, t).col(0);
}

Mat Propagator::unitary(double t) const {
    return apply(Mat(Mat::Identity(dim_, dim_)), t);
}

Mat Propagator::chebyshev(const Mat& v, double t) const {
    // exp(-i A t) = exp(-i c t) sum_k (2 - delta_k0) (-i)^k J_k(r t) T_k((A - c) / r)
    const double x = radius_ * std::abs(t);
    const double sgn = t > 0 ? 1.0 : -1.0;
    std::vector<double> coef;
    for (int k = 0;; ++k) {
        double j = boost::math::cyl_bessel_j(k, x);
        coef.push_back(j);
        if (k > x && std::abs(j) < 1e-17 && coef.size() > 2 && std::abs(coef[k - 1]) < 1e-17) break;
    }
    auto apply_scaled = [&](const Mat& u) -> Mat {
        return (sparse_ * u - center_ * u) / radius_;
    };
    Mat t0 = v;
    Mat t1 = apply_scaled(v);
    Mat acc = coef[0] * t0;
    cd ipow = -I1 * sgn;
    acc += 2.0 * ipow * coef[1] * t1;
    for (std::size_t k = 2; k < coef.size(); ++k) {
        Mat t2 = 2.0 * apply_scaled(t1) - t0;
        ipow *= -I1 * sgn;
        acc += 2.0 * ipow * coef[k] * t2;
        t0.swap(t1);
        t1.swap(t2);
    }
    return std::exp(-I1 * (center_ * t)) * acc;
}

std::uint64_t PropagatorCache::fingerprint(const SpMat& a) {
    // FNV-1a over shape, pattern and values
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const void* p, std::size_t n) {
        auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= b[i];
            h *= 1099511628211ULL;
        }
    };
    Eigen::Index r = a.rows(), c = a.cols();
    mix(&r, sizeof r);
    mix(&c, sizeof c);
    for (int k = 0; k < a.outerSize(); ++k)
        for (SpMat::InnerIterator it(a, k); it; ++it) {
            Eigen::Index i = it.row(), j = it.col();
            cd v = it.value();
            mix(&i, sizeof i);
            mix(&j, sizeof j);
            mix(&v, sizeof v);
        }
    return h;
}

bool PropagatorCache::same(const SpMat& a, const SpMat& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.nonZeros() != b.nonZeros()) return false;
    return (a - b).norm() == 0.0;
}

std::shared_ptr<const Propagator> PropagatorCache::get(const SpMat& a) {
    const auto key = fingerprint(a);
    {
        std::shared_lock lock(mu_);
        auto [lo, hi] = map_.equal_range(key);
        for (auto it = lo; it != hi; ++it)
            if (same(it->second.op, a)) return it->second.prop;
    }
    auto p = std::make_shared<const Propagator>(a);
    std::unique_lock lock(mu_);
    auto [lo, hi] = map_.equal_range(key);
    for (auto it = lo; it != hi; ++it)
        if (same(it->second.op, a)) return it->second.prop;
    if (map_.size() >= kCapacity) {
        std::vector<std::uint64_t> stamps;
        for (const auto& [k, e] : map_) stamps.push_back(e.stamp);
        std::nth_element(stamps.begin(), stamps.begin() + stamps.size() / 2, stamps.end());
        const auto cut = stamps[stamps.size() / 2];
        std::erase_if(map_, [cut](const auto& kv) { return kv.second.stamp < cut; });
    }
    map_.emplace(key, Entry{a, p, ++clock_});
    return p;
}

std::size_t PropagatorCache::size() const {
    std::shared_lock lock(mu_);
    return map_.size();
}

void PropagatorCache::clear() {
    std::unique_lock lock(mu_);
    map_.clear();
}

PropagatorCache& PropagatorCache::global() {
    static PropagatorCache cache;
    return cache;
}

Vec expm_apply(const SambeOperator& op, const Vec& v, double t) {
    return PropagatorCache::global().get(op.matrix)->apply(v, t);
}

Vec expm_apply(const Mat& a, const Vec& v, double t) {
    return Propagator(a).apply(v, t);
}

Mat transition_column(const Propagator& prop, const SambeSpace& sp, int l_src, double t) {
    if (!sp.contains(l_src)) throw Error(ErrorCode::IndexOutOfRange, "source label outside D^L");
    Mat in = Mat::Zero(sp.dim(), sp.d);
    in.block(sp.offset(l_src), 0, sp.d, sp.d).setIdentity();
    return prop.apply(in, t);
}

Mat transition_block(const SambeOperator& op, int l, int l_src, double t) {
    const auto& sp = op.space;
    if (!sp.contains(l) || !sp.contains(l_src))
        throw Error(ErrorCode::IndexOutOfRange, "Sambe label outside D^L");
    auto prop = PropagatorCache::global().get(op.matrix);
    Mat col = transition_column(*prop, sp, l_src, t);
    return col.block(sp.offset(l), 0, sp.d, sp.d);
}

Mat sambe_extract_operator(const FourierHamiltonian& H, int L, double t) {
    auto op = build_effective(H, L);
    auto prop = PropagatorCache::global().get(op.matrix);
    Mat col = transition_column(*prop, op.space, 0, t);
    Mat out = Mat::Zero(H.dim(), H.dim());
    for (int l = op.space.lo(); l <= op.space.hi(); ++l)
        out += std::exp(-I1 * (double(l) * H.omega() * t)) * col.block(op.space.offset(l), 0, H.dim(), H.dim());
    return out;
}

Vec sambe_extract(const FourierHamiltonian& H, int L, const Vec& psi0, double t) {
    return sambe_extract_operator(H, L, t) * psi0;
}

}  // namespace fqs
