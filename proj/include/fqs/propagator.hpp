#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>

#include "fqs/sambe.hpp"

namespace fqs {

struct SystemState {
    Vec vector;
    double time = 0.0;
    double drift = 0.0;  // | ||psi|| - 1 | before renormalization
    long steps = 0;
};

inline constexpr double kDefaultOdeTol = 1e-10;

// Adaptive Runge-Kutta-Fehlberg 7(8) solution of i dpsi/dt = H(t) psi.
// The per-step tolerance is set 1000x below tol so accumulated error stays near tol.
SystemState exact_evolve(const FourierHamiltonian& H, const Vec& psi0, double t,
                         double tol = kDefaultOdeTol);

// Full d x d propagator U(t), columns evolved together.
Mat exact_propagator(const FourierHamiltonian& H, double t, double tol = kDefaultOdeTol);

// Quasienergies -arg(eig U(T)) / T folded into [-omega/2, omega/2), sorted.
std::vector<double> monodromy_quasienergies(const FourierHamiltonian& H,
                                            double tol = kDefaultOdeTol);

// Action of exp(-i A t) for a fixed Hermitian A. Dense eigendecomposition up to
// kDenseLimit, Chebyshev expansion on the sparse matrix above it.
class Propagator {
public:
    static constexpr int kDenseLimit = 1024;

    explicit Propagator(const SpMat& a);
    explicit Propagator(const Mat& a);

    int dim() const { return dim_; }
    bool dense_backend() const { return dense_; }
    Mat apply(const Mat& v, double t) const;
    Vec apply(const Vec& v, double t) const;
    Mat unitary(double t) const;

private:
    void init_dense(const Mat& a);
    Mat chebyshev(const Mat& v, double t) const;

    int dim_ = 0;
    bool dense_ = true;
    Mat evecs_;
    RVec evals_;
    SpMat sparse_;
    double center_ = 0.0;
    double radius_ = 0.0;
};

// Propagators shared by operator content. Concurrent readers, one writer at a time.
// Holds at most kCapacity entries; the oldest half is dropped when full.
class PropagatorCache {
public:
    static constexpr std::size_t kCapacity = 64;

    std::shared_ptr<const Propagator> get(const SpMat& a);
    std::size_t size() const;
    void clear();

    static PropagatorCache& global();

private:
    struct Entry {
        SpMat op;
        std::shared_ptr<const Propagator> prop;
        std::uint64_t stamp = 0;
    };
    static std::uint64_t fingerprint(const SpMat& a);
    static bool same(const SpMat& a, const SpMat& b);
    mutable std::shared_mutex mu_;
    std::multimap<std::uint64_t, Entry> map_;
    std::uint64_t clock_ = 0;
};

Vec expm_apply(const SambeOperator& op, const Vec& v, double t);
Vec expm_apply(const Mat& a, const Vec& v, double t);

// sum_l exp(-i l omega t) <l| exp(-i H_eff t) |0> psi0, not renormalized.
Vec sambe_extract(const FourierHamiltonian& H, int L, const Vec& psi0, double t);
// Same map as a d x d matrix acting on psi0.
Mat sambe_extract_operator(const FourierHamiltonian& H, int L, double t);

// <l| exp(-i op t) |l_src> as a d x d block.
Mat transition_block(const SambeOperator& op, int l, int l_src, double t);
// All blocks <l| exp(-i op t) |l_src> for fixed l_src, stacked by slot.
Mat transition_column(const Propagator& prop, const SambeSpace& sp, int l_src, double t);

}  // namespace fqs
