#pragma once

#include <vector>

#include "fqs/hamiltonian.hpp"

namespace fqs {

enum class Regime { Adiabatic, LongTime };

struct TruncationOrder {
    int l_max = 1;
    Regime regime = Regime::Adiabatic;
    double epsilon = 0.0;
};

// Index set D^L = {-L+1, ..., L}; slot(l) = l + L - 1. Row index of (l, j) is slot(l) * d + j.
struct SambeSpace {
    int L = 1;
    int d = 1;

    int width() const { return 2 * L; }
    int dim() const { return 2 * L * d; }
    int lo() const { return -L + 1; }
    int hi() const { return L; }
    bool contains(int l) const { return l >= lo() && l <= hi(); }
    int slot(int l) const { return l + L - 1; }
    int label(int slot) const { return slot - L + 1; }
    int offset(int l) const { return slot(l) * d; }
};

enum class SambeKind { Effective, LinearPotential, EffectivePBC };

// Stored sparse; dense() materializes it for small spaces.
struct SambeOperator {
    SambeSpace space;
    SpMat matrix;
    SambeKind kind = SambeKind::Effective;

    Mat dense() const { return Mat(matrix); }
    Mat block(int l, int l_src) const;
};

// l (+) m on D^L, wrapping modulo 2L.
int oplus(int l, int m, int L);
int ominus(int l, int m, int L);

struct DecayConstants {
    double beta = 0.0;
    double zeta_prime = 0.0;
};
DecayConstants decay_constants(double zeta);

TruncationOrder choose_l_max(double gamma, double t, int m_max, double epsilon,
                             Regime regime = Regime::Adiabatic);
TruncationOrder choose_l_max_exp(double h, double zeta, double t, double epsilon,
                                 Regime regime = Regime::Adiabatic);

SambeOperator build_effective(const FourierHamiltonian& H, int L);
SambeOperator build_linear_potential(int L, double omega, int d);
SambeOperator build_effective_pbc(const FourierHamiltonian& H, int L);

Mat adder(int m, int L);

struct Quasienergy {
    double value = 0.0;
    int weight = 0;
};

double fold_quasienergy(double e, double omega);

// Eigenvalues folded into [-omega/2, omega/2) and merged within tol.
// With interior_only, eigenvectors carrying more than leak_tol weight on |l| > L/2 are skipped;
// these are the copies distorted by the truncation edge.
std::vector<Quasienergy> quasienergies(const SambeOperator& op, double omega,
                                       bool interior_only = false, double tol = 1e-9,
                                       double leak_tol = 1e-10);

}  // namespace fqs
