#pragma once

#include <map>
#include <vector>

#include "fqs/hamiltonian.hpp"
#include "fqs/sambe.hpp"

namespace fqs {

// Oracle O on C^anc_dim (x) C^sys_dim (ancilla index most significant),
// oracle state |G>, and normalization alpha with <G|O|G> = target / alpha.
struct BlockEncoding {
    SpMat oracle;
    Vec state;
    double alpha = 0.0;
    Mat target;
    int anc_dim = 1;
    int sys_dim = 1;

    // (<G| (x) I) O (|G> (x) I)
    Mat encoded() const;
    // || encoded - target / alpha ||, spectral norm
    double residual() const;
    // max |O^dag O - I|
    double unitarity_defect() const;
};

BlockEncoding encode_lcu(const LCU& lcu);

// |l, l'>|b> -> |l, l'>|b xor [l' < l]> on C^(2L) (x) C^(2L) (x) C^2
SpMat comparator(int L);

// sum_l |l><l|_b (x) V_l (x) I_d with V_l |l'> = (1 - 2 [l' < l]) |l'>
SpMat linear_potential_oracle(int L, int d = 1);
// Same oracle as the b = 0 block of Comp^dag (I (x) I (x) Z) Comp
SpMat linear_potential_oracle_from_comparator(int L, int d = 1);

// Encodes H_LP on D^L (x) C^d with oracle state |a^L> and alpha = L omega.
BlockEncoding encode_linear_potential(int L, double omega, int d = 1, bool via_comparator = false);

// Ancilla layout of the effective-Hamiltonian oracle, registers (d, c, b, a) with d most significant.
struct EffectiveLayout {
    std::vector<int> modes;  // c register labels
    int n_modes = 0;
    int b_dim = 0;           // 2L
    int a_dim = 0;           // largest term count over modes
    int index(int flag, int c, int b, int a) const {
        return ((flag * n_modes + c) * b_dim + b) * a_dim + a;
    }
    int dim() const { return 2 * n_modes * b_dim * a_dim; }
};

EffectiveLayout effective_layout(const FourierHamiltonian& H, int L, const ModeLCU& lcu);

// Encodes sum_m Add_m (x) H_m - H_LP on D^L with alpha = sum_m alpha_m + L omega.
BlockEncoding encode_effective(const FourierHamiltonian& H, int L, const ModeLCU& lcu);

// sum_m sqrt(alpha_m / alpha) |m>, ordered by m
Vec g_coef(const std::map<int, double>& alphas);
Vec g_coef(const std::vector<double>& alphas);

struct WalkOperator {
    Mat matrix;
    BlockEncoding source;      // Hermitian-oracle encoding the walk is built from
    bool hermitianized = false;  // source oracle was doubled with a control qubit
};

// ((2|G><G| - I) (x) I) O. A non-self-adjoint O is first replaced by
// |0><1| (x) O + |1><0| (x) O^dag with state |+>|G>, which encodes the same Hermitian target.
WalkOperator walk_operator(const BlockEncoding& be, int max_dim = 4096);

struct WalkCheck {
    int pairs = 0;
    double max_eigen_error = 0.0;     // |eig - (lambda/alpha +- i sqrt(1 - (lambda/alpha)^2))|
    double max_phase_error = 0.0;     // | |arg eig| - arccos(lambda/alpha) |
    double max_invariance_residual = 0.0;
};

// Checks the two-dimensional invariant subspace of every target eigenpair.
WalkCheck verify_walk(const WalkOperator& w);

struct QueryDegree {
    int q = 1;
    double tau = 0.0;
    double epsilon = 0.0;
    double tail = 0.0;         // certified bound on the truncation error at degree q
    double closed_form = 0.0;  // tau + ln(1/eps) / ln(e + ln(1/eps) / tau)
    bool within_envelope = true;
};

// Certified bound on sup_{|x|<=1} |e^{-i x tau} - degree-q Jacobi-Anger truncation|.
double jacobi_anger_tail(double tau, int q);
// Same error evaluated on n_points uniform nodes of [-1, 1].
double jacobi_anger_grid_error(double tau, int q, int n_points = 1001);

QueryDegree query_degree(double tau, double epsilon);

}  // namespace fqs
