#pragma once

#include <map>
#include <string>
#include <vector>

#include "fqs/hamiltonian.hpp"
#include "fqs/sambe.hpp"

namespace fqs {

// x^n / n! evaluated in log space; 0^0 = 1.
double power_over_factorial(double x, int n);

struct LRBound {
    double value = 0.0;    // 2 (gt)^n / n!
    double relaxed = 0.0;  // (e gt / n)^n, the Stirling relaxation of value
    int n = 0;
    bool premise_ok = true;  // dl >= 2 m_max gamma t
};

LRBound lr_bound(int dl, double gamma, double t, int m_max);
double lr_bound_exp(int dl, double h, double zeta, double t);

struct TruncationBound {
    double value = 0.0;  // 20 m_max (gt)^n / n!
    double edge_part = 0.0;     // 4 m_max (gt)^n / n!
    double interior_part = 0.0; // 16 m_max (gt)^n / n!
    int n = 0;
    bool premise_ok = true;
};

TruncationBound truncation_bound(int l_max, double gamma, double t, int m_max);
double truncation_bound_exp(int l_max, double h, double zeta, double t);

// 10 m_max (e m_max gt / (l_max - m_max))^((l_max - m_max) / m_max)
double truncation_error_condition(int l_max, double gamma_t, int m_max);

double prop1_threshold(double kappa, double eta);

// Translation-symmetry defect bound on the 4 l_max space.
double symmetry_bound(int l, int l_src, int l_max, double gamma, double t, int m_max);
int symmetry_order(int l, int l_src, int l_max, int m_max);

// n! >= 2 (n/e)^n
bool stirling_holds(int n);

struct BoundReport {
    std::string name;
    double bound = 0.0;
    double measured = 0.0;
    double slack = 0.0;
    bool premise_ok = true;
    std::map<std::string, double> context;
};

BoundReport make_report(std::string name, double bound, double measured,
                        std::map<std::string, double> context, bool premise_ok = true);

enum class ResourceRegime { Adiabatic, LongTime, Qubitization, TruncatedDyson, Trotter };
const char* regime_name(ResourceRegime r);

struct ResourceParams {
    double alpha = 1.0;
    double gamma = 1.0;
    double omega = 1.0;
    double t = 1.0;
    double epsilon = 1e-3;
    int n_a = 1;
    double C = 1.0;
    int m_max = 1;
    int trotter_order = 2;
    double lambda = 0.0;  // local energy scale; 0 means use alpha
};

struct ResourceEstimate {
    ResourceRegime regime = ResourceRegime::Adiabatic;
    int ancilla_qubits = 0;
    std::string ancilla_expr;
    double query_complexity = 0.0;
    std::string query_expr;
    double gates_per_query = 0.0;
    std::string gates_expr;
    double o_log_term = 0.0;
    int l_max = 0;
    bool scaling_only = true;
    bool display_only = false;
    double crossover_time = 0.0;     // e^(alpha/omega) / omega, long-time row only
    bool high_frequency = false;     // omega >= lambda
};

ResourceEstimate resources(ResourceRegime regime, const ResourceParams& p);
std::vector<ResourceEstimate> resource_table(const ResourceParams& p);

struct FMExpansion {
    int order = 0;
    Mat H_FM;
    double lambda = 0.0;
};

// First-order commutator term in closed form from the Fourier components.
Mat floquet_magnus_first(const FourierHamiltonian& H);
// Same term by Gauss-Legendre quadrature over the triangle 0 <= t2 <= t1 <= T.
Mat floquet_magnus_first_quadrature(const FourierHamiltonian& H, int panels = 8);
FMExpansion floquet_magnus(const FourierHamiltonian& H, int order);
// ||H_0|| + sum_{m != 0} ||H_m||
double local_energy_scale(const FourierHamiltonian& H);

}  // namespace fqs
