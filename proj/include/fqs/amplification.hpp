#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fqs/bounds.hpp"
#include "fqs/propagator.hpp"

namespace fqs {

// |0> -> |a^{L_in}> embedded in D^{L_total}; Householder completion about the bisector.
Mat u_ini(int L_in, int L_total);
// (2|0><0| - I) (x) I_d
Mat reflection(int L_total, int d);

enum class StageKind { Prepare, Unprepare, Evolve, Phase, Reflect, Scalar };

// One unitary factor acting on the Sambe register (x) system.
struct Stage {
    StageKind kind = StageKind::Scalar;
    int l_in = 0;                                  // Prepare / Unprepare
    double t = 0.0;                                // Evolve / Phase
    std::shared_ptr<const Propagator> propagator;  // Evolve
    RVec diag;                                     // Phase: exp(-i diag t)
    cd scalar = 1.0;                               // Scalar
};

// Stages are stored in application order: stages[0] acts first.
struct AmplifierCircuit {
    SambeSpace space;
    std::vector<Stage> stages;
    int l_max_inner = 0;
    bool pbc = false;
    int amp1_queries = 0;

    Mat apply(const Mat& v) const;
    Mat apply_adjoint(const Mat& v) const;
    // Output columns U (|0> (x) I_d), shape dim x d.
    Mat apply_to_zero() const;
    // <0| U |0>, d x d
    Mat block00() const;
    Mat total() const;
    AmplifierCircuit adjoint() const;
};

// (U_ini^{4 l_max})^dag e^{-i H_LP t} e^{-i H_eff t} U_ini^{l_max} on D^{4 l_max}
AmplifierCircuit amp1(const FourierHamiltonian& H, int l_max, double t, bool pbc,
                      bool with_linear_potential = true);
// -U1 R U1^dag R U1 for any circuit U1 on the same space
AmplifierCircuit oblivious_amplify(const AmplifierCircuit& u1);
AmplifierCircuit amp2(const FourierHamiltonian& H, int l_max, double t, bool pbc,
                      bool with_linear_potential = true);
// U_ini^dag e^{-i H_LP t} e^{-i H_eff t} on D^{l_max}, started from |0>
AmplifierCircuit naive_circuit(const FourierHamiltonian& H, int l_max, double t);

double success_probability(const AmplifierCircuit& c, const Vec& psi0);

struct SampledProbability {
    double estimate = 0.0;
    long successes = 0;
    long shots = 0;
};
// Bernoulli draws with the exact success probability; seeded for reproducibility.
SampledProbability success_probability_sampled(const AmplifierCircuit& c, const Vec& psi0,
                                               long shots, std::uint64_t seed);

// Success probabilities of -{U R U^dag R}^p U for p = 0..p_max with U the naive circuit.
std::vector<double> iterated_amplification(const FourierHamiltonian& H, int l_max, double t,
                                           int p_max, const Vec& psi0);

struct PipelineOptions {
    std::optional<std::map<int, double>> alphas;
    double oracle_tol = kDefaultOdeTol;
    bool compute_oracle = true;
};

struct Diagnostics {
    int l_max = 0;
    int sambe_dim = 0;
    double success_probability = 0.0;
    double fidelity = 0.0;   // |<psi_exact|psi_out>| / ||psi_out||
    double deviation = 0.0;  // || U |0, psi0> - |0, psi_exact> ||
    int periods = 0;
    double remainder = 0.0;  // delta in t = (n + delta) T
    ResourceEstimate resource;
    std::vector<std::string> warnings;
};

struct PipelineResult {
    Vec state;      // normalized system state after projection
    Vec output;     // full Sambe register output
    Vec exact;      // oracle state
    Diagnostics diag;
};

// Output columns of the pipeline circuit for all d basis inputs, plus its truncation order.
struct PipelineColumns {
    Mat columns;  // dim x d
    SambeSpace space;
    int l_max = 0;
    int periods = 0;
    double remainder = 0.0;
};

PipelineColumns adiabatic_columns(const FourierHamiltonian& H, double t, double epsilon);
PipelineColumns longtime_columns(const FourierHamiltonian& H, double t, double epsilon);

PipelineResult run_adiabatic(const FourierHamiltonian& H, const Vec& psi0, double t, double epsilon,
                             const PipelineOptions& opts = {});
PipelineResult run_longtime(const FourierHamiltonian& H, const Vec& psi0, double t, double epsilon,
                            const PipelineOptions& opts = {});

}  // namespace fqs
