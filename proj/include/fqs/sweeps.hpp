#pragma once

#include <functional>
#include <vector>

#include "fqs/amplification.hpp"
#include "fqs/bounds.hpp"

namespace fqs {

// Grid sweeps that check measured quantities against the closed-form bounds.
// Each sweep runs its grid points either in a plain loop or across OpenMP threads;
// both paths evaluate the same kernel so results are identical.
enum class Exec { Serial, Parallel };

// Propagated norms carry round-off of this size; bounds far below it cannot be resolved.
inline constexpr double kRoundoffFloor = 1e-13;

void set_threads(int n);
int max_threads();

// Runs body(i) for i in [0, n); exceptions from workers are rethrown on the caller.
void for_each_index(int n, Exec exec, const std::function<void(int)>& body);

// ||U(t) - U^{l_max}(t)|| against the truncation bound, t = gt / gamma.
std::vector<BoundReport> truncation_sweep(const FourierHamiltonian& H, const std::vector<int>& l_maxes,
                                          const std::vector<double>& gamma_ts, double oracle_tol,
                                          Exec exec = Exec::Parallel);

// ||<l| e^{-i H_eff^L t} |l'>|| against the finite-range bound, points with |l - l'| >= 2 m_max gamma t.
std::vector<BoundReport> lieb_robinson_sweep(const FourierHamiltonian& H, int L,
                                             const std::vector<double>& times,
                                             Exec exec = Exec::Parallel);

// Same transition norms against the exponential-decay bound for |l - l'| <= dl_max.
std::vector<BoundReport> lieb_robinson_exp_sweep(const FourierHamiltonian& H, int L,
                                                 const std::vector<double>& times, int dl_max,
                                                 Exec exec = Exec::Parallel);

// Translation-symmetry defect on D^{4 l_max}, sampling every stride-th l.
std::vector<BoundReport> symmetry_sweep(const FourierHamiltonian& H, int l_max, double t, int stride,
                                        Exec exec = Exec::Parallel);

// || columns psi - |0, psi_exact> || for each state.
std::vector<double> deviation_sweep(const FourierHamiltonian& H, const PipelineColumns& pc, double t,
                                    const std::vector<Vec>& states, double oracle_tol,
                                    Exec exec = Exec::Parallel);

// Haar-like random states from a seeded Gaussian draw.
std::vector<Vec> random_states(int d, int count, std::uint64_t seed);

}  // namespace fqs
