#pragma once

#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "fqs/types.hpp"

namespace fqs {

struct FiniteProfile {
    int m_max = 0;
};

// ||H_m|| <= h exp(-|m| / zeta) for m != 0
struct ExpDecayProfile {
    double h = 1.0;
    double zeta = 1.0;
};

using Profile = std::variant<FiniteProfile, ExpDecayProfile>;

// H(t) = sum_m H_m exp(-i m omega t). Immutable once built by from_components.
class FourierHamiltonian {
public:
    FourierHamiltonian() = default;

    double omega() const { return omega_; }
    double period() const;
    int dim() const { return dim_; }
    const Profile& profile() const { return profile_; }
    bool is_finite() const { return std::holds_alternative<FiniteProfile>(profile_); }

    // Largest |m| with a stored component (finite profile: declared m_max).
    int m_max() const;
    const std::map<int, Mat>& components() const { return comps_; }
    // Zero matrix when m is not stored.
    const Mat& component(int m) const;
    std::vector<int> modes() const;

private:
    friend FourierHamiltonian from_components(double, const std::map<int, Mat>&, const Profile&);
    double omega_ = 1.0;
    int dim_ = 0;
    std::map<int, Mat> comps_;
    Profile profile_;
    Mat zero_;
};

struct LCUTerm {
    double coef = 0.0;
    Mat unitary;
};

// One Fourier mode written as sum_j coef_j U_j.
struct LCU {
    std::vector<LCUTerm> terms;

    double alpha() const;
    Mat reconstruct() const;
};

using ModeLCU = std::map<int, LCU>;

std::map<int, double> mode_alphas(const ModeLCU& lcu);

struct EnergyScales {
    double alpha = 0.0;
    double gamma = 0.0;
    double gamma_upper = 0.0;
};

inline constexpr double kHermTol = 1e-12;

FourierHamiltonian from_components(double omega, const std::map<int, Mat>& components,
                                   const Profile& profile);

Mat evaluate_at(const FourierHamiltonian& H, double t);

using MatrixSignal = std::function<Mat(double)>;

// Trapezoidal Fourier analysis of a periodic signal. Modes beyond m_cut are dropped.
// Throws QuadratureResidual when the band-limited reconstruction misses the signal
// on the quadrature nodes by more than tol.
FourierHamiltonian fourier_from_signal(const MatrixSignal& signal, double omega, int m_cut,
                                       int n_quad, double tol = 1e-8,
                                       std::optional<Profile> profile = std::nullopt);

EnergyScales energy_scales(const FourierHamiltonian& H,
                           const std::optional<std::map<int, double>>& alphas = std::nullopt,
                           int n_grid = 256);

}  // namespace fqs
