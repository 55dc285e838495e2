#include "fqs/hamiltonian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace fqs {

double FourierHamiltonian::period() const { return 2.0 * std::numbers::pi / omega_; }

int FourierHamiltonian::m_max() const {
    if (auto* f = std::get_if<FiniteProfile>(&profile_)) return f->m_max;
    int m = 0;
    for (const auto& [k, _] : comps_) m = std::max(m, std::abs(k));
    return m;
}

const Mat& FourierHamiltonian::component(int m) const {
    auto it = comps_.find(m);
    return it == comps_.end() ? zero_ : it->second;
}

std::vector<int> FourierHamiltonian::modes() const {
    std::vector<int> out;
    for (const auto& [m, _] : comps_) out.push_back(m);
    return out;
}

double LCU::alpha() const {
    double a = 0.0;
    for (const auto& t : terms) a += t.coef;
    return a;
}

Mat LCU::reconstruct() const {
    if (terms.empty()) return Mat();
    Mat out = Mat::Zero(terms.front().unitary.rows(), terms.front().unitary.cols());
    for (const auto& t : terms) out += t.coef * t.unitary;
    return out;
}

std::map<int, double> mode_alphas(const ModeLCU& lcu) {
    std::map<int, double> out;
    for (const auto& [m, l] : lcu) out[m] = l.alpha();
    return out;
}

FourierHamiltonian from_components(double omega, const std::map<int, Mat>& components,
                                   const Profile& profile) {
    if (!(omega > 0.0)) throw Error(ErrorCode::InvalidConfig, "omega must be positive");
    if (components.empty()) throw Error(ErrorCode::InvalidConfig, "no Fourier components");
    const Eigen::Index d = components.begin()->second.rows();
    if (d < 2) throw Error(ErrorCode::InvalidConfig, "system dimension must be >= 2");
    for (const auto& [m, h] : components)
        if (h.rows() != d || h.cols() != d)
            throw Error(ErrorCode::InvalidConfig, "component " + std::to_string(m) + " has wrong shape");

    std::map<int, Mat> comps = components;
    for (const auto& [m, h] : components) {
        if (m == 0) {
            if (hermiticity_defect(h) > kHermTol)
                throw Error(ErrorCode::NonHermitianPair, "H_0 is not Hermitian");
            continue;
        }
        auto it = components.find(-m);
        if (it == components.end()) {
            comps[-m] = h.adjoint();
        } else if ((it->second - h.adjoint()).cwiseAbs().maxCoeff() > kHermTol) {
            throw Error(ErrorCode::NonHermitianPair,
                        "H_{" + std::to_string(-m) + "} != H_{" + std::to_string(m) + "}^dagger");
        }
    }
    if (!comps.count(0)) comps[0] = Mat::Zero(d, d);

    if (auto* f = std::get_if<FiniteProfile>(&profile)) {
        if (f->m_max < 0) throw Error(ErrorCode::InvalidConfig, "m_max must be >= 0");
        for (const auto& [m, h] : comps)
            if (std::abs(m) > f->m_max && h.cwiseAbs().maxCoeff() > kHermTol)
                throw Error(ErrorCode::ProfileViolation,
                            "component " + std::to_string(m) + " beyond m_max");
        for (auto it = comps.begin(); it != comps.end();)
            it = std::abs(it->first) > f->m_max ? comps.erase(it) : std::next(it);
    } else {
        const auto& e = std::get<ExpDecayProfile>(profile);
        if (!(e.h > 0.0) || !(e.zeta > 0.0))
            throw Error(ErrorCode::InvalidConfig, "decay profile needs h, zeta > 0");
        for (const auto& [m, h] : comps) {
            if (m == 0) continue;
            double lim = e.h * std::exp(-std::abs(m) / e.zeta);
            if (spectral_norm(h) > lim * (1.0 + 1e-12) + 1e-15) {
                std::ostringstream os;
                os << "||H_" << m << "|| = " << spectral_norm(h) << " exceeds " << lim;
                throw Error(ErrorCode::ProfileViolation, os.str());
            }
        }
    }

    FourierHamiltonian H;
    H.omega_ = omega;
    H.dim_ = static_cast<int>(d);
    H.comps_ = std::move(comps);
    H.profile_ = profile;
    H.zero_ = Mat::Zero(d, d);
    return H;
}

Mat evaluate_at(const FourierHamiltonian& H, double t) {
    Mat out = Mat::Zero(H.dim(), H.dim());
    for (const auto& [m, h] : H.components())
        out += std::exp(-I1 * (double(m) * H.omega() * t)) * h;
    return out;
}

FourierHamiltonian fourier_from_signal(const MatrixSignal& signal, double omega, int m_cut,
                                       int n_quad, double tol, std::optional<Profile> profile) {
    if (m_cut < 0 || n_quad < 4 * std::max(m_cut, 1))
        throw Error(ErrorCode::InvalidConfig, "n_quad must be >= 4 m_cut");
    const double T = 2.0 * std::numbers::pi / omega;
    std::vector<Mat> samples(n_quad);
    for (int k = 0; k < n_quad; ++k) samples[k] = signal(T * k / n_quad);
    const Eigen::Index d = samples[0].rows();

    std::map<int, Mat> raw;
    for (int m = -m_cut; m <= m_cut; ++m) {
        Mat acc = Mat::Zero(d, d);
        for (int k = 0; k < n_quad; ++k)
            acc += std::exp(I1 * (2.0 * std::numbers::pi * m * k / n_quad)) * samples[k];
        raw[m] = acc / double(n_quad);
    }
    std::map<int, Mat> comps;
    for (int m = -m_cut; m <= m_cut; ++m)
        comps[m] = 0.5 * (raw[m] + raw[-m].adjoint());

    double resid = 0.0;
    for (int k = 0; k < n_quad; ++k) {
        Mat rec = Mat::Zero(d, d);
        for (const auto& [m, h] : comps)
            rec += std::exp(-I1 * (2.0 * std::numbers::pi * m * k / n_quad)) * h;
        resid = std::max(resid, (rec - samples[k]).cwiseAbs().maxCoeff());
    }
    if (resid > tol) {
        std::ostringstream os;
        os << "reconstruction residual " << resid << " exceeds " << tol;
        throw Error(ErrorCode::QuadratureResidual, os.str());
    }
    return from_components(omega, comps, profile.value_or(FiniteProfile{m_cut}));
}

EnergyScales energy_scales(const FourierHamiltonian& H,
                           const std::optional<std::map<int, double>>& alphas, int n_grid) {
    if (n_grid < 16) throw Error(ErrorCode::InvalidConfig, "n_grid must be >= 16");
    EnergyScales s;
    const Mat& h0 = H.component(0);
    for (int k = 0; k < n_grid; ++k) {
        double t = H.period() * k / n_grid;
        s.gamma = std::max(s.gamma, spectral_norm(evaluate_at(H, t) - h0));
    }
    for (const auto& [m, h] : H.components()) {
        double nrm = spectral_norm(h);
        if (m != 0) s.gamma_upper += nrm;
        double a = nrm;
        if (alphas) {
            auto it = alphas->find(m);
            if (it != alphas->end()) a = it->second;
        }
        s.alpha += a;
    }
    return s;
}

}  // namespace fqs
