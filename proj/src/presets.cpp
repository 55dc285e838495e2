#include "fqs/presets.hpp"

#include <cmath>
#include <numbers>

namespace fqs {

namespace {

// |c| U with the sign folded into the unitary
LCUTerm term(cd c, const Mat& u) {
    const double a = std::abs(c);
    if (a == 0.0) return {0.0, u};
    return {a, (c / a) * u};
}

void push(LCU& l, cd c, const Mat& u) {
    if (std::abs(c) > 0.0) l.terms.push_back(term(c, u));
}

}  // namespace

Model driven_qubit(double delta, double v, double omega) {
    Model m;
    m.name = "DrivenQubit";
    std::map<int, Mat> comps{{0, 0.5 * delta * pauli_z()}, {1, 0.5 * v * pauli_x()}};
    m.H = from_components(omega, comps, FiniteProfile{1});
    push(m.lcu[0], 0.5 * delta, pauli_z());
    for (int s : {-1, 1}) push(m.lcu[s], 0.5 * v, pauli_x());
    m.psi0 = Vec::Zero(2);
    m.psi0(0) = 1.0;
    return m;
}

Mat jw_annihilation(int q, int n_modes) {
    Mat a = Mat::Zero(2, 2);
    a(0, 1) = 1.0;  // |1> occupied -> |0>
    Mat out = Mat::Identity(1, 1);
    for (int k = 0; k < n_modes; ++k) {
        const Mat f = k < q ? pauli_z() : (k == q ? a : Mat(Mat::Identity(2, 2)));
        out = kron(out, f);
    }
    return out;
}

Hubbard2 hubbard2(const Hubbard2Params& p) {
    constexpr int kModes = 4;
    const int dim = 1 << kModes;
    std::array<Mat, kModes> c;
    for (int q = 0; q < kModes; ++q) c[q] = jw_annihilation(q, kModes);
    auto mode = [](int x, int s) { return 2 * x + s; };
    auto number = [&](int q) -> Mat { return c[q].adjoint() * c[q]; };
    const Mat id = Mat::Identity(dim, dim);

    // single-particle kinetic matrix with orbitals (1, 1)/sqrt2 and (1, -1)/sqrt2
    RMat phi(2, 2);
    phi << 1.0, 1.0, 1.0, -1.0;
    phi /= std::sqrt(2.0);
    RMat h_sp = phi * RVec(Eigen::Map<const RVec>(p.eps_k.data(), 2)).asDiagonal() * phi.transpose();

    Hubbard2 out;
    out.kinetic = Mat::Zero(dim, dim);
    out.interaction = Mat::Zero(dim, dim);
    out.drive = Mat::Zero(dim, dim);
    for (int s = 0; s < 2; ++s)
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                out.kinetic += h_sp(x, y) * c[mode(x, s)].adjoint() * c[mode(y, s)];
    for (int x = 0; x < 2; ++x) {
        out.interaction += p.U * number(mode(x, 0)) * number(mode(x, 1));
        for (int s = 0; s < 2; ++s) out.drive += p.V[x] * number(mode(x, s));
    }
    out.h0_direct = out.kinetic + out.interaction;

    // orbital number operators n_ks from the diagonalized hopping
    auto orbital_number = [&](int k, int s) -> Mat {
        Mat n = Mat::Zero(dim, dim);
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y)
                n += phi(x, k) * phi(y, k) * c[mode(x, s)].adjoint() * c[mode(y, s)];
        return n;
    };

    Model& m = out.model;
    m.name = "Hubbard2";
    const double n_sites = 2.0;
    LCU& l0 = m.lcu[0];
    push(l0, p.eps_k[0] + p.eps_k[1] + n_sites * p.U / 4.0, id);
    for (int k = 0; k < 2; ++k)
        for (int s = 0; s < 2; ++s) push(l0, p.eps_k[k] / 2.0, 2.0 * orbital_number(k, s) - id);
    for (int x = 0; x < 2; ++x) {
        const Mat zu = 2.0 * number(mode(x, 0)) - id, zd = 2.0 * number(mode(x, 1)) - id;
        push(l0, p.U / 4.0, zu);
        push(l0, p.U / 4.0, zd);
        push(l0, p.U / 4.0, zu * zd);
    }
    // H_{+-1} = +-i sum_x,s (V_x / 2) n_xs
    for (int sgn : {-1, 1}) {
        LCU& l = m.lcu[sgn];
        push(l, double(sgn) * I1 * (p.V[0] + p.V[1]) / 2.0, id);
        for (int x = 0; x < 2; ++x)
            for (int s = 0; s < 2; ++s) push(l, double(sgn) * I1 * p.V[x] / 4.0, 2.0 * number(mode(x, s)) - id);
    }
    std::map<int, Mat> comps{{0, out.h0_direct}, {1, 0.5 * I1 * out.drive}};
    m.H = from_components(p.omega, comps, FiniteProfile{1});
    // up electron on site 0, down electron on site 1
    m.psi0 = Vec::Zero(dim);
    m.psi0(0b1001) = 1.0;
    return out;
}

Model adiabatic_prep(double d0, double d1, double omega) {
    Model m;
    m.name = "AdiabaticPrep";
    const Mat h0 = d0 * pauli_z(), h1 = d1 * pauli_x();
    std::map<int, Mat> comps{{0, h0}, {1, -0.5 * I1 * (h0 - h1)}};
    m.H = from_components(omega, comps, FiniteProfile{1});
    push(m.lcu[0], d0, pauli_z());
    for (int sgn : {-1, 1}) {
        // H_{+-1} = -+i (h0 - h1) / 2
        push(m.lcu[sgn], -double(sgn) * I1 * d0 / 2.0, pauli_z());
        push(m.lcu[sgn], double(sgn) * I1 * d1 / 2.0, pauli_x());
    }
    // ground state of d0 sz
    m.psi0 = Vec::Zero(2);
    m.psi0(d0 >= 0.0 ? 1 : 0) = 1.0;
    return m;
}

double gaussian_packet_amplitude(int m, int p, double omega_tau) {
    const double x = omega_tau * omega_tau;
    return omega_tau / std::sqrt(2.0 * std::numbers::pi) *
           std::exp(-(double(p) * p + double(m) * m) * x / 2.0) * std::sinh(p * std::abs(m) * x);
}

double gaussian_packet_signal(double t, const GaussianPacketParams& gp) {
    const double T = 2.0 * std::numbers::pi / gp.omega;
    const double tau = gp.omega_tau / gp.omega;
    const int n0 = static_cast<int>(std::floor(t / T));
    double s = 0.0;
    for (int n = n0 - 8; n <= n0 + 8; ++n) {
        const double u = t - (n + 0.5) * T;
        s += std::exp(-u * u / (2.0 * tau * tau));
    }
    return s * std::sin(gp.p * gp.omega * t);
}

Model gaussian_packet(const GaussianPacketParams& gp) {
    if (gp.p < 1 || gp.m_store < 1 || !(gp.omega_tau > 0.0))
        throw Error(ErrorCode::InvalidConfig, "gaussian packet needs p >= 1, m_store >= 1, omega tau > 0");
    Model m;
    m.name = "GaussianPacket";
    const Mat D = pauli_x();
    std::map<int, Mat> comps{{0, 0.5 * gp.delta * pauli_z()}};
    push(m.lcu[0], 0.5 * gp.delta, pauli_z());
    double h = 0.0;
    for (int k = 1; k <= gp.m_store; ++k) {
        const double a = gaussian_packet_amplitude(k, gp.p, gp.omega_tau);
        for (int sgn : {-1, 1}) {
            const int mm = sgn * k;
            const cd c = I1 * ((gp.p + mm) % 2 == 0 ? 1.0 : -1.0) * double(sgn) * a;
            if (sgn > 0) comps[mm] = c * D;
            push(m.lcu[mm], c, D);
        }
        h = std::max(h, a * std::exp(double(k)) * spectral_norm(D));
    }
    m.H = from_components(gp.omega, comps, ExpDecayProfile{h * (1.0 + 1e-12), 1.0});
    m.psi0 = Vec::Zero(2);
    m.psi0(0) = 1.0;
    return m;
}

}  // namespace fqs
