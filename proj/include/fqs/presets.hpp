#pragma once

#include <array>
#include <string>

#include "fqs/hamiltonian.hpp"

namespace fqs {

// A driven system together with an LCU for every stored Fourier mode.
struct Model {
    std::string name;
    FourierHamiltonian H;
    ModeLCU lcu;
    Vec psi0;  // default initial state
};

// (delta/2) sz + v cos(omega t) sx
Model driven_qubit(double delta = 1.0, double v = 1.0, double omega = 1.0);

struct Hubbard2Params {
    std::array<double, 2> eps_k{1.0, 1.0};  // bonding / antibonding orbital energies
    double U = 2.0;
    std::array<double, 2> V{1.0, 1.0};      // site potentials of the drive
    double omega = 2.0 * 3.14159265358979323846;
};

struct Hubbard2 {
    Model model;
    Mat h0_direct;   // kinetic + interaction assembled from fermion operators
    Mat kinetic;
    Mat interaction;
    Mat drive;       // sum_x,s V_x n_xs
};

// Two-site Hubbard chain, Jordan-Wigner on modes q = 2 x + s (s = 0 up, 1 down).
Hubbard2 hubbard2(const Hubbard2Params& p = {});

// Jordan-Wigner annihilation operator for mode q of n_modes; qubit 0 is most significant.
Mat jw_annihilation(int q, int n_modes);

// H(t) = d0 sz - sin(omega t) (d0 sz - d1 sx); equals d1 sx at t = T/4.
Model adiabatic_prep(double d0 = 1.0, double d1 = 1.0, double omega = 1.0);

struct GaussianPacketParams {
    int p = 2;
    double omega = 1.0;
    double omega_tau = 1.0;
    double delta = 1.0;
    int m_store = 8;
};

// Coefficient of the m-th Fourier mode of the pulse train.
double gaussian_packet_amplitude(int m, int p, double omega_tau);
// sum_n exp(-(t - (n + 1/2) T)^2 / 2 tau^2) sin(p omega t)
double gaussian_packet_signal(double t, const GaussianPacketParams& gp);

// (delta/2) sz + f(t) sx with the pulse train above; exponential-decay profile with zeta = 1.
Model gaussian_packet(const GaussianPacketParams& gp = {});

}  // namespace fqs
