#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fqs/hamiltonian.hpp"
#include "fqs/presets.hpp"

using namespace fqs;

namespace {

double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("driven qubit components and pair completion") {
    const auto m = driven_qubit();
    CHECK(m.H.dim() == 2);
    CHECK(m.H.m_max() == 1);
    CHECK(maxdiff(m.H.component(-1), 0.5 * pauli_x()) < 1e-15);
    CHECK(m.H.component(5).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("non-Hermitian pair is rejected") {
    std::map<int, Mat> c{{1, 0.5 * I1 * pauli_x()}, {-1, 0.5 * I1 * pauli_x()}};
    try {
        from_components(1.0, c, FiniteProfile{1});
        FAIL("expected NonHermitianPair");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonHermitianPair);
    }
}

TEST_CASE("profile violations") {
    std::map<int, Mat> c{{0, pauli_z()}, {2, pauli_x()}};
    CHECK_THROWS_AS(from_components(1.0, c, FiniteProfile{1}), Error);
    // ||H_2|| = 1 > 1 * e^-2
    CHECK_THROWS_AS(from_components(1.0, c, ExpDecayProfile{1.0, 1.0}), Error);
    CHECK_NOTHROW(from_components(1.0, c, ExpDecayProfile{std::exp(2.0), 1.0}));
}

TEST_CASE("evaluate_at on the driven qubit") {
    const auto m = driven_qubit();
    const Mat h0 = 0.5 * pauli_z() + pauli_x();
    CHECK(maxdiff(evaluate_at(m.H, 0.0), h0) < 1e-15);
    CHECK(maxdiff(evaluate_at(m.H, m.H.period()), h0) < 1e-12);
    CHECK(maxdiff(evaluate_at(m.H, m.H.period() / 4), 0.5 * pauli_z()) < 1e-12);
    for (double t : {0.1, 0.7, 2.3, 5.9}) {
        const Mat h = evaluate_at(m.H, t);
        CHECK(hermiticity_defect(h) < 1e-12);
        CHECK(maxdiff(evaluate_at(m.H, t + m.H.period()), h) < 1e-12);
    }
}

TEST_CASE("Hubbard preset is a valid pair and its LCU reproduces every mode") {
    const auto hb = hubbard2();
    CHECK(hb.model.H.dim() == 16);
    CHECK(maxdiff(hb.model.H.component(-1), hb.model.H.component(1).adjoint()) < 1e-15);
    for (const auto& [m, l] : hb.model.lcu) {
        CHECK(maxdiff(l.reconstruct(), hb.model.H.component(m)) < 1e-12);
        for (const auto& t : l.terms) CHECK(unitarity_defect(t.unitary) < 1e-12);
    }
    const auto al = mode_alphas(hb.model.lcu);
    CHECK(al.at(0) == doctest::Approx(8.0));
    CHECK(al.at(1) == doctest::Approx(2.0));
    CHECK(al.at(-1) == doctest::Approx(2.0));
    const auto s = energy_scales(hb.model.H, al);
    CHECK(s.alpha == doctest::Approx(12.0));
    CHECK(s.gamma == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("Hubbard with hopping: orbital energies come from the kinetic term") {
    Hubbard2Params p;
    p.eps_k = {0.5, 1.5};
    p.V = {1.0, 0.5};
    const auto hb = hubbard2(p);
    CHECK(maxdiff(hb.model.lcu.at(0).reconstruct(), hb.h0_direct) < 1e-12);
    // one-particle sector of the kinetic term carries exactly eps_k
    Eigen::SelfAdjointEigenSolver<Mat> es(hb.kinetic);
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + 16);
    CHECK(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x - 0.5) < 1e-12; }) >= 2);
    CHECK(std::count_if(ev.begin(), ev.end(), [](double x) { return std::abs(x - 1.5) < 1e-12; }) >= 2);
    CHECK(mode_alphas(hb.model.lcu).at(1) == doctest::Approx(1.5));
}

TEST_CASE("fourier_from_signal on simple signals") {
    auto cosx = [](double t) -> Mat { return std::cos(t) * pauli_x(); };
    const auto h = fourier_from_signal(cosx, 1.0, 1, 16);
    CHECK(maxdiff(h.component(1), 0.5 * pauli_x()) < 1e-14);
    CHECK(maxdiff(h.component(-1), 0.5 * pauli_x()) < 1e-14);
    CHECK(h.component(0).cwiseAbs().maxCoeff() < 1e-14);

    auto konst = [](double) -> Mat { return pauli_z(); };
    const auto k = fourier_from_signal(konst, 2.0, 3, 16);
    CHECK(maxdiff(k.component(0), pauli_z()) < 1e-14);
    for (int m : {1, 2, 3}) CHECK(k.component(m).cwiseAbs().maxCoeff() < 1e-14);

    auto band = [](double t) -> Mat { return std::cos(3 * t) * pauli_x(); };
    CHECK_THROWS_AS(fourier_from_signal(band, 1.0, 1, 16), Error);
}

TEST_CASE("Gaussian packet closed form matches quadrature") {
    GaussianPacketParams gp;
    const auto model = gaussian_packet(gp);
    auto signal = [&](double t) -> Mat {
        return 0.5 * gp.delta * pauli_z() + gaussian_packet_signal(t, gp) * pauli_x();
    };
    const auto q = fourier_from_signal(signal, gp.omega, 12, 256, 1e-8);
    for (int m = -gp.m_store; m <= gp.m_store; ++m)
        CHECK(maxdiff(q.component(m), model.H.component(m)) < 1e-10);
    CHECK(gaussian_packet_amplitude(1, 2, 1.0) == doctest::Approx(0.11877).epsilon(1e-4));
    CHECK(gaussian_packet_amplitude(2, 2, 1.0) == doctest::Approx(0.19940).epsilon(1e-4));
    CHECK(gaussian_packet_amplitude(3, 2, 1.0) == doctest::Approx(0.12098).epsilon(1e-4));
}

TEST_CASE("energy scales") {
    const auto m = driven_qubit();
    const auto s = energy_scales(m.H, mode_alphas(m.lcu));
    CHECK(s.gamma == doctest::Approx(1.0));
    CHECK(s.gamma_upper == doctest::Approx(1.0));
    CHECK(s.alpha == doctest::Approx(1.5));
    std::map<int, Mat> st{{0, pauli_z()}};
    CHECK(energy_scales(from_components(1.0, st, FiniteProfile{0})).gamma == 0.0);
    CHECK_THROWS_AS(energy_scales(m.H, std::nullopt, 8), Error);
    const auto a = adiabatic_prep();
    const auto sa = energy_scales(a.H);
    CHECK(sa.gamma <= sa.gamma_upper + 1e-12);
}
