#include <doctest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "fqs/amplification.hpp"
#include "fqs/presets.hpp"
#include "fqs/sweeps.hpp"

using namespace fqs;

namespace {

double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

FourierHamiltonian undriven() {
    std::map<int, Mat> c{{0, 0.4 * pauli_z() + 0.3 * pauli_x()}};
    return from_components(1.0, c, FiniteProfile{0});
}

}  // namespace

TEST_CASE("u_ini prepares the uniform label state") {
    const Mat u = u_ini(1, 1);
    CHECK(unitarity_defect(u) < 1e-15);
    CHECK(std::abs(u(0, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(u(1, 0) - 1.0 / std::sqrt(2.0)) < 1e-15);

    const SambeSpace outer{8, 1}, inner{2, 1};
    const Mat v = u_ini(2, 8);
    CHECK(unitarity_defect(v) < 1e-14);
    for (int l = outer.lo(); l <= outer.hi(); ++l) {
        const double want = inner.contains(l) ? 0.5 : 0.0;
        CHECK(std::abs(v(outer.slot(l), outer.slot(0)) - want) < 1e-15);
    }
    CHECK_THROWS_AS(u_ini(3, 2), Error);
}

TEST_CASE("reflection about the zero label") {
    for (int L : {1, 2, 5})
        for (int d : {1, 2}) {
            const Mat r = reflection(L, d);
            CHECK(maxdiff(r * r, Mat::Identity(r.rows(), r.cols())) == 0.0);
            CHECK(std::abs(r.trace() - double(d * (2 - 2 * L))) < 1e-15);
        }
}

TEST_CASE("without a drive amp1 is exactly half the evolution and amp2 restores it") {
    const auto H = undriven();
    const double t = 1.3;
    const Mat exact = Mat((-I1 * t * H.component(0)).exp());
    for (bool pbc : {false, true}) {
        const auto a1 = amp1(H, 3, t, pbc);
        CHECK(maxdiff(a1.block00(), 0.5 * exact) < 1e-13);
        const auto a2 = oblivious_amplify(a1);
        CHECK(maxdiff(a2.block00(), exact) < 1e-13);
        CHECK(a2.amp1_queries == 3 * a1.amp1_queries);
    }
}

TEST_CASE("circuits are unitary and adjoint inverts them") {
    const auto m = driven_qubit();
    const auto c = amp2(m.H, 2, 0.5, true);
    const Mat u = c.total();
    CHECK(unitarity_defect(u) < 1e-12);
    CHECK(maxdiff(c.adjoint().total(), u.adjoint()) < 1e-12);
    const Mat cols = c.apply_to_zero();
    CHECK(cols.rows() == c.space.dim());
    CHECK(cols.cols() == 2);
    CHECK(maxdiff(c.apply_adjoint(cols).block(c.space.offset(0), 0, 2, 2), Mat::Identity(2, 2)) < 1e-12);
}

TEST_CASE("success probabilities climb the ladder") {
    const auto m = driven_qubit();
    const double t = 1.0;
    const int lm = choose_l_max(1.0, t, 1, 1e-6).l_max;
    const double p0 = 1.0 / (2.0 * lm);
    CHECK(success_probability(naive_circuit(m.H, lm, t), m.psi0) == doctest::Approx(p0).epsilon(1e-4));
    const auto a1 = amp1(m.H, lm, t, true);
    CHECK(std::abs(success_probability(a1, m.psi0) - 0.25) < 1e-5);
    CHECK(success_probability(oblivious_amplify(a1), m.psi0) > 1.0 - 1e-5);

    const auto ladder = iterated_amplification(m.H, lm, t, 3, m.psi0);
    const double theta = std::asin(std::sqrt(p0));
    for (int p = 0; p <= 3; ++p) CHECK(std::abs(ladder[p] - std::pow(std::sin((2 * p + 1) * theta), 2)) < 1e-4);
}

TEST_CASE("sampled success probability is seeded and unbiased") {
    const auto m = driven_qubit();
    const auto c = amp1(m.H, 6, 0.5, true);
    const double p = success_probability(c, m.psi0);
    const auto a = success_probability_sampled(c, m.psi0, 20000, 11);
    const auto b = success_probability_sampled(c, m.psi0, 20000, 11);
    CHECK(a.successes == b.successes);
    CHECK(std::abs(a.estimate - p) < 5.0 * std::sqrt(p * (1 - p) / 20000));
    CHECK_THROWS_AS(success_probability_sampled(c, m.psi0, 0, 1), Error);
}

TEST_CASE("adiabatic pipeline") {
    const auto m = driven_qubit();
    const auto r0 = run_adiabatic(m.H, m.psi0, 0.0, 1e-3);
    CHECK(r0.diag.fidelity == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = run_adiabatic(m.H, m.psi0, 1.5, 1e-4);
    CHECK(r.diag.deviation < 1e-4);
    CHECK(r.diag.fidelity > 1.0 - 1e-8);
    CHECK(r.diag.success_probability > 1.0 - 1e-4);
    CHECK(r.diag.sambe_dim == 2 * 4 * r.diag.l_max * 2);
    CHECK(r.diag.warnings.empty());
    CHECK(!run_adiabatic(m.H, m.psi0, 15.0, 1e-2).diag.warnings.empty());
    CHECK_THROWS_AS(run_adiabatic(m.H, m.psi0, 1.0, 0.0), Error);
    CHECK_THROWS_AS(run_adiabatic(m.H, Vec::Ones(2), 1.0, 1e-3), Error);
}

TEST_CASE("long-time pipeline counts periods") {
    const auto m = driven_qubit();
    const double T = m.H.period();
    const auto r1 = run_longtime(m.H, m.psi0, T, 1e-4);
    CHECK(r1.diag.periods == 1);
    CHECK(r1.diag.remainder == 0.0);
    CHECK(r1.diag.deviation < 1e-4);
    const auto r3 = run_longtime(m.H, m.psi0, 3 * T, 1e-4);
    CHECK(r3.diag.periods == 3);
    CHECK(r3.diag.deviation < 1e-4);
    const auto rh = run_longtime(m.H, m.psi0, 2.5 * T, 1e-3);
    CHECK(rh.diag.periods == 2);
    CHECK(rh.diag.remainder == doctest::Approx(0.5));
    CHECK(rh.diag.deviation < 1e-3);
    CHECK_THROWS_AS(run_longtime(m.H, m.psi0, 0.5 * T, 1e-3), Error);
    // the per-period budget shrinks as eps / n
    CHECK(longtime_columns(m.H, 2 * T, 1e-3).l_max <= longtime_columns(m.H, 8 * T, 1e-3).l_max);
}

TEST_CASE("exponentially decaying drive runs through the pipeline") {
    const auto g = gaussian_packet();
    const auto r = run_adiabatic(g.H, g.psi0, 0.5, 1e-3);
    CHECK(r.diag.deviation < 1e-3);
}
