#include <doctest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "fqs/bounds.hpp"
#include "fqs/presets.hpp"
#include "fqs/propagator.hpp"

using namespace fqs;

namespace {

double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("power over factorial") {
    CHECK(power_over_factorial(0.0, 0) == 1.0);
    CHECK(power_over_factorial(0.0, 3) == 0.0);
    CHECK(power_over_factorial(2.0, 3) == doctest::Approx(8.0 / 6.0));
    CHECK(power_over_factorial(10.0, 200) == doctest::Approx(std::exp(200 * std::log(10.0) - std::lgamma(201.0))));
}

TEST_CASE("finite-range transition bound") {
    const auto b = lr_bound(4, 1.0, 0.5, 1);
    CHECK(b.n == 4);
    CHECK(b.value == doctest::Approx(0.0052083).epsilon(1e-4));
    CHECK(b.premise_ok);
    CHECK_FALSE(lr_bound(1, 1.0, 1.0, 1).premise_ok);
    // two-step drive: n = ceil(dl / m_max)
    CHECK(lr_bound(5, 1.0, 0.5, 2).n == 3);
    // n! >= 2 (n/e)^n makes the relaxed form an upper bound
    for (int dl = 2; dl <= 30; ++dl) {
        const auto r = lr_bound(dl, 1.0, 0.7, 1);
        CHECK(r.value <= r.relaxed * (1.0 + 1e-12));
    }
}

TEST_CASE("truncation bound") {
    const auto b = truncation_bound(5, 1.0, 1.0, 1);
    CHECK(b.n == 5);
    CHECK(b.value == doctest::Approx(0.16667).epsilon(1e-4));
    CHECK(b.edge_part + b.interior_part == doctest::Approx(b.value));
    CHECK(truncation_bound(12, 1.0, 1.0, 1).value < truncation_bound(11, 1.0, 1.0, 1).value);
    CHECK(truncation_error_condition(1, 1.0, 1) == std::numeric_limits<double>::infinity());
}

TEST_CASE("threshold for x^-x decay") {
    CHECK(prop1_threshold(1.0, 1e-6) == doctest::Approx(22.42).epsilon(1e-3));
    for (double kappa : {0.5, 1.0, 3.0})
        for (double eta : {1e-3, 1e-8}) {
            const double x = prop1_threshold(kappa, eta);
            CHECK(std::pow(kappa / x, x) <= eta);
        }
    CHECK_THROWS_AS(prop1_threshold(0.0, 0.1), Error);
    CHECK_THROWS_AS(prop1_threshold(1.0, 1.0), Error);
}

TEST_CASE("exponential-decay constants and bounds") {
    const auto c = decay_constants(1.0);
    CHECK(c.beta == doctest::Approx(1.0 / (1.0 - std::exp(-1.0))));
    CHECK(lr_bound_exp(20, 1.0, 1.0, 0.5) < lr_bound_exp(10, 1.0, 1.0, 0.5));
    CHECK(truncation_bound_exp(20, 1.0, 1.0, 0.5) < truncation_bound_exp(10, 1.0, 1.0, 0.5));
}

TEST_CASE("symmetry bound domain") {
    CHECK(symmetry_order(0, 0, 4, 1) == 30);
    CHECK(symmetry_bound(0, 0, 4, 1.0, 1.0, 1) == doctest::Approx(8.0 * std::exp(-std::lgamma(31.0))));
    CHECK_THROWS_AS(symmetry_bound(0, 5, 4, 1.0, 1.0, 1), Error);
    CHECK_THROWS_AS(symmetry_bound(17, 0, 4, 1.0, 1.0, 1), Error);
    CHECK(symmetry_order(16, 4, 4, 1) == 10);
}

TEST_CASE("Stirling lower bound") {
    for (int n = 0; n <= 170; ++n) CHECK(stirling_holds(n));
}

TEST_CASE("resource table") {
    ResourceParams p;
    p.alpha = 100.0;
    p.omega = 1.0;
    p.t = 100.0;
    p.epsilon = 1e-3;
    const auto rows = resource_table(p);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].regime == ResourceRegime::Trotter);
    CHECK(rows[4].display_only);
    double lt = 0.0, dy = 0.0;
    for (const auto& r : rows) {
        CHECK(!r.query_expr.empty());
        CHECK(!r.ancilla_expr.empty());
        CHECK(r.query_complexity > 0.0);
        if (r.regime == ResourceRegime::LongTime) lt = r.query_complexity;
        if (r.regime == ResourceRegime::TruncatedDyson) dy = r.query_complexity;
    }
    CHECK(lt < dy);
    const auto q = resources(ResourceRegime::Qubitization, p);
    CHECK(q.query_complexity == doctest::Approx(1e4 + std::log(1e3) / std::log(std::numbers::e + std::log(1e3) / 1e4)));

    ResourceParams a;
    a.alpha = 1.0;
    a.t = 1.0;
    a.epsilon = 1e-3;
    const double q3 = resources(ResourceRegime::Adiabatic, a).query_complexity;
    a.epsilon = 1e-6;
    const double q6 = resources(ResourceRegime::Adiabatic, a).query_complexity;
    CHECK(q6 > q3);
    CHECK(q6 - q3 <= 2.0 * std::log(1e3));

    ResourceParams bad = p;
    bad.epsilon = 2.0;
    CHECK_THROWS_AS(resources(ResourceRegime::Adiabatic, bad), Error);
    bad = p;
    bad.alpha = 0.0;
    CHECK_THROWS_AS(resources(ResourceRegime::Trotter, bad), Error);
}

TEST_CASE("Floquet-Magnus first-order term") {
    std::map<int, Mat> st{{0, pauli_z()}};
    const auto s = from_components(1.0, st, FiniteProfile{0});
    CHECK(floquet_magnus_first(s).cwiseAbs().maxCoeff() < 1e-15);

    // a cosine drive starting at t = 0 has no first-order term
    const auto dq = driven_qubit(1.0, 1.0, 4.0);
    CHECK(floquet_magnus_first(dq.H).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(floquet_magnus_first_quadrature(dq.H).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(floquet_magnus(dq.H, 0).lambda == doctest::Approx(1.5));

    const auto m = adiabatic_prep(1.0, 1.0, 10.0);
    const Mat cf = floquet_magnus_first(m.H);
    const Mat qd = floquet_magnus_first_quadrature(m.H);
    CHECK(cf.cwiseAbs().maxCoeff() > 1e-3);
    CHECK(maxdiff(cf, qd) < 1e-8);
    CHECK(hermiticity_defect(cf) < 1e-14);

    // order 1 tracks the one-period propagator more closely than order 0
    const Mat u = exact_propagator(m.H, m.H.period(), 1e-12);
    const double T = m.H.period();
    const auto f0 = floquet_magnus(m.H, 0), f1 = floquet_magnus(m.H, 1);
    const double e0 = spectral_norm(u - Mat((-I1 * T * f0.H_FM).exp()));
    const double e1 = spectral_norm(u - Mat((-I1 * T * f1.H_FM).exp()));
    CHECK(e1 < e0);
    CHECK_THROWS_AS(floquet_magnus(m.H, 2), Error);
}
