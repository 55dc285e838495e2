#include <doctest.h>

#include <cmath>

#include "fqs/bounds.hpp"
#include "fqs/presets.hpp"
#include "fqs/propagator.hpp"
#include "fqs/sambe.hpp"

using namespace fqs;

namespace {

double maxdiff(const Mat& a, const Mat& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("index arithmetic on D^L") {
    SambeSpace sp{4, 2};
    CHECK(sp.lo() == -3);
    CHECK(sp.hi() == 4);
    CHECK(sp.dim() == 16);
    CHECK(sp.slot(-3) == 0);
    CHECK(sp.label(7) == 4);
    CHECK(oplus(4, 1, 4) == -3);
    CHECK(ominus(-3, 1, 4) == 4);
    for (int l = -3; l <= 4; ++l)
        for (int m = -6; m <= 6; ++m) CHECK(ominus(oplus(l, m, 4), m, 4) == l);
}

TEST_CASE("effective operator block layout at L = 1") {
    const auto m = driven_qubit();
    const auto op = build_effective(m.H, 1);
    CHECK(op.space.dim() == 4);
    const Mat h0 = m.H.component(0);
    CHECK(maxdiff(op.block(0, 0), h0) < 1e-15);
    CHECK(maxdiff(op.block(1, 1), h0 - Mat::Identity(2, 2)) < 1e-15);
    CHECK(maxdiff(op.block(0, 1), m.H.component(-1)) < 1e-15);
    CHECK(maxdiff(op.block(1, 0), m.H.component(1)) < 1e-15);
    CHECK(hermiticity_defect(op.dense()) < 1e-15);
}

TEST_CASE("linear potential is the diagonal l omega") {
    const auto lp = build_linear_potential(2, 1.0, 1);
    const Mat d = lp.dense();
    CHECK(maxdiff(d, Mat(d.diagonal().asDiagonal())) == 0.0);
    // (omega/2) sum_l (1 - 2[l' < l]) = l' omega
    for (int l = -1; l <= 2; ++l) CHECK(d(l + 1, l + 1).real() == doctest::Approx(double(l)));
    CHECK(std::abs(d.trace() - 2.0) < 1e-12);
}

TEST_CASE("PBC operator equals wrapped couplings minus the linear potential") {
    const auto m = driven_qubit();
    CHECK_THROWS_AS(build_effective_pbc(m.H, 1), Error);
    try {
        build_effective_pbc(m.H, 1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LTooSmall);
    }
    const int L = 3;
    const auto pbc = build_effective_pbc(m.H, L);
    Mat ref = Mat::Zero(pbc.space.dim(), pbc.space.dim());
    for (const auto& [k, h] : m.H.components()) ref += kron(adder(k, L), h);
    ref -= build_linear_potential(L, m.H.omega(), 2).dense();
    CHECK(maxdiff(pbc.dense(), ref) < 1e-14);
    // away from the wrap the PBC and open operators agree
    const auto open = build_effective(m.H, L);
    for (int l = -1; l <= 2; ++l) CHECK(maxdiff(pbc.block(l, l), open.block(l, l)) < 1e-14);
}

TEST_CASE("adder shifts labels cyclically") {
    const Mat a = adder(1, 2);
    CHECK(unitarity_defect(a) < 1e-15);
    const SambeSpace sp{2, 1};
    for (int l = -1; l <= 2; ++l) CHECK(std::abs(a(sp.slot(oplus(l, 1, 2)), sp.slot(l)) - 1.0) < 1e-15);
}

TEST_CASE("truncated quasienergies reproduce the monodromy spectrum") {
    const auto m = driven_qubit();
    const auto qe = quasienergies(build_effective(m.H, 40), m.H.omega(), true);
    const auto mono = monodromy_quasienergies(m.H, 1e-12);
    REQUIRE(!qe.empty());
    for (double e : mono) {
        double best = 1e9;
        for (const auto& q : qe) {
            const double d = std::abs(q.value - e);
            best = std::min(best, std::min(d, m.H.omega() - d));
        }
        CHECK(best < 1e-6);
    }
    CHECK(fold_quasienergy(0.75, 1.0) == doctest::Approx(-0.25));
    CHECK(fold_quasienergy(-0.5, 1.0) == doctest::Approx(-0.5));
}

TEST_CASE("choose_l_max satisfies the error condition") {
    for (double gt : {0.1, 0.5, 1.0, 2.0, 5.0})
        for (double eps : {1e-2, 1e-6, 1e-10})
            for (int mm : {1, 2}) {
                const int lm = choose_l_max(gt, 1.0, mm, eps).l_max;
                CHECK(lm > mm);
                CHECK(truncation_error_condition(lm, gt, mm) <= eps);
            }
    CHECK(choose_l_max(0.0, 1.0, 1, 1e-3).l_max == 2);
    CHECK_THROWS_AS(choose_l_max(1.0, 1.0, 1, 0.0), Error);
    CHECK_THROWS_AS(choose_l_max(1.0, 1.0, 1, 1.0), Error);
    CHECK(choose_l_max(1.0, 1.0, 1, 1e-6).l_max > choose_l_max(1.0, 1.0, 1, 1e-3).l_max);
    CHECK(choose_l_max_exp(1.0, 1.0, 2.0, 1e-6).l_max > choose_l_max_exp(1.0, 1.0, 1.0, 1e-6).l_max);
}

TEST_CASE("decay constants at zeta = 1") {
    const auto c = decay_constants(1.0);
    CHECK(c.zeta_prime == doctest::Approx(std::exp(1.0)));
    CHECK(c.beta == doctest::Approx(1.58198).epsilon(1e-5));
}
