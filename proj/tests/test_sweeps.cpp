#include <doctest.h>

#include <atomic>
#include <stdexcept>

#include "fqs/presets.hpp"
#include "fqs/sweeps.hpp"

using namespace fqs;

namespace {

void same_reports(const std::vector<BoundReport>& a, const std::vector<BoundReport>& b) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].name == b[i].name);
        CHECK(a[i].measured == b[i].measured);
        CHECK(a[i].bound == b[i].bound);
        CHECK(a[i].context == b[i].context);
    }
}

}  // namespace

TEST_CASE("for_each_index visits every index and rethrows") {
    set_threads(4);
    std::vector<std::atomic<int>> hits(100);
    for_each_index(100, Exec::Parallel, [&](int i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
    CHECK_THROWS_AS(for_each_index(10, Exec::Parallel, [](int i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    CHECK_THROWS_AS(for_each_index(10, Exec::Serial, [](int i) {
                        if (i == 3) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
}

TEST_CASE("serial and parallel sweeps agree") {
    set_threads(4);
    const auto m = driven_qubit();
    same_reports(truncation_sweep(m.H, {3, 5, 7}, {0.5, 1.0}, 1e-10, Exec::Serial),
                 truncation_sweep(m.H, {3, 5, 7}, {0.5, 1.0}, 1e-10, Exec::Parallel));
    same_reports(lieb_robinson_sweep(m.H, 8, {0.5, 1.0}, Exec::Serial),
                 lieb_robinson_sweep(m.H, 8, {0.5, 1.0}, Exec::Parallel));
    same_reports(symmetry_sweep(m.H, 3, 1.0, 2, Exec::Serial), symmetry_sweep(m.H, 3, 1.0, 2, Exec::Parallel));

    const auto pc = adiabatic_columns(m.H, 1.0, 1e-3);
    const auto states = random_states(2, 6, 5);
    CHECK(deviation_sweep(m.H, pc, 1.0, states, 1e-10, Exec::Serial) ==
          deviation_sweep(m.H, pc, 1.0, states, 1e-10, Exec::Parallel));
}

TEST_CASE("sweeps find no violations on the driven qubit") {
    const auto m = driven_qubit();
    for (const auto& r : truncation_sweep(m.H, {3, 6, 9, 12}, {0.5, 1.0, 2.0}, 1e-10)) CHECK(r.slack >= -1e-10);
    const auto lr = lieb_robinson_sweep(m.H, 10, {0.5, 1.0, 2.0});
    CHECK(!lr.empty());
    for (const auto& r : lr) {
        CHECK(r.premise_ok);
        CHECK(r.slack >= -kRoundoffFloor);
    }
    for (const auto& r : symmetry_sweep(m.H, 4, 1.0, 1)) CHECK(r.slack >= -kRoundoffFloor);
    const auto g = gaussian_packet();
    for (const auto& r : lieb_robinson_exp_sweep(g.H, 12, {0.5}, 8)) CHECK(r.slack >= -kRoundoffFloor);
}

TEST_CASE("random states are normalized and reproducible") {
    const auto a = random_states(4, 5, 42);
    const auto b = random_states(4, 5, 42);
    const auto c = random_states(4, 5, 43);
    REQUIRE(a.size() == 5);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i].norm() - 1.0) < 1e-14);
        CHECK(a[i] == b[i]);
    }
    CHECK(a[0] != c[0]);
}
