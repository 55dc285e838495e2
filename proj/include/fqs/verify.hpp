#pragma once

#include <string>
#include <vector>

#include "fqs/config.hpp"
#include "fqs/sweeps.hpp"

namespace fqs {

struct SuiteRow {
    std::string suite;
    BoundReport report;
};

inline constexpr double kSlackTol = 1e-10;

// suite: bounds | encodings | amplification | all
std::vector<SuiteRow> run_suite(const std::string& suite, const ExperimentConfig& cfg,
                                Exec exec = Exec::Parallel);

int count_violations(const std::vector<SuiteRow>& rows);

}  // namespace fqs
