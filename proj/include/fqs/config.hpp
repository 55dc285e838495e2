#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fqs/bounds.hpp"
#include "fqs/presets.hpp"

namespace fqs {

enum class PresetKind { DrivenQubit, Hubbard2, AdiabaticPrep, GaussianPacket, Custom };

const char* preset_name(PresetKind p);

struct ResourceGrid {
    ResourceParams base;
    std::vector<double> times;
    std::vector<double> epsilons;
    std::vector<double> omegas;
    std::vector<ResourceRegime> regimes;
};

// Parsed and validated experiment. The model is already built, so a config that
// loads without throwing can run.
struct ExperimentConfig {
    PresetKind preset = PresetKind::DrivenQubit;
    Model model;
    double t = 0.0;
    double epsilon = 1e-4;
    Regime regime = Regime::Adiabatic;
    std::uint64_t seed = 1;
    double oracle_tol = 1e-10;
    int random_states = 20;
    std::vector<std::string> outputs;
    ResourceGrid resources;
};

// Row-major interleaved (re, im) float64 values into a dim x dim matrix.
Mat matrix_from_interleaved(const std::vector<double>& values, int dim);
std::vector<double> read_interleaved_file(const std::string& path);

ExperimentConfig parse_config(const nlohmann::json& j, const std::string& base_dir = ".");
ExperimentConfig load_config(const std::string& path);

}  // namespace fqs
