// Copyright 2026 The gmesim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GMESIM_CLI_H
#define GMESIM_CLI_H

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gmesim/photonic.h"
#include "json.hpp"

namespace gmesim::cli {

inline constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitNoConvergence = 3,
    kExitVerification = 4,
};

struct ExperimentConfig {
    double phi;
    std::optional<std::array<double, 4>> geometry_phases;
    std::vector<double> eta_grid;
    std::vector<double> v_grid;
    std::vector<double> gamma_grid;
    std::string bs = "ideal";
    std::optional<double> reflectivity;
    double bd_imperfection = 0.0;
    double coherence_sigma_ps = 1000.0;
    double measured_visibility = 0.73;
    double cz_fidelity_threshold = 0.999;
    double cz_magnitude_spread = 0.05;
    std::uint64_t counts_per_setting = 10000;
    int mc_replicas = 100;
    std::uint64_t seed = 1;
    double baseline_weight = 0.86;
    std::string output_dir = "out";

    ExperimentConfig();

    /// Beam-splitter parameters after applying `bs` and `reflectivity`.
    photonic::BsParams bs_params() const;
};

/// Throws OutOfRange describing the first violated invariant.
void validate(const ExperimentConfig &c);

/// Reads a JSON config; unknown keys and type errors raise ParseError.
ExperimentConfig config_from_json(const nlohmann::json &doc);
ExperimentConfig load_config(const std::filesystem::path &path);
nlohmann::json to_json(const ExperimentConfig &c);

/// SHA-256 of the canonical config dump, excluding output_dir.
std::string config_hash(const ExperimentConfig &c);

/// Metadata block attached to every output file.
nlohmann::json metadata(const ExperimentConfig &c, const std::string &command);

/// Point estimates and Monte Carlo standard deviations feeding the verdict.
struct Evidence {
    double chsh;
    double chsh_sigma;
    double witness;
    double witness_sigma;
    double pt_min_eigenvalue;
    double pt_min_sigma;
    bool converged;
};

/// One of certified_bell, certified_witness, certified_ppt,
/// separable_certified, inconclusive. Every test uses a 3 sigma margin and
/// the first passing test in that order wins.
std::string entanglement_verdict(const Evidence &e);

/// Runs the command line; the gmesim executable forwards to this.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace gmesim::cli

#endif
