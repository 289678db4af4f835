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

#ifndef GMESIM_TOMOGRAPHY_H
#define GMESIM_TOMOGRAPHY_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmesim/certify.h"
#include "json.hpp"

namespace gmesim::certify {

/// Outcome counts of one measurement setting, ordered {++, +-, -+, --}.
///
/// Counts are stored as doubles so that expected (noise-free) counts can be
/// fed through the same estimators; sampled counts are always integral.
struct CountsRecord {
    MeasurementSetting setting;
    std::array<double, 4> counts;
    double total_expected;

    double total() const {
        return counts[0] + counts[1] + counts[2] + counts[3];
    }
};

/// The nine {X,Y,Z} x {X,Y,Z} settings, first qubit major.
std::vector<MeasurementSetting> pauli_settings();

/// Independent Poisson counts with means n_per_setting * p(outcome). Setting
/// k draws from stream k of `seed`.
std::vector<CountsRecord> simulate_counts(const DensityMatrix &rho, std::span<const MeasurementSetting> settings,
                                          std::uint64_t n_per_setting, std::uint64_t seed);

/// Noise-free expected counts n_per_setting * p(outcome).
std::vector<CountsRecord> expected_counts(const DensityMatrix &rho, std::span<const MeasurementSetting> settings,
                                          double n_per_setting);

/// Pauli correlations estimated directly from relative frequencies of the
/// nine Pauli settings. Throws MissingSetting.
struct PauliEstimate {
    CorrelationMatrix correlations;
    BlochVector marginal_a;
    BlochVector marginal_b;
};
PauliEstimate estimate_pauli(std::span<const CountsRecord> data);

/// 1/4 sum_{P,Q} E(P (x) Q) P (x) Q. Hermitian, unit trace, possibly not PSD.
ComplexMatrix tomography_linear(std::span<const CountsRecord> data);

struct MleOptions {
    double tolerance = 1e-10;
    int patience = 10;
    int max_iterations = 100000;
    bool record_history = false;
};

/// Standard deviations over Monte Carlo replicas.
struct ErrorIntervals {
    int replicas = 0;
    double fidelity = 0.0;
    double witness = 0.0;
    double chsh_fixed = 0.0;
    double chsh_max = 0.0;
    double negativity = 0.0;
    std::array<double, 4> ppt_eigenvalues{};
    double witness_direct = 0.0;
    double chsh_direct = 0.0;
};

struct TomographyResult {
    DensityMatrix rho_hat;
    double log_likelihood = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<std::size_t> dropped_settings;
    std::optional<double> fidelity_to_target;
    std::array<double, 4> ppt_eigenvalues{};
    double negativity = 0.0;
    double witness = 0.0;
    double chsh_fixed = 0.0;
    double chsh_max = 0.0;
    std::optional<ErrorIntervals> error_intervals;
    /// Log-likelihood after every iteration (MleOptions::record_history).
    std::vector<double> history;
};

/// Sum n_k log p_k(rho) over every record with nonzero total counts.
double log_likelihood(std::span<const CountsRecord> data, const DensityMatrix &rho);

/// Maximum-likelihood reconstruction over rho = T^dagger T / tr(T^dagger T),
/// T lower triangular with real diagonal. Gradient ascent with backtracking
/// (halving from a unit step). Settings with all-zero counts are dropped and
/// listed in `dropped_settings`; non-convergence is reported through
/// `converged == false` with the best iterate.
TomographyResult tomography_mle(std::span<const CountsRecord> data, const std::optional<ComplexMatrix> &init = {},
                                const MleOptions &options = {});

/// Fills fidelity_to_target (Uhlmann fidelity).
void set_target(TomographyResult &result, const DensityMatrix &target);

/// Poisson-resamples each count, reruns the MLE per replica and returns the
/// sample standard deviations. Replica r uses stream r of `seed`.
ErrorIntervals monte_carlo_errors(std::span<const CountsRecord> data, int replicas, std::uint64_t seed,
                                  const std::optional<DensityMatrix> &target = {}, const MleOptions &options = {});

/// CSV with header setting_a,setting_b,n_pp,n_pm,n_mp,n_mm.
void write_counts_csv(std::ostream &out, std::span<const CountsRecord> data);
std::vector<CountsRecord> read_counts_csv(std::istream &in);

nlohmann::json counts_to_json(std::span<const CountsRecord> data);

/// Density matrix as nested [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &doc);

nlohmann::json to_json(const ErrorIntervals &e);
nlohmann::json to_json(const TomographyResult &r);

}  // namespace gmesim::certify

#endif
