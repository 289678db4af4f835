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

#ifndef GMESIM_PHOTONIC_H
#define GMESIM_PHOTONIC_H

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gmesim/qmath.h"
#include "json.hpp"

/// Two-photon linear-optics simulation of the photonic entangling scheme.
namespace gmesim::photonic {

using qmath::Complex;
using qmath::ComplexMatrix;
using qmath::DensityMatrix;

enum class Path { kOut1, kP1, kP2, kP3, kP4, kOut4 };
enum class Polarization { kH, kV };

inline constexpr std::size_t kNumPaths = 6;
inline constexpr std::size_t kNumLabels = 2;
inline constexpr std::size_t kNumModes = kNumPaths * 2 * kNumLabels;

std::string path_name(Path p);

struct Mode {
    Path path;
    Polarization polarization;
    int label = 0;

    /// (path * 2 + polarization) * 2 + label.
    std::size_t index() const;
    static Mode from_index(std::size_t index);

    bool operator==(const Mode &) const = default;
};

/// Two-photon state as amplitudes of occupation-number basis states keyed by
/// the (sorted) pair of occupied mode indices. A key (k, k) is |2_k>.
class FockState {
   public:
    using Key = std::pair<std::size_t, std::size_t>;

    FockState() = default;

    /// a^dagger(psi1) a^dagger(psi2)|0>, normalized. Each argument is a
    /// single-photon amplitude vector over kNumModes.
    static FockState from_creation(const std::vector<Complex> &psi1, const std::vector<Complex> &psi2);

    /// |1_a 1_b> or |2_a>.
    static FockState basis(const Mode &a, const Mode &b);

    Complex amplitude(const Mode &a, const Mode &b) const;
    const std::map<Key, Complex> &terms() const {
        return terms_;
    }
    void add(std::size_t i, std::size_t j, Complex amp);

    double norm_squared() const;
    int photon_count() const {
        return 2;
    }

   private:
    std::map<Key, Complex> terms_;
};

/// Power reflectivities of the partially polarizing beam splitter.
struct BsParams {
    double r_h = 1.0 / 3.0;
    double r_v = 1.0 / 3.0;

    static BsParams ideal() {
        return {};
    }
    static BsParams experimental() {
        return {0.329, 0.337};
    }
    static BsParams uniform(double r) {
        return {r, r};
    }
};

/// [[i sqrt(R), sqrt(1-R)], [sqrt(1-R), i sqrt(R)]]. Throws OutOfRange.
ComplexMatrix coupler_unitary(double reflectivity);

struct OpticalElement {
    std::string kind;
    nlohmann::json params;
    ComplexMatrix unitary;
};

/// Ordered elements and their composite mode unitary. A creation operator
/// evolves as a_i^dagger -> sum_j (U^dagger)_ij b_j^dagger.
class OpticalNetwork {
   public:
    OpticalNetwork();

    void append(OpticalElement element);
    const ComplexMatrix &mode_unitary() const {
        return unitary_;
    }
    const std::vector<OpticalElement> &elements() const {
        return elements_;
    }

   private:
    std::vector<OpticalElement> elements_;
    ComplexMatrix unitary_;
};

/// Couplers on (out1,1), (2,3), (4,out4) with per-polarization reflectivity.
OpticalElement beam_splitter_element(const BsParams &bs);
/// Beam displacer moving H light between two paths. `imperfection` in [0,1]
/// replaces the exact swap by a reflection at angle (pi/2)(1 - imperfection).
OpticalElement beam_displacer_element(Path a, Path b, double imperfection = 0.0);
/// Half-wave plate exchanging H and V on the given paths.
OpticalElement half_wave_plate_element(const std::vector<Path> &paths);

OpticalNetwork build_cz_network(const BsParams &bs);

/// BD, HWP, BS, HWP, BD sequence that turns polarization qubits into path
/// qubits, applies the post-selected CZ, and maps back.
OpticalNetwork build_simulator_pipeline(const BsParams &bs, double bd_imperfection = 0.0);

/// Throws PhotonNumberMismatch unless the input is a normalized two-photon state.
FockState evolve_two_photon(const FockState &input, const OpticalNetwork &net);

/// Photon A in path 1 and photon B in path 4, both diagonal (|H>+|V>)/sqrt(2).
/// Photon A carries label 0; photon B carries gamma|0> + sqrt(1-gamma^2)|1>.
FockState prepare_product_input(double gamma);

struct PostSelection {
    DensityMatrix polarization;
    double success_probability;
};

/// Keeps terms with one photon in {1,2} (photon A) and one in {3,4} (photon B),
/// traces paths and labels. Qubit basis 0 <-> V, 1 <-> H. Throws
/// EmptyPostSelection.
PostSelection post_select_coincidence(const FockState &state);

/// Coincidence amplitudes for path inputs (1,3), (1,4), (2,3), (2,4) with
/// both photons in `pol`.
std::array<Complex, 4> effective_gate_truth_table(const OpticalNetwork &net, Polarization pol = Polarization::kV);

/// Post-selected two-qubit path operator with logical encoding
/// A: path 1 -> 0, path 2 -> 1; B: path 4 -> 0, path 3 -> 1.
ComplexMatrix post_selected_operator(const OpticalNetwork &net, Polarization pol = Polarization::kV);

/// |tr(U^dagger K)|^2 / (d tr(K^dagger K)).
double process_fidelity(const ComplexMatrix &target, const ComplexMatrix &k);

/// Per-input success probabilities in logical order 00, 01, 10, 11.
std::array<double, 4> success_probabilities(const OpticalNetwork &net, Polarization pol = Polarization::kV);

/// Probability of one photon in each of paths 2 and 3 after the beam splitter,
/// photons entering paths 2 and 3 with overlap gamma.
double hom_coincidence(double gamma, const BsParams &bs, Polarization pol = Polarization::kH);

/// (P(gamma=0) - P(gamma=1)) / P(gamma=0).
double hom_visibility(const BsParams &bs, Polarization pol = Polarization::kH);

double infer_overlap_squared(double measured_visibility, double theoretical_visibility);

/// gamma(dt) = exp(-dt^2 / (2 sigma^2)).
double overlap_from_delay(double delay_ps, double sigma_ps);
/// Inverse of overlap_from_delay; infinity for gamma = 0.
double delay_from_overlap(double gamma, double sigma_ps);

/// Post-selected, canonicalized output of the pipeline for a given overlap.
struct PipelineOutput {
    DensityMatrix raw;
    DensityMatrix canonical;
    double success_probability;
};
PipelineOutput run_pipeline(double gamma, const BsParams &bs = {}, double bd_imperfection = 0.0);

/// Closest member v |Psi-><Psi-| + (1 - v) rho_dist of a canonical state,
/// with the trace distance to it.
struct VisibilityFit {
    double v;
    double residual;
};
VisibilityFit fit_visibility(const DensityMatrix &canonical);

nlohmann::json to_json(const OpticalNetwork &net);

}  // namespace gmesim::photonic

#endif
