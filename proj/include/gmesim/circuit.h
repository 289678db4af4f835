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

#ifndef GMESIM_CIRCUIT_H
#define GMESIM_CIRCUIT_H

#include <array>
#include <numbers>
#include <string>
#include <vector>

#include "gmesim/qmath.h"
#include "json.hpp"

/// The four-qubit mediated-entanglement circuit: two spin qubits and a
/// two-qubit geometry register that temporarily records which-path
/// information and is coherently erased again.
namespace gmesim::circuit {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;
using qmath::PureState;

// Qubit layout, leftmost tensor factor first: spin A, geometry ququart
// (two qubits), spin B.
inline constexpr std::size_t kSpinA = 0;
inline constexpr std::size_t kGeometryA = 1;
inline constexpr std::size_t kGeometryB = 2;
inline constexpr std::size_t kSpinB = 3;
inline constexpr std::size_t kNumQubits = 4;

enum class Stage { kPreparation, kSuperposition, kFreeFall, kRecombination };

std::string stage_name(Stage stage);

/// Qubit value <-> photon polarization. Fixed for the whole library.
struct BasisConvention {
    static constexpr const char *kZero = "V";
    static constexpr const char *kOne = "H";
    /// Human-readable label written into every output file.
    static std::string describe();
};

struct Gate {
    std::string name;
    ComplexMatrix matrix;
    std::vector<std::size_t> targets;
    Stage stage = Stage::kPreparation;
};

class GmeCircuit {
   public:
    /// phases[g] is the phase picked up by geometry basis state g = 2*g_A + g_B.
    GmeCircuit(double phi, std::array<double, 4> geometry_phases, std::vector<Gate> gates);

    double phi() const {
        return phi_;
    }
    const std::array<double, 4> &geometry_phases() const {
        return geometry_phases_;
    }
    const std::vector<Gate> &gates() const {
        return gates_;
    }

   private:
    double phi_;
    std::array<double, 4> geometry_phases_;
    std::vector<Gate> gates_;
};

ComplexMatrix hadamard();
/// Control is the first target; acts on |1>.
ComplexMatrix cnot();
/// diag(1, 1, 1, e^{i phi}).
ComplexMatrix controlled_phase(double phi);
/// diag(e^{i p_00}, e^{i p_01}, e^{i p_10}, e^{i p_11}).
ComplexMatrix geometry_phase(const std::array<double, 4> &phases);

/// Single relative phase phi on the |11> geometry branch.
GmeCircuit build_gme_circuit(double phi = std::numbers::pi);

/// General four-phase free fall.
GmeCircuit build_gme_circuit(const std::array<double, 4> &geometry_phases);

/// Full unitary of the gate sequence on the 16-dimensional space.
ComplexMatrix circuit_unitary(const GmeCircuit &c);

/// Runs from |0000> through every gate; dims [2,2,2,2].
PureState run_circuit(const GmeCircuit &c);

/// Runs from |0000> through the last gate belonging to `last`.
PureState run_circuit_until(const GmeCircuit &c, Stage last);

/// Traces out the geometry ququart of a 16-dimensional state (dims
/// [2,2,2,2] or [2,4,2]).
DensityMatrix reduced_spin_state(const PureState &full);

/// (|00> + |01> + |10> + e^{i phi}|11>) / 2.
PureState ideal_spin_state(double phi = std::numbers::pi);

/// (|HV> - |VH>) / sqrt(2) in the qubit basis of BasisConvention.
PureState singlet();

/// Single-qubit unitary G with (I (x) G)|from> = |to> up to global phase,
/// for maximally entangled two-qubit states. Built from the polar part of
/// C_from^dagger C_to, C the 2x2 coefficient matrices.
ComplexMatrix local_rotation_between(const PureState &from, const PureState &to);

/// G that maps ideal_spin_state(pi) onto singlet().
const ComplexMatrix &singlet_rotation();

/// Literal (sigma_z + sigma_x)/sqrt(2) wave-plate rotation, kept for the
/// output metadata.
ComplexMatrix literal_waveplate_rotation();

/// rho -> (I (x) G) rho (I (x) G)^dagger.
DensityMatrix canonicalize_to_singlet(const DensityMatrix &rho);

/// {"phi": .., "gates": [{"name": .., "targets": [..]}], "geometry_phases": [..]}
nlohmann::json to_json(const GmeCircuit &c);
GmeCircuit circuit_from_json(const nlohmann::json &doc);

}  // namespace gmesim::circuit

#endif
