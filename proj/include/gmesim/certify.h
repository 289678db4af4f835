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

#ifndef GMESIM_CERTIFY_H
#define GMESIM_CERTIFY_H

#include <array>
#include <string>
#include <vector>

#include "gmesim/qmath.h"

/// Entanglement certification of two-qubit polarization states.
namespace gmesim::certify {

using qmath::ComplexMatrix;
using qmath::DensityMatrix;

using BlochVector = std::array<double, 3>;

inline constexpr BlochVector kAxisX{1.0, 0.0, 0.0};
inline constexpr BlochVector kAxisY{0.0, 1.0, 0.0};
inline constexpr BlochVector kAxisZ{0.0, 0.0, 1.0};

/// Local projective measurement of n . sigma on each qubit.
struct MeasurementSetting {
    BlochVector a;
    BlochVector b;

    MeasurementSetting(BlochVector a, BlochVector b);

    bool operator==(const MeasurementSetting &) const = default;
};

/// n . sigma for a unit Bloch vector.
ComplexMatrix bloch_observable(const BlochVector &n);

/// (I + s n . sigma) / 2 for outcome sign s = +1 or -1.
ComplexMatrix bloch_projector(const BlochVector &n, int sign);

/// Born probabilities of the outcomes {++, +-, -+, --}.
std::array<double, 4> outcome_probabilities(const DensityMatrix &rho, const MeasurementSetting &s);

/// tr(rho (a . sigma) (x) (b . sigma)).
double correlator(const DensityMatrix &rho, const MeasurementSetting &s);

/// 3x3 Pauli correlation matrix T_ij = <sigma_i (x) sigma_j>.
using CorrelationMatrix = std::array<std::array<double, 3>, 3>;
CorrelationMatrix correlation_matrix(const DensityMatrix &rho);

/// 1 - |<XX> + <YY>|; negative values certify entanglement.
double witness_w(const DensityMatrix &rho);
double witness_from_correlations(const CorrelationMatrix &t);

struct ChshSettings {
    BlochVector a0;
    BlochVector a1;
    BlochVector b0;
    BlochVector b1;

    /// (A0,B0), (A0,B1), (A1,B0), (A1,B1).
    std::array<MeasurementSetting, 4> pairs() const;
};

/// A0 = Z, A1 = X, B0 = -(Z + X)/sqrt2, B1 = (X - Z)/sqrt2.
ChshSettings singlet_optimal_chsh_settings();

/// |E(A0B0) + E(A0B1) + E(A1B0) - E(A1B1)|.
double chsh(const DensityMatrix &rho, const ChshSettings &s);
double chsh_from_correlations(const CorrelationMatrix &t, const ChshSettings &s);

struct ChshMax {
    double value;
    ChshSettings settings;
};

/// Horodecki maximum 2 sqrt(l1 + l2) over l1 >= l2 the top eigenvalues of
/// T^T T, with settings achieving it.
ChshMax chsh_max(const DensityMatrix &rho);
ChshMax chsh_max_from_correlations(const CorrelationMatrix &t);

struct PptReport {
    std::array<double, 4> eigenvalues;  // descending
    double negativity;
};

PptReport ppt_report(const DensityMatrix &rho);

/// "X", "Y", "Z" for the positive axes, "x:y:z" otherwise.
std::string setting_label(const BlochVector &n);

/// Inverse of setting_label; throws OutOfRange for non-unit vectors.
BlochVector parse_setting_label(const std::string &label);

}  // namespace gmesim::certify

#endif
