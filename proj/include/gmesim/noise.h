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

#ifndef GMESIM_NOISE_H
#define GMESIM_NOISE_H

#include "gmesim/qmath.h"

/// Phenomenological decoherence of the two-qubit polarization state.
namespace gmesim::noise {

using qmath::DensityMatrix;

/// Weight of the measured-witness baseline model: W = 1 - 2 w = -0.72.
inline constexpr double kBaselineWeight = 0.86;

struct DephasingParams {
    double eta = 0.0;
};

struct DistinguishabilityParams {
    double v = 1.0;
};

/// |Psi-><Psi-|.
DensityMatrix singlet_state();

/// (|HV><HV| + |VH><VH|) / 2.
DensityMatrix rho_mix();

/// (|H+><H+| + |+H><+H|) / 2.
DensityMatrix rho_dist();

/// (1 - eta) rho + eta D(rho), D removing every coherence between different
/// polarizations of the second photon.
DensityMatrix dephase(const DensityMatrix &rho, DephasingParams p);

/// v |Psi-><Psi-| + (1 - v) rho_dist.
DensityMatrix distinguishable_state(DistinguishabilityParams p);

/// p a + (1 - p) b.
DensityMatrix mix(const DensityMatrix &a, const DensityMatrix &b, double p);

/// dephase(singlet, eta) == (1 - eta) singlet + eta rho_mix.
DensityMatrix dephased_singlet(double eta);

/// mix(singlet, rho_mix, weight): the one-parameter experimental baseline.
DensityMatrix baseline_state(double weight = kBaselineWeight);

/// Dephasing parameter at which the dephased baseline witness crosses zero,
/// 1 - 1 / (2 weight).
double baseline_witness_crossing(double weight = kBaselineWeight);

}  // namespace gmesim::noise

#endif
