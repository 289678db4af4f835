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

#include "gmesim/noise.h"

#include <cmath>
#include <string>

#include "gmesim/circuit.h"

namespace gmesim::noise {

using qmath::Complex;
using qmath::ComplexMatrix;

namespace {

void require_unit_interval(double x, const char *name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw OutOfRange(std::string(name) + " = " + std::to_string(x) + " outside [0, 1]");
    }
}

void require_two_qubit(const DensityMatrix &rho, const char *op) {
    if (rho.dims() != qmath::Dims{2, 2}) {
        throw DimensionMismatch(std::string(op) + " expects a two-qubit state");
    }
}

}  // namespace

DensityMatrix singlet_state() {
    return DensityMatrix::from_pure(circuit::singlet());
}

DensityMatrix rho_mix() {
    // |VH> = |01>, |HV> = |10>.
    std::array<Complex, 4> d{0.0, 0.5, 0.5, 0.0};
    return DensityMatrix({2, 2}, ComplexMatrix::diagonal(d));
}

DensityMatrix rho_dist() {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<Complex> h{0.0, 1.0};
    const std::vector<Complex> plus{s, s};
    ComplexMatrix hp = qmath::kron(qmath::outer(h, h), qmath::outer(plus, plus));
    ComplexMatrix ph = qmath::kron(qmath::outer(plus, plus), qmath::outer(h, h));
    return DensityMatrix({2, 2}, (hp + ph) * Complex(0.5));
}

DensityMatrix dephase(const DensityMatrix &rho, DephasingParams p) {
    require_two_qubit(rho, "dephase");
    require_unit_interval(p.eta, "eta");
    ComplexMatrix m = rho.matrix();
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if ((r & 1U) != (c & 1U)) {
                m(r, c) *= 1.0 - p.eta;
            }
        }
    }
    return DensityMatrix(rho.dims(), std::move(m));
}

DensityMatrix distinguishable_state(DistinguishabilityParams p) {
    require_unit_interval(p.v, "v");
    return mix(singlet_state(), rho_dist(), p.v);
}

DensityMatrix mix(const DensityMatrix &a, const DensityMatrix &b, double p) {
    require_unit_interval(p, "mixing weight");
    if (a.dims() != b.dims()) {
        throw DimensionMismatch("mix: subsystem dims differ");
    }
    return DensityMatrix(a.dims(), a.matrix() * Complex(p) + b.matrix() * Complex(1.0 - p));
}

DensityMatrix dephased_singlet(double eta) {
    return dephase(singlet_state(), {eta});
}

DensityMatrix baseline_state(double weight) {
    return mix(singlet_state(), rho_mix(), weight);
}

double baseline_witness_crossing(double weight) {
    if (!(weight > 0.5 && weight <= 1.0)) {
        throw OutOfRange("baseline weight must lie in (0.5, 1] for the witness to cross zero");
    }
    return 1.0 - 1.0 / (2.0 * weight);
}

}  // namespace gmesim::noise
