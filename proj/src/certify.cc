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

#include "gmesim/certify.h"

#include <fmt/format.h>

#include <charconv>
#include <cmath>

namespace gmesim::certify {

using qmath::Complex;

namespace {

void require_two_qubit(const DensityMatrix &rho, const char *op) {
    if (rho.dims() != qmath::Dims{2, 2}) {
        throw DimensionMismatch(std::string(op) + " expects a two-qubit state");
    }
}

void require_unit(const BlochVector &n) {
    double norm2 = n[0] * n[0] + n[1] * n[1] + n[2] * n[2];
    if (!std::isfinite(norm2) || std::abs(norm2 - 1.0) > 1e-12) {
        throw OutOfRange("measurement Bloch vector is not unit-norm");
    }
}

double dot(const BlochVector &u, const BlochVector &v) {
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

BlochVector times(const CorrelationMatrix &t, const BlochVector &v) {
    BlochVector out{};
    for (std::size_t i = 0; i < 3; ++i) {
        out[i] = t[i][0] * v[0] + t[i][1] * v[1] + t[i][2] * v[2];
    }
    return out;
}

double bilinear(const CorrelationMatrix &t, const BlochVector &a, const BlochVector &b) {
    return dot(a, times(t, b));
}

BlochVector normalized(const BlochVector &v) {
    double n = std::sqrt(dot(v, v));
    return {v[0] / n, v[1] / n, v[2] / n};
}

// Any unit vector orthogonal to v.
BlochVector orthogonal_to(const BlochVector &v) {
    BlochVector seed = std::abs(v[0]) < 0.9 ? kAxisX : kAxisY;
    double p = dot(seed, v);
    return normalized({seed[0] - p * v[0], seed[1] - p * v[1], seed[2] - p * v[2]});
}

}  // namespace

MeasurementSetting::MeasurementSetting(BlochVector a_in, BlochVector b_in) : a(a_in), b(b_in) {
    require_unit(a);
    require_unit(b);
}

ComplexMatrix bloch_observable(const BlochVector &n) {
    return qmath::pauli_x() * Complex(n[0]) + qmath::pauli_y() * Complex(n[1]) + qmath::pauli_z() * Complex(n[2]);
}

ComplexMatrix bloch_projector(const BlochVector &n, int sign) {
    return (ComplexMatrix::identity(2) + bloch_observable(n) * Complex(static_cast<double>(sign))) * Complex(0.5);
}

std::array<double, 4> outcome_probabilities(const DensityMatrix &rho, const MeasurementSetting &s) {
    require_two_qubit(rho, "outcome_probabilities");
    std::array<double, 4> p{};
    std::size_t k = 0;
    for (int sa : {+1, -1}) {
        for (int sb : {+1, -1}) {
            ComplexMatrix proj = qmath::kron(bloch_projector(s.a, sa), bloch_projector(s.b, sb));
            p[k++] = std::max(0.0, (rho.matrix() * proj).trace().real());
        }
    }
    return p;
}

double correlator(const DensityMatrix &rho, const MeasurementSetting &s) {
    require_two_qubit(rho, "correlator");
    ComplexMatrix obs = qmath::kron(bloch_observable(s.a), bloch_observable(s.b));
    return (rho.matrix() * obs).trace().real();
}

CorrelationMatrix correlation_matrix(const DensityMatrix &rho) {
    require_two_qubit(rho, "correlation_matrix");
    const std::array<BlochVector, 3> axes{kAxisX, kAxisY, kAxisZ};
    CorrelationMatrix t{};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            t[i][j] = correlator(rho, MeasurementSetting(axes[i], axes[j]));
        }
    }
    return t;
}

double witness_from_correlations(const CorrelationMatrix &t) {
    return 1.0 - std::abs(t[0][0] + t[1][1]);
}

double witness_w(const DensityMatrix &rho) {
    require_two_qubit(rho, "witness_w");
    return witness_from_correlations(correlation_matrix(rho));
}

std::array<MeasurementSetting, 4> ChshSettings::pairs() const {
    return {MeasurementSetting(a0, b0), MeasurementSetting(a0, b1), MeasurementSetting(a1, b0),
            MeasurementSetting(a1, b1)};
}

ChshSettings singlet_optimal_chsh_settings() {
    const double s = 1.0 / std::sqrt(2.0);
    return {kAxisZ, kAxisX, {-s, 0.0, -s}, {s, 0.0, -s}};
}

double chsh_from_correlations(const CorrelationMatrix &t, const ChshSettings &s) {
    return std::abs(bilinear(t, s.a0, s.b0) + bilinear(t, s.a0, s.b1) + bilinear(t, s.a1, s.b0) -
                    bilinear(t, s.a1, s.b1));
}

double chsh(const DensityMatrix &rho, const ChshSettings &s) {
    require_two_qubit(rho, "chsh");
    for (const BlochVector *v : {&s.a0, &s.a1, &s.b0, &s.b1}) {
        require_unit(*v);
    }
    return chsh_from_correlations(correlation_matrix(rho), s);
}

ChshMax chsh_max_from_correlations(const CorrelationMatrix &t) {
    ComplexMatrix ttt(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                s += t[k][i] * t[k][j];
            }
            ttt(i, j) = s;
        }
    }
    qmath::Eigensystem eig = qmath::hermitian_eig(ttt);
    const double l1 = std::max(eig.values[0], 0.0);
    const double l2 = std::max(eig.values[1], 0.0);
    BlochVector e1{}, e2{};
    for (std::size_t i = 0; i < 3; ++i) {
        e1[i] = eig.vectors(i, 0).real();
        e2[i] = eig.vectors(i, 1).real();
    }
    e1 = normalized(e1);
    e2 = normalized(e2);

    // b0,1 = cos(th) e1 +- sin(th) e2 with tan(th) = sqrt(l2 / l1);
    // a0 ~ T e1, a1 ~ T e2.
    const double th = std::atan2(std::sqrt(l2), std::sqrt(l1));
    const double c = std::cos(th);
    const double s = std::sin(th);
    ChshSettings out;
    out.b0 = normalized({c * e1[0] + s * e2[0], c * e1[1] + s * e2[1], c * e1[2] + s * e2[2]});
    out.b1 = normalized({c * e1[0] - s * e2[0], c * e1[1] - s * e2[1], c * e1[2] - s * e2[2]});
    BlochVector te1 = times(t, e1);
    BlochVector te2 = times(t, e2);
    out.a0 = dot(te1, te1) > 1e-30 ? normalized(te1) : kAxisZ;
    out.a1 = dot(te2, te2) > 1e-30 ? normalized(te2) : orthogonal_to(out.a0);
    return {2.0 * std::sqrt(l1 + l2), out};
}

ChshMax chsh_max(const DensityMatrix &rho) {
    require_two_qubit(rho, "chsh_max");
    return chsh_max_from_correlations(correlation_matrix(rho));
}

PptReport ppt_report(const DensityMatrix &rho) {
    require_two_qubit(rho, "ppt_report");
    std::vector<double> ev = qmath::hermitian_eigenvalues(qmath::partial_transpose(rho, 1));
    PptReport r{{ev[0], ev[1], ev[2], ev[3]}, 0.0};
    for (double x : ev) {
        if (x < 0.0) {
            r.negativity -= x;
        }
    }
    return r;
}

std::string setting_label(const BlochVector &n) {
    if (n == kAxisX) {
        return "X";
    }
    if (n == kAxisY) {
        return "Y";
    }
    if (n == kAxisZ) {
        return "Z";
    }
    return fmt::format("{:.17g}:{:.17g}:{:.17g}", n[0], n[1], n[2]);
}

BlochVector parse_setting_label(const std::string &label) {
    if (label == "X") {
        return kAxisX;
    }
    if (label == "Y") {
        return kAxisY;
    }
    if (label == "Z") {
        return kAxisZ;
    }
    BlochVector n{};
    const char *p = label.data();
    const char *end = label.data() + label.size();
    for (std::size_t k = 0; k < 3; ++k) {
        auto [next, ec] = std::from_chars(p, end, n[k]);
        if (ec != std::errc() || (k < 2 && (next == end || *next != ':')) || (k == 2 && next != end)) {
            throw OutOfRange("malformed setting label '" + label + "'");
        }
        p = next + 1;
    }
    require_unit(n);
    return n;
}

}  // namespace gmesim::certify
