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

#include "gmesim/circuit.h"

#include <cmath>

namespace gmesim::circuit {

using qmath::Complex;

namespace {

const qmath::Dims kQubitDims{2, 2, 2, 2};

// Full-space matrix of a gate acting on `targets` (first target = most
// significant bit of the gate's local index).
ComplexMatrix embed(const ComplexMatrix &op, const std::vector<std::size_t> &targets) {
    const std::size_t n = std::size_t{1} << kNumQubits;
    const std::size_t k = targets.size();
    if (op.rows() != (std::size_t{1} << k) || !op.is_square()) {
        throw DimensionMismatch("gate matrix does not match its target count");
    }
    auto bit = [](std::size_t index, std::size_t qubit) { return (index >> (kNumQubits - 1 - qubit)) & 1U; };
    auto local = [&](std::size_t index) {
        std::size_t l = 0;
        for (std::size_t t : targets) {
            l = (l << 1) | bit(index, t);
        }
        return l;
    };
    std::size_t mask = 0;
    for (std::size_t t : targets) {
        if (t >= kNumQubits) {
            throw BadSubsystem("gate target " + std::to_string(t) + " out of range");
        }
        mask |= std::size_t{1} << (kNumQubits - 1 - t);
    }
    ComplexMatrix full(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if ((i & ~mask) != (j & ~mask)) {
                continue;
            }
            full(i, j) = op(local(i), local(j));
        }
    }
    return full;
}

Gate make_gate(const std::string &name, std::vector<std::size_t> targets, Stage stage, double phi,
               const std::array<double, 4> &phases) {
    ComplexMatrix m;
    if (name == "H") {
        m = hadamard();
    } else if (name == "CNOT") {
        m = cnot();
    } else if (name == "CPHASE") {
        m = controlled_phase(phi);
    } else if (name == "GPHASE") {
        m = geometry_phase(phases);
    } else {
        throw InvalidState("unknown gate name '" + name + "'");
    }
    if (m.rows() != (std::size_t{1} << targets.size())) {
        throw DimensionMismatch("gate '" + name + "' expects " + std::to_string(m.rows() == 2 ? 1 : 2) + " targets");
    }
    return Gate{name, std::move(m), std::move(targets), stage};
}

std::vector<Gate> gme_gate_sequence(double phi, const std::array<double, 4> &phases, bool single_phase) {
    std::vector<Gate> gates;
    gates.push_back(make_gate("H", {kSpinA}, Stage::kPreparation, phi, phases));
    gates.push_back(make_gate("H", {kSpinB}, Stage::kPreparation, phi, phases));
    gates.push_back(make_gate("CNOT", {kSpinA, kGeometryA}, Stage::kSuperposition, phi, phases));
    gates.push_back(make_gate("CNOT", {kSpinB, kGeometryB}, Stage::kSuperposition, phi, phases));
    if (single_phase) {
        gates.push_back(make_gate("CPHASE", {kGeometryA, kGeometryB}, Stage::kFreeFall, phi, phases));
    } else {
        gates.push_back(make_gate("GPHASE", {kGeometryA, kGeometryB}, Stage::kFreeFall, phi, phases));
    }
    gates.push_back(make_gate("CNOT", {kSpinA, kGeometryA}, Stage::kRecombination, phi, phases));
    gates.push_back(make_gate("CNOT", {kSpinB, kGeometryB}, Stage::kRecombination, phi, phases));
    return gates;
}

Stage stage_from_name(const std::string &s) {
    for (Stage st : {Stage::kPreparation, Stage::kSuperposition, Stage::kFreeFall, Stage::kRecombination}) {
        if (stage_name(st) == s) {
            return st;
        }
    }
    throw InvalidState("unknown stage '" + s + "'");
}

// 2x2 coefficient matrix C_ij = <ij|psi> of a two-qubit state.
ComplexMatrix coefficient_matrix(const PureState &psi) {
    if (psi.dims() != qmath::Dims{2, 2}) {
        throw DimensionMismatch("expected a two-qubit state");
    }
    auto a = psi.amplitudes();
    return {{a[0], a[1]}, {a[2], a[3]}};
}

}  // namespace

std::string stage_name(Stage stage) {
    switch (stage) {
        case Stage::kPreparation:
            return "preparation";
        case Stage::kSuperposition:
            return "superposition";
        case Stage::kFreeFall:
            return "free_fall";
        case Stage::kRecombination:
            return "recombination";
    }
    return "unknown";
}

std::string BasisConvention::describe() {
    return "qubit 0 <-> V, qubit 1 <-> H";
}

GmeCircuit::GmeCircuit(double phi, std::array<double, 4> geometry_phases, std::vector<Gate> gates)
    : phi_(phi), geometry_phases_(geometry_phases), gates_(std::move(gates)) {
    if (!std::isfinite(phi)) {
        throw OutOfRange("phi must be finite");
    }
    for (const Gate &g : gates_) {
        if (qmath::unitarity_error(g.matrix) > 1e-12) {
            throw InvalidState("gate '" + g.name + "' is not unitary");
        }
    }
}

ComplexMatrix hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return {{s, s}, {s, -s}};
}

ComplexMatrix cnot() {
    return {{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}};
}

ComplexMatrix controlled_phase(double phi) {
    std::array<Complex, 4> d{1.0, 1.0, 1.0, std::polar(1.0, phi)};
    return ComplexMatrix::diagonal(d);
}

ComplexMatrix geometry_phase(const std::array<double, 4> &phases) {
    std::array<Complex, 4> d{};
    for (std::size_t k = 0; k < 4; ++k) {
        d[k] = std::polar(1.0, phases[k]);
    }
    return ComplexMatrix::diagonal(d);
}

GmeCircuit build_gme_circuit(double phi) {
    std::array<double, 4> phases{0.0, 0.0, 0.0, phi};
    return GmeCircuit(phi, phases, gme_gate_sequence(phi, phases, true));
}

GmeCircuit build_gme_circuit(const std::array<double, 4> &geometry_phases) {
    // Relative phase of the |11> branch once the others are factored out.
    double phi = geometry_phases[3] - geometry_phases[1] - geometry_phases[2] + geometry_phases[0];
    return GmeCircuit(phi, geometry_phases, gme_gate_sequence(phi, geometry_phases, false));
}

ComplexMatrix circuit_unitary(const GmeCircuit &c) {
    ComplexMatrix u = ComplexMatrix::identity(std::size_t{1} << kNumQubits);
    for (const Gate &g : c.gates()) {
        u = embed(g.matrix, g.targets) * u;
    }
    return u;
}

PureState run_circuit(const GmeCircuit &c) {
    return run_circuit_until(c, Stage::kRecombination);
}

PureState run_circuit_until(const GmeCircuit &c, Stage last) {
    std::vector<Complex> amps(std::size_t{1} << kNumQubits, Complex(0.0, 0.0));
    amps[0] = 1.0;
    for (const Gate &g : c.gates()) {
        if (static_cast<int>(g.stage) > static_cast<int>(last)) {
            break;
        }
        amps = embed(g.matrix, g.targets) * std::span<const Complex>(amps);
    }
    return PureState::normalized(kQubitDims, std::move(amps));
}

DensityMatrix reduced_spin_state(const PureState &full) {
    if (full.dimension() != 16) {
        throw DimensionMismatch("reduced_spin_state expects a 16-dimensional state");
    }
    DensityMatrix rho = DensityMatrix::from_pure(full);
    if (full.dims() == qmath::Dims{2, 4, 2}) {
        const std::array<std::size_t, 2> keep{0, 2};
        return qmath::partial_trace(rho, keep);
    }
    if (full.dims() == kQubitDims) {
        const std::array<std::size_t, 2> keep{kSpinA, kSpinB};
        return qmath::partial_trace(rho, keep);
    }
    throw DimensionMismatch("reduced_spin_state expects dims [2,2,2,2] or [2,4,2]");
}

PureState ideal_spin_state(double phi) {
    return PureState::normalized({2, 2}, {0.5, 0.5, 0.5, 0.5 * std::polar(1.0, phi)});
}

PureState singlet() {
    // |HV> = |10>, |VH> = |01>.
    const double s = 1.0 / std::sqrt(2.0);
    return PureState({2, 2}, {0.0, -s, s, 0.0});
}

ComplexMatrix local_rotation_between(const PureState &from, const PureState &to) {
    ComplexMatrix cf = coefficient_matrix(from);
    ComplexMatrix ct = coefficient_matrix(to);
    for (const ComplexMatrix *c : {&cf, &ct}) {
        if (qmath::max_abs_diff(*c * c->adjoint(), ComplexMatrix::identity(2) * Complex(0.5)) > 1e-12) {
            throw InvalidState("local_rotation_between requires maximally entangled states");
        }
    }
    // (I (x) G)|from> has coefficient matrix C_from G^T; solve C_from G^T = C_to
    // through the polar factor of M = C_from^dagger C_to.
    ComplexMatrix m = cf.adjoint() * ct;
    ComplexMatrix inv_sqrt =
        qmath::hermitian_function(m.adjoint() * m, [](double x) { return 1.0 / std::sqrt(x); });
    return (m * inv_sqrt).transpose();
}

const ComplexMatrix &singlet_rotation() {
    static const ComplexMatrix g = local_rotation_between(ideal_spin_state(std::numbers::pi), singlet());
    return g;
}

ComplexMatrix literal_waveplate_rotation() {
    return hadamard();
}

DensityMatrix canonicalize_to_singlet(const DensityMatrix &rho) {
    if (rho.dims() != qmath::Dims{2, 2}) {
        throw DimensionMismatch("canonicalize_to_singlet expects a two-qubit state");
    }
    return qmath::conjugate(rho, qmath::kron(ComplexMatrix::identity(2), singlet_rotation()));
}

nlohmann::json to_json(const GmeCircuit &c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate &g : c.gates()) {
        gates.push_back({{"name", g.name}, {"targets", g.targets}, {"stage", stage_name(g.stage)}});
    }
    return {{"phi", c.phi()}, {"geometry_phases", c.geometry_phases()}, {"gates", gates}};
}

GmeCircuit circuit_from_json(const nlohmann::json &doc) {
    try {
        double phi = doc.at("phi").get<double>();
        std::array<double, 4> phases{0.0, 0.0, 0.0, phi};
        if (doc.contains("geometry_phases")) {
            phases = doc.at("geometry_phases").get<std::array<double, 4>>();
        }
        std::vector<Gate> gates;
        Stage stage = Stage::kPreparation;
        for (const auto &g : doc.at("gates")) {
            if (g.contains("stage")) {
                stage = stage_from_name(g.at("stage").get<std::string>());
            }
            gates.push_back(make_gate(g.at("name").get<std::string>(),
                                      g.at("targets").get<std::vector<std::size_t>>(), stage, phi, phases));
        }
        return GmeCircuit(phi, phases, std::move(gates));
    } catch (const nlohmann::json::exception &e) {
        throw InvalidState(std::string("malformed circuit document: ") + e.what());
    }
}

}  // namespace gmesim::circuit
