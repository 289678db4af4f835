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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <numbers>

#include "gmesim/certify.h"
#include "gmesim/circuit.h"
#include "gmesim/noise.h"
#include "gmesim/random.h"

namespace gmesim::circuit {
namespace {

using qmath::Complex;
constexpr double kPi = std::numbers::pi;

// Amplitudes 1/2 e^{i phi a b}|a 0 0 b> written out directly.
std::vector<Complex> expected_final(double phi) {
    std::vector<Complex> v(16);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            v[a * 8 + b] = 0.5 * std::exp(Complex(0.0, phi * a * b));
        }
    }
    return v;
}

// Amplitudes 1/2 e^{i phi a b}|a a b b>.
std::vector<Complex> expected_checkpoint(double phi) {
    std::vector<Complex> v(16);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            v[a * 8 + a * 4 + b * 2 + b] = 0.5 * std::exp(Complex(0.0, phi * a * b));
        }
    }
    return v;
}

double overlap_squared(std::span<const Complex> u, std::span<const Complex> v) {
    return std::norm(qmath::inner(u, v));
}

// Independent gate-by-gate evolution with Eigen on the 4-qubit register.
Eigen::VectorXcd eigen_run(double phi) {
    auto single = [](const Eigen::Matrix2cd &g, int q) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
        for (int k = 0; k < 4; ++k) {
            Eigen::MatrixXcd f = k == q ? Eigen::MatrixXcd(g) : Eigen::MatrixXcd::Identity(2, 2);
            Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
            for (int r = 0; r < m.rows(); ++r) {
                for (int c = 0; c < m.cols(); ++c) {
                    next.block(r * 2, c * 2, 2, 2) = m(r, c) * f;
                }
            }
            m = next;
        }
        return m;
    };
    auto bit = [](int idx, int q) { return (idx >> (3 - q)) & 1; };
    auto cnot = [&](int ctrl, int tgt) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(16, 16);
        for (int i = 0; i < 16; ++i) {
            int j = bit(i, ctrl) ? i ^ (1 << (3 - tgt)) : i;
            m(j, i) = 1.0;
        }
        return m;
    };
    Eigen::Matrix2cd h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    Eigen::MatrixXcd cp = Eigen::MatrixXcd::Identity(16, 16);
    for (int i = 0; i < 16; ++i) {
        if (bit(i, 1) && bit(i, 2)) {
            cp(i, i) = std::exp(Complex(0.0, phi));
        }
    }
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(16);
    psi(0) = 1.0;
    psi = single(h, 3) * single(h, 0) * psi;
    psi = cnot(3, 2) * cnot(0, 1) * psi;
    psi = cp * psi;
    psi = cnot(3, 2) * cnot(0, 1) * psi;
    return psi;
}

TEST(CircuitTest, GatesAreUnitary) {
    for (double phi : {0.0, 0.3, kPi / 2, kPi, 5.0}) {
        GmeCircuit c = build_gme_circuit(phi);
        for (const Gate &g : c.gates()) {
            EXPECT_LT(qmath::unitarity_error(g.matrix), 1e-12) << g.name;
        }
        EXPECT_LT(qmath::unitarity_error(circuit_unitary(c)), 1e-12);
    }
}

TEST(CircuitTest, GateSequenceStructure) {
    GmeCircuit c = build_gme_circuit(kPi);
    ASSERT_EQ(c.gates().size(), 7u);
    EXPECT_EQ(c.gates()[0].stage, Stage::kPreparation);
    EXPECT_EQ(c.gates().back().stage, Stage::kRecombination);
    EXPECT_LT(qmath::max_abs_diff(controlled_phase(kPi), qmath::ComplexMatrix::diagonal(
                                                               std::vector<Complex>{1.0, 1.0, 1.0, -1.0})),
              1e-15);
}

TEST(CircuitTest, MatchesEigenGateByGate) {
    for (double phi : {0.0, 0.7, kPi / 2, kPi, 4.1}) {
        PureState psi = run_circuit(build_gme_circuit(phi));
        Eigen::VectorXcd ref = eigen_run(phi);
        for (int i = 0; i < 16; ++i) {
            EXPECT_LT(std::abs(psi.amplitudes()[i] - ref(i)), 1e-12);
        }
    }
}

TEST(CircuitTest, FreeFallCheckpoint) {
    for (double phi : {0.0, kPi / 3, kPi}) {
        PureState mid = run_circuit_until(build_gme_circuit(phi), Stage::kFreeFall);
        EXPECT_NEAR(overlap_squared(mid.amplitudes(), expected_checkpoint(phi)), 1.0, 1e-12);
    }
}

TEST(CircuitTest, FinalStateGeometryReset) {
    for (double phi : {0.0, kPi / 2, kPi, 2.5}) {
        PureState psi = run_circuit(build_gme_circuit(phi));
        EXPECT_NEAR(overlap_squared(psi.amplitudes(), expected_final(phi)), 1.0, 1e-12);
    }
}

TEST(CircuitTest, ReducedSpinStateIsEq6) {
    const std::vector<Complex> eq6{0.5, 0.5, 0.5, -0.5};
    DensityMatrix rho = reduced_spin_state(run_circuit(build_gme_circuit(kPi)));
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    EXPECT_NEAR(qmath::fidelity_pure(rho, PureState({2, 2}, eq6)), 1.0, 1e-12);
}

TEST(CircuitTest, PhiZeroIsProduct) {
    DensityMatrix rho = reduced_spin_state(run_circuit(build_gme_circuit(0.0)));
    PureState plus_plus({2, 2}, {0.5, 0.5, 0.5, 0.5});
    EXPECT_NEAR(qmath::fidelity_pure(rho, plus_plus), 1.0, 1e-12);
    EXPECT_NEAR(qmath::negativity(rho), 0.0, 1e-12);
    EXPECT_NEAR(certify::witness_w(rho), 0.0, 1e-12);
    EXPECT_NEAR(certify::witness_w(canonicalize_to_singlet(rho)), 1.0, 1e-12);
}

TEST(CircuitTest, PhiHalfPi) {
    DensityMatrix rho = reduced_spin_state(run_circuit(build_gme_circuit(kPi / 2)));
    PureState expected({2, 2}, {0.5, 0.5, 0.5, Complex(0.0, 0.5)});
    EXPECT_NEAR(qmath::fidelity_pure(rho, expected), 1.0, 1e-12);
    EXPECT_NEAR(qmath::negativity(rho), std::sqrt(2.0) / 4.0, 1e-10);
    EXPECT_NEAR(qmath::fidelity_pure(rho, ideal_spin_state(kPi / 2)), 1.0, 1e-12);
}

TEST(CircuitTest, GeometryDisentanglesOnGrid) {
    const std::vector<std::size_t> spins{0, 3};
    for (int k = 0; k < 64; ++k) {
        double phi = 2.0 * kPi * k / 64.0;
        PureState psi = run_circuit(build_gme_circuit(phi));
        std::vector<double> sc = qmath::schmidt_coefficients(psi, spins);
        ASSERT_GE(sc.size(), 2u);
        EXPECT_LT(sc[1], 1e-10) << phi;
    }
}

TEST(CircuitTest, MidCircuitWhichPathIsMaximal) {
    PureState mid = run_circuit_until(build_gme_circuit(kPi), Stage::kFreeFall);
    const std::vector<std::size_t> spins{0, 3};
    DensityMatrix spin_marginal = qmath::partial_trace(DensityMatrix::from_pure(mid), spins);
    EXPECT_NEAR(qmath::entropy_bits(spin_marginal), 2.0, 1e-10);
    EXPECT_LT(qmath::max_abs_diff(spin_marginal.matrix(), qmath::ComplexMatrix::identity(4) * 0.25), 1e-12);
}

TEST(CircuitTest, PhiPiNegativityHalf) {
    DensityMatrix rho = reduced_spin_state(run_circuit(build_gme_circuit(kPi)));
    EXPECT_NEAR(qmath::negativity(rho), 0.5, 1e-10);
}

TEST(CircuitTest, TwoPiPeriodicity) {
    for (double phi : {0.0, 1.0, kPi, 4.0}) {
        PureState a = run_circuit(build_gme_circuit(phi));
        PureState b = run_circuit(build_gme_circuit(phi + 2.0 * kPi));
        EXPECT_NEAR(overlap_squared(a.amplitudes(), b.amplitudes()), 1.0, 1e-12);
    }
}

TEST(CircuitTest, FourPhaseDefaultMatchesSinglePhase) {
    PureState a = run_circuit(build_gme_circuit(1.3));
    PureState b = run_circuit(build_gme_circuit(std::array<double, 4>{0.0, 0.0, 0.0, 1.3}));
    EXPECT_NEAR(overlap_squared(a.amplitudes(), b.amplitudes()), 1.0, 1e-12);
    PureState c = run_circuit(build_gme_circuit(std::array<double, 4>{0.2, 0.2, 0.2, 0.2}));
    EXPECT_NEAR(qmath::negativity(reduced_spin_state(c)), 0.0, 1e-12);
}

TEST(CircuitTest, ReducedStateRejectsWrongDimension) {
    PureState small = PureState::basis({2, 2}, 0);
    EXPECT_THROW(reduced_spin_state(small), DimensionMismatch);
}

TEST(CircuitTest, CanonicalizationMapsEq6ToSinglet) {
    DensityMatrix rho = reduced_spin_state(run_circuit(build_gme_circuit(kPi)));
    DensityMatrix can = canonicalize_to_singlet(rho);
    const double s = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(qmath::fidelity_pure(can, PureState({2, 2}, {0.0, -s, s, 0.0})), 1.0, 1e-12);
    EXPECT_NEAR(certify::witness_w(can), -1.0, 1e-12);
    EXPECT_LT(qmath::unitarity_error(singlet_rotation()), 1e-12);
}

TEST(CircuitTest, CanonicalizationFixesMaximallyMixed) {
    DensityMatrix mixed = DensityMatrix::maximally_mixed({2, 2});
    EXPECT_LT(qmath::max_abs_diff(canonicalize_to_singlet(mixed).matrix(), mixed.matrix()), 1e-15);
}

TEST(CircuitTest, CanonicalizationPreservesNegativity) {
    Rng rng = make_stream(11, 0);
    for (int k = 0; k < 50; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        EXPECT_NEAR(qmath::negativity(canonicalize_to_singlet(rho)), qmath::negativity(rho), 1e-10);
    }
    for (double eta : {0.0, 0.3, 0.6, 1.0}) {
        DensityMatrix pre = qmath::conjugate(noise::dephased_singlet(eta),
                                             qmath::kron(qmath::ComplexMatrix::identity(2),
                                                         singlet_rotation().adjoint()));
        EXPECT_LT(qmath::max_abs_diff(canonicalize_to_singlet(pre).matrix(),
                                      noise::dephased_singlet(eta).matrix()),
                  1e-12);
        EXPECT_NEAR(qmath::negativity(pre), (1.0 - eta) / 2.0, 1e-10);
    }
}

TEST(CircuitTest, LiteralWaveplateGivesDifferentBellState) {
    PureState eq6 = ideal_spin_state(kPi);
    DensityMatrix lit = qmath::conjugate(DensityMatrix::from_pure(eq6),
                                         qmath::kron(qmath::ComplexMatrix::identity(2), literal_waveplate_rotation()));
    EXPECT_NEAR(lit.purity(), 1.0, 1e-12);
    EXPECT_NEAR(qmath::negativity(lit), 0.5, 1e-10);
    EXPECT_LT(qmath::fidelity_pure(lit, singlet()), 1.0 - 1e-6);
}

TEST(CircuitTest, LocalRotationBetweenBellStates) {
    Rng rng = make_stream(5, 0);
    for (int k = 0; k < 20; ++k) {
        qmath::ComplexMatrix u = qmath::random_unitary(2, rng);
        std::vector<Complex> amps = qmath::kron(qmath::ComplexMatrix::identity(2), u) * singlet().amplitudes();
        PureState from({2, 2}, amps);
        qmath::ComplexMatrix g = local_rotation_between(from, singlet());
        DensityMatrix mapped =
            qmath::conjugate(DensityMatrix::from_pure(from), qmath::kron(qmath::ComplexMatrix::identity(2), g));
        EXPECT_NEAR(qmath::fidelity_pure(mapped, singlet()), 1.0, 1e-12);
    }
}

TEST(CircuitTest, JsonRoundTrip) {
    GmeCircuit c = build_gme_circuit(std::array<double, 4>{0.1, 0.2, 0.3, 2.0});
    nlohmann::json doc = to_json(c);
    EXPECT_TRUE(doc.contains("phi"));
    ASSERT_TRUE(doc["gates"].is_array());
    EXPECT_EQ(doc["gates"].size(), c.gates().size());
    for (const auto &g : doc["gates"]) {
        EXPECT_TRUE(g["name"].is_string());
        EXPECT_TRUE(g["targets"].is_array());
    }
    GmeCircuit back = circuit_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_LT(qmath::max_abs_diff(circuit_unitary(back), circuit_unitary(c)), 1e-15);
}

TEST(CircuitTest, RunIsFast) {
    GmeCircuit c = build_gme_circuit(kPi);
    auto t0 = std::chrono::steady_clock::now();
    DensityMatrix rho = reduced_spin_state(run_circuit(c));
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_NEAR(rho.purity(), 1.0, 1e-12);
    EXPECT_LT(dt, 1e-3);
}

}  // namespace
}  // namespace gmesim::circuit
