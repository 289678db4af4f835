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
#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "gmesim/certify.h"
#include "gmesim/noise.h"
#include "gmesim/random.h"

namespace gmesim::certify {
namespace {

using qmath::Complex;
const double kSqrt2 = std::sqrt(2.0);

Eigen::Matrix4cd to_eigen(const ComplexMatrix &m) {
    Eigen::Matrix4cd e;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            e(r, c) = m(r, c);
        }
    }
    return e;
}

Eigen::Matrix2cd eigen_observable(const BlochVector &n) {
    const Complex i(0.0, 1.0);
    Eigen::Matrix2cd m;
    m << n[2], n[0] - i * n[1], n[0] + i * n[1], -n[2];
    return m;
}

double eigen_correlator(const DensityMatrix &rho, const BlochVector &a, const BlochVector &b) {
    Eigen::Matrix4cd op = Eigen::kroneckerProduct(eigen_observable(a), eigen_observable(b));
    return (to_eigen(rho.matrix()) * op).trace().real();
}

// Wootters concurrence.
double concurrence(const DensityMatrix &rho) {
    Eigen::Matrix4cd r = to_eigen(rho.matrix());
    Eigen::Matrix4cd yy = Eigen::kroneckerProduct(eigen_observable(kAxisY), eigen_observable(kAxisY));
    Eigen::Matrix4cd m = r * yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
    std::array<double, 4> l{};
    for (int k = 0; k < 4; ++k) {
        l[k] = std::sqrt(std::max(es.eigenvalues()(k).real(), 0.0));
    }
    std::sort(l.begin(), l.end(), std::greater<>());
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

BlochVector random_axis(Rng &rng) {
    std::normal_distribution<double> g;
    BlochVector v{g(rng), g(rng), g(rng)};
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / n, v[1] / n, v[2] / n};
}

ComplexMatrix random_local(Rng &rng) {
    return qmath::kron(qmath::random_unitary(2, rng), qmath::random_unitary(2, rng));
}

TEST(CorrelatorTest, Examples) {
    DensityMatrix s = noise::singlet_state();
    EXPECT_NEAR(correlator(s, {kAxisZ, kAxisZ}), -1.0, 1e-12);
    EXPECT_NEAR(correlator(s, {kAxisX, kAxisX}), -1.0, 1e-12);
    EXPECT_NEAR(correlator(s, {kAxisY, kAxisY}), -1.0, 1e-12);
    EXPECT_NEAR(correlator(noise::rho_mix(), {kAxisX, kAxisX}), 0.0, 1e-12);
}

TEST(CorrelatorTest, MatchesEigenTrace) {
    Rng rng = make_stream(1, 0);
    for (int k = 0; k < 200; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        BlochVector a = random_axis(rng);
        BlochVector b = random_axis(rng);
        double c = correlator(rho, {a, b});
        EXPECT_NEAR(c, eigen_correlator(rho, a, b), 1e-12);
        EXPECT_LE(std::abs(c), 1.0 + 1e-12);
    }
}

TEST(CorrelatorTest, OutcomeProbabilities) {
    std::array<double, 4> p = outcome_probabilities(noise::singlet_state(), {kAxisZ, kAxisZ});
    EXPECT_NEAR(p[0], 0.0, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
    EXPECT_NEAR(p[2], 0.5, 1e-15);
    EXPECT_NEAR(p[3], 0.0, 1e-15);
    Rng rng = make_stream(2, 0);
    for (int k = 0; k < 50; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        MeasurementSetting s(random_axis(rng), random_axis(rng));
        std::array<double, 4> q = outcome_probabilities(rho, s);
        EXPECT_NEAR(q[0] + q[1] + q[2] + q[3], 1.0, 1e-12);
        EXPECT_NEAR(q[0] - q[1] - q[2] + q[3], correlator(rho, s), 1e-12);
    }
}

TEST(CorrelatorTest, Errors) {
    DensityMatrix one = DensityMatrix::maximally_mixed({2});
    EXPECT_THROW(correlator(one, {kAxisZ, kAxisZ}), DimensionMismatch);
    EXPECT_THROW(witness_w(DensityMatrix::maximally_mixed({4})), DimensionMismatch);
    EXPECT_THROW(MeasurementSetting({1.0, 1.0, 0.0}, kAxisZ), OutOfRange);
}

TEST(CorrelationMatrixTest, MatchesDirectCorrelators) {
    Rng rng = make_stream(3, 0);
    const std::array<BlochVector, 3> axes{kAxisX, kAxisY, kAxisZ};
    DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
    CorrelationMatrix t = correlation_matrix(rho);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            EXPECT_NEAR(t[i][j], eigen_correlator(rho, axes[i], axes[j]), 1e-12);
        }
    }
}

TEST(WitnessTest, Examples) {
    EXPECT_NEAR(witness_w(noise::singlet_state()), -1.0, 1e-12);
    EXPECT_NEAR(witness_w(noise::rho_mix()), 1.0, 1e-12);
    EXPECT_NEAR(witness_w(noise::baseline_state(0.86)), -0.72, 1e-12);
}

TEST(WitnessTest, SeparableStatesAreNonNegative) {
    Rng rng = make_stream(4, 0);
    double worst = 10.0;
    for (int k = 0; k < 10000; ++k) {
        DensityMatrix rho = qmath::random_separable_two_qubit(rng, 1 + k % 6);
        worst = std::min(worst, witness_w(rho));
    }
    EXPECT_GE(worst, -1e-12);
}

TEST(WitnessTest, BoundedBelow) {
    Rng rng = make_stream(5, 0);
    for (int k = 0; k < 1000; ++k) {
        EXPECT_GE(witness_w(qmath::random_density_matrix({2, 2}, rng)), -1.0 - 1e-12);
    }
}

TEST(WitnessTest, NotLocalUnitaryInvariant) {
    Rng rng = make_stream(6, 0);
    DensityMatrix s = noise::singlet_state();
    DensityMatrix rotated = qmath::conjugate(s, random_local(rng));
    EXPECT_GT(std::abs(witness_w(rotated) - witness_w(s)), 1e-3);
}

TEST(ChshTest, Examples) {
    ChshSettings opt = singlet_optimal_chsh_settings();
    EXPECT_NEAR(chsh(noise::singlet_state(), opt), 2.0 * kSqrt2, 1e-9);
    EXPECT_NEAR(chsh(noise::dephased_singlet(0.5), opt), kSqrt2 * 1.5, 1e-12);
    EXPECT_NEAR(chsh(noise::dephased_singlet(0.5), opt), 2.1213, 1e-4);
    EXPECT_NEAR(chsh_max(noise::singlet_state()).value, 2.0 * kSqrt2, 1e-12);
    EXPECT_NEAR(chsh_max(noise::rho_mix()).value, 2.0, 1e-12);
    EXPECT_NEAR(chsh_max(noise::dephased_singlet(0.6)).value, 2.0 * std::sqrt(1.16), 1e-12);
    EXPECT_NEAR(chsh_max(noise::dephased_singlet(0.6)).value, 2.1541, 1e-4);
}

TEST(ChshTest, EtaClosedForm) {
    for (int k = 0; k <= 20; ++k) {
        double eta = k / 20.0;
        double m = 1.0 - eta;
        EXPECT_NEAR(chsh_max(noise::dephased_singlet(eta)).value, 2.0 * std::sqrt(1.0 + m * m), 1e-12);
    }
}

TEST(ChshTest, ProductStatesObeyClassicalBound) {
    Rng rng = make_stream(7, 0);
    for (int k = 0; k < 1000; ++k) {
        DensityMatrix rho = qmath::random_separable_two_qubit(rng, 1);
        ChshSettings s{random_axis(rng), random_axis(rng), random_axis(rng), random_axis(rng)};
        EXPECT_LE(chsh(rho, s), 2.0 + 1e-12);
    }
}

TEST(ChshTest, FixedSettingsNeverExceedMaximum) {
    Rng rng = make_stream(8, 0);
    for (int k = 0; k < 1000; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        ChshMax best = chsh_max(rho);
        ChshSettings s{random_axis(rng), random_axis(rng), random_axis(rng), random_axis(rng)};
        EXPECT_LE(chsh(rho, s), best.value + 1e-9);
        EXPECT_NEAR(chsh(rho, best.settings), best.value, 1e-6);
    }
}

TEST(ChshTest, Tsirelson) {
    Rng rng = make_stream(9, 0);
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
        std::size_t rank = 1 + k % 4;
        worst = std::max(worst, chsh_max(qmath::random_density_matrix({2, 2}, rng, rank)).value);
    }
    EXPECT_LE(worst, 2.0 * kSqrt2 + 1e-9);
}

TEST(ChshTest, AbsoluteValueIgnoresSign) {
    ChshSettings opt = singlet_optimal_chsh_settings();
    ChshSettings flipped = opt;
    for (double &x : flipped.b0) {
        x = -x;
    }
    for (double &x : flipped.b1) {
        x = -x;
    }
    EXPECT_NEAR(chsh(noise::singlet_state(), flipped), chsh(noise::singlet_state(), opt), 1e-12);
}

TEST(PptTest, Examples) {
    PptReport s = ppt_report(noise::singlet_state());
    const std::array<double, 4> es{0.5, 0.5, 0.5, -0.5};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(s.eigenvalues[k], es[k], 1e-12);
    }
    EXPECT_NEAR(s.negativity, 0.5, 1e-12);
    PptReport d = ppt_report(noise::dephased_singlet(0.6));
    const std::array<double, 4> ed{0.5, 0.5, 0.2, -0.2};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(d.eigenvalues[k], ed[k], 1e-12);
    }
    EXPECT_NEAR(d.negativity, 0.2, 1e-12);
    EXPECT_GE(ppt_report(noise::rho_dist()).eigenvalues[3], -1e-10);
}

TEST(PptTest, DephasedFamilyGrid) {
    for (int k = 0; k <= 100; ++k) {
        double eta = k / 100.0;
        std::array<double, 4> expected{0.5, 0.5, (1.0 - eta) / 2.0, -(1.0 - eta) / 2.0};
        std::sort(expected.begin(), expected.end(), std::greater<>());
        PptReport r = ppt_report(noise::dephased_singlet(eta));
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(r.eigenvalues[i], expected[i], 1e-10);
        }
    }
}

TEST(PptTest, NegativityAgreesWithConcurrence) {
    Rng rng = make_stream(10, 0);
    int entangled = 0;
    for (int k = 0; k < 1000; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng, 1 + k % 4);
        double c = concurrence(rho);
        double n = ppt_report(rho).negativity;
        if (c > 1e-6) {
            EXPECT_GT(n, 1e-9);
            ++entangled;
        } else if (c == 0.0) {
            EXPECT_LT(n, 1e-9);
        }
    }
    EXPECT_GT(entangled, 100);
    EXPECT_NEAR(concurrence(noise::singlet_state()), 1.0, 1e-9);
}

TEST(PptTest, NegativityMatchesEigenSpectrum) {
    Rng rng = make_stream(11, 0);
    for (int k = 0; k < 100; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        Eigen::Matrix4cd r = to_eigen(rho.matrix());
        Eigen::Matrix4cd pt;
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                int a = i >> 1, b = i & 1, c = j >> 1, d = j & 1;
                pt(i, j) = r(a * 2 + d, c * 2 + b);
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt);
        double neg = 0.0;
        for (int i = 0; i < 4; ++i) {
            neg += std::max(0.0, -es.eigenvalues()(i));
        }
        EXPECT_NEAR(ppt_report(rho).negativity, neg, 1e-12);
        EXPECT_NEAR(ppt_report(rho).eigenvalues[3], es.eigenvalues()(0), 1e-12);
    }
}

TEST(InvarianceTest, LocalUnitaries) {
    Rng rng = make_stream(12, 0);
    for (int k = 0; k < 200; ++k) {
        DensityMatrix rho = qmath::random_density_matrix({2, 2}, rng);
        DensityMatrix rotated = qmath::conjugate(rho, random_local(rng));
        EXPECT_NEAR(ppt_report(rotated).negativity, ppt_report(rho).negativity, 1e-9);
        EXPECT_NEAR(chsh_max(rotated).value, chsh_max(rho).value, 1e-9);
    }
}

TEST(SettingLabelTest, RoundTrip) {
    EXPECT_EQ(setting_label(kAxisX), "X");
    EXPECT_EQ(setting_label(kAxisY), "Y");
    EXPECT_EQ(setting_label(kAxisZ), "Z");
    BlochVector d{1.0 / kSqrt2, 0.0, -1.0 / kSqrt2};
    BlochVector back = parse_setting_label(setting_label(d));
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(back[k], d[k]);
    }
    EXPECT_EQ(parse_setting_label("Z"), kAxisZ);
    EXPECT_THROW(parse_setting_label("1:1:0"), OutOfRange);
    EXPECT_THROW(parse_setting_label("Q"), OutOfRange);
}

}  // namespace
}  // namespace gmesim::certify
