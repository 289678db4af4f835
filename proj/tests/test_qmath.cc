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
#include <cmath>
#include <numeric>

#include "gmesim/qmath.h"
#include "gmesim/random.h"

namespace gmesim::qmath {
namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            e(r, c) = m(r, c);
        }
    }
    return e;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng &rng) {
    std::normal_distribution<double> g;
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = Complex(g(rng), g(rng));
        }
    }
    return m;
}

// Index-loop reference for partial trace over the complement of `keep`.
ComplexMatrix brute_partial_trace(const ComplexMatrix &rho, const Dims &dims, const std::vector<std::size_t> &keep) {
    const std::size_t n = dims.size();
    auto digits = [&](std::size_t idx) {
        std::vector<std::size_t> d(n);
        for (std::size_t k = n; k-- > 0;) {
            d[k] = idx % dims[k];
            idx /= dims[k];
        }
        return d;
    };
    std::size_t kept_dim = 1;
    for (std::size_t k : keep) {
        kept_dim *= dims[k];
    }
    auto kept_index = [&](const std::vector<std::size_t> &d) {
        std::size_t idx = 0;
        for (std::size_t k : keep) {
            idx = idx * dims[k] + d[k];
        }
        return idx;
    };
    ComplexMatrix out(kept_dim, kept_dim);
    const std::size_t total = rho.rows();
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            auto dr = digits(r), dc = digits(c);
            bool traced_equal = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (std::find(keep.begin(), keep.end(), k) == keep.end() && dr[k] != dc[k]) {
                    traced_equal = false;
                }
            }
            if (traced_equal) {
                out(kept_index(dr), kept_index(dc)) += rho(r, c);
            }
        }
    }
    return out;
}

TEST(ComplexMatrixTest, RejectsNonFiniteEntries) {
    EXPECT_THROW(ComplexMatrix(1, 1, {Complex(std::nan(""), 0.0)}), Error);
}

TEST(ComplexMatrixTest, MultiplicationMatchesEigen) {
    Rng rng(11);
    ComplexMatrix a = random_matrix(3, 4, rng);
    ComplexMatrix b = random_matrix(4, 2, rng);
    Eigen::MatrixXcd ref = to_eigen(a) * to_eigen(b);
    ComplexMatrix p = a * b;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            EXPECT_NEAR(std::abs(p(r, c) - ref(r, c)), 0.0, 1e-12);
        }
    }
    EXPECT_THROW(b * b, DimensionMismatch);
}

TEST(KronTest, MatchesIndexDefinition) {
    Rng rng(3);
    ComplexMatrix a = random_matrix(2, 3, rng);
    ComplexMatrix b = random_matrix(3, 2, rng);
    ComplexMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t p = 0; p < 3; ++p) {
                for (std::size_t q = 0; q < 2; ++q) {
                    EXPECT_EQ(k(i * 3 + p, j * 2 + q), a(i, j) * b(p, q));
                }
            }
        }
    }
}

TEST(KronTest, AssociativeAndBilinear) {
    Rng rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexMatrix a = random_matrix(2, 2, rng);
        ComplexMatrix b = random_matrix(2, 3, rng);
        ComplexMatrix c = random_matrix(3, 2, rng);
        EXPECT_LT(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), 1e-12);
        ComplexMatrix a2 = random_matrix(2, 2, rng);
        Complex s(0.3, -1.7);
        EXPECT_LT(max_abs_diff(kron(a + a2 * s, b), kron(a, b) + kron(a2, b) * s), 1e-12);
    }
}

TEST(KronTest, MixedProductProperty) {
    Rng rng(8);
    ComplexMatrix a = random_matrix(2, 2, rng), b = random_matrix(3, 3, rng);
    ComplexMatrix c = random_matrix(2, 2, rng), d = random_matrix(3, 3, rng);
    EXPECT_LT(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)), 1e-11);
}

TEST(PauliTest, AlgebraRelations) {
    ComplexMatrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    ComplexMatrix id = ComplexMatrix::identity(2);
    EXPECT_LT(max_abs_diff(x * x, id), 1e-15);
    EXPECT_LT(max_abs_diff(y * y, id), 1e-15);
    EXPECT_LT(max_abs_diff(z * z, id), 1e-15);
    EXPECT_LT(max_abs_diff(x * y, z * Complex(0.0, 1.0)), 1e-15);
}

TEST(EigTest, MatchesEigenOnRandomHermitian) {
    Rng rng(21);
    for (std::size_t n : {1u, 2u, 3u, 4u, 7u, 16u}) {
        ComplexMatrix g = random_matrix(n, n, rng);
        ComplexMatrix h = g + g.adjoint();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
        Eigensystem eig = hermitian_eig(h);
        ASSERT_EQ(eig.values.size(), n);
        for (std::size_t k = 0; k < n; ++k) {
            EXPECT_NEAR(eig.values[k], ref.eigenvalues()(static_cast<Eigen::Index>(n - 1 - k)), 1e-10);
        }
        EXPECT_TRUE(std::is_sorted(eig.values.rbegin(), eig.values.rend()));
        // H V = V diag(values), V unitary.
        EXPECT_LT(unitarity_error(eig.vectors), 1e-10);
        std::vector<Complex> diag(eig.values.begin(), eig.values.end());
        EXPECT_LT(max_abs_diff(h * eig.vectors, eig.vectors * ComplexMatrix::diagonal(diag)), 1e-9);
    }
}

TEST(EigTest, SmallKnownSpectra) {
    std::vector<Complex> d{3.0, 1.0, 2.0};
    std::vector<double> ev = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    EXPECT_EQ(ev, (std::vector<double>{3.0, 2.0, 1.0}));
    ev = hermitian_eigenvalues(pauli_x());
    EXPECT_NEAR(ev[0], 1.0, 1e-14);
    EXPECT_NEAR(ev[1], -1.0, 1e-14);
}

TEST(EigTest, SingletPartialTranspose) {
    const double s = 1.0 / std::sqrt(2.0);
    PureState singlet({2, 2}, {0.0, -s, s, 0.0});
    std::vector<double> ev = hermitian_eigenvalues(partial_transpose(DensityMatrix::from_pure(singlet), 1));
    const std::array<double, 4> expected{0.5, 0.5, 0.5, -0.5};
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(ev[k], expected[k], 1e-12);
    }
    std::vector<Complex> flipped = kron(pauli_x(), pauli_x()) * singlet.amplitudes();
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(std::abs(flipped[k] + singlet.amplitudes()[k]), 0.0, 1e-15);
    }
}

TEST(EigTest, DegenerateSpectrum) {
    ComplexMatrix h = ComplexMatrix::identity(4) * Complex(2.5);
    std::vector<double> ev = hermitian_eigenvalues(h);
    for (double x : ev) {
        EXPECT_NEAR(x, 2.5, 1e-14);
    }
}

TEST(EigTest, SumEqualsTrace) {
    Rng rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        DensityMatrix rho = random_density_matrix({2, 2}, rng);
        std::vector<double> ev = hermitian_eigenvalues(rho.matrix());
        EXPECT_NEAR(std::accumulate(ev.begin(), ev.end(), 0.0), 1.0, 1e-12);
    }
}

TEST(EigTest, RejectsNonHermitian) {
    ComplexMatrix m{{1.0, 1.0}, {0.0, 1.0}};
    EXPECT_THROW(hermitian_eig(m), NotHermitian);
}

TEST(StateTest, PureStateValidation) {
    EXPECT_THROW(PureState({2}, {1.0, 1.0}), InvalidState);
    EXPECT_THROW(PureState({2, 2}, {1.0, 0.0}), DimensionMismatch);
    PureState p = PureState::normalized({2}, {1.0, 1.0});
    EXPECT_NEAR(std::abs(p.amplitudes()[0]), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StateTest, DensityMatrixValidation) {
    EXPECT_THROW(DensityMatrix({2}, ComplexMatrix{{1.0, 0.5}, {0.0, 0.0}}), InvalidState);
    EXPECT_THROW(DensityMatrix({2}, ComplexMatrix{{0.6, 0.0}, {0.0, 0.6}}), InvalidState);
    EXPECT_THROW(DensityMatrix({2}, ComplexMatrix{{1.2, 0.0}, {0.0, -0.2}}), InvalidState);
    EXPECT_THROW(DensityMatrix({3}, ComplexMatrix::identity(2) * Complex(0.5)), DimensionMismatch);
}

TEST(PartialTraceTest, MatchesBruteForce) {
    Rng rng(9);
    const Dims dims{2, 3, 2};
    DensityMatrix rho = random_density_matrix(dims, rng);
    for (const std::vector<std::size_t> &keep :
         std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 2}, {0, 1}, {1, 2}, {0, 1, 2}}) {
        DensityMatrix red = partial_trace(rho, keep);
        EXPECT_LT(max_abs_diff(red.matrix(), brute_partial_trace(rho.matrix(), dims, keep)), 1e-12);
    }
}

TEST(PartialTraceTest, ProductStatesFactor) {
    Rng rng(10);
    DensityMatrix a = random_density_matrix({2}, rng);
    DensityMatrix b = random_density_matrix({3}, rng);
    DensityMatrix ab({2, 3}, kron(a.matrix(), b.matrix()));
    const std::array<std::size_t, 1> k0{0}, k1{1};
    EXPECT_LT(max_abs_diff(partial_trace(ab, k0).matrix(), a.matrix()), 1e-12);
    EXPECT_LT(max_abs_diff(partial_trace(ab, k1).matrix(), b.matrix()), 1e-12);
}

TEST(PartialTraceTest, RejectsBadSubsystems) {
    DensityMatrix rho = DensityMatrix::maximally_mixed({2, 2});
    const std::array<std::size_t, 1> out_of_range{2};
    const std::array<std::size_t, 2> duplicate{0, 0};
    EXPECT_THROW(partial_trace(rho, out_of_range), BadSubsystem);
    EXPECT_THROW(partial_trace(rho, duplicate), BadSubsystem);
    EXPECT_THROW(partial_trace(rho, std::span<const std::size_t>{}), BadSubsystem);
}

TEST(PartialTransposeTest, DoubleTransposeIsIdentity) {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        // Separable states stay valid density matrices under partial transposition.
        DensityMatrix rho = random_separable_two_qubit(rng);
        ComplexMatrix once = partial_transpose(rho, 1);
        ComplexMatrix back = partial_transpose(DensityMatrix({2, 2}, once), 1);
        EXPECT_LT(max_abs_diff(back, rho.matrix()), 1e-12);
    }
}

TEST(PartialTransposeTest, FullTransposeOfBothFactors) {
    Rng rng(13);
    DensityMatrix rho = random_density_matrix({2, 2}, rng);
    ComplexMatrix pt0 = partial_transpose(rho, 0);
    ComplexMatrix pt1 = partial_transpose(rho, 1);
    // PT_A = (PT_B)^T for a bipartite operator.
    EXPECT_LT(max_abs_diff(pt0, pt1.transpose()), 1e-14);
}

TEST(FidelityTest, KnownValuesAndRange) {
    PureState zero = PureState::basis({2}, 0);
    PureState plus = PureState::normalized({2}, {1.0, 1.0});
    DensityMatrix rz = DensityMatrix::from_pure(zero);
    EXPECT_NEAR(fidelity_pure(rz, plus), 0.5, 1e-14);
    EXPECT_NEAR(fidelity(rz, DensityMatrix::from_pure(plus)), 0.5, 1e-10);
    EXPECT_NEAR(fidelity(rz, rz), 1.0, 1e-10);
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        DensityMatrix a = random_density_matrix({2, 2}, rng);
        DensityMatrix b = random_density_matrix({2, 2}, rng);
        double f = fidelity(a, b);
        EXPECT_GE(f, -1e-12);
        EXPECT_LE(f, 1.0 + 1e-12);
        EXPECT_NEAR(f, fidelity(b, a), 1e-9);
        EXPECT_NEAR(fidelity(a, a), 1.0, 1e-9);
    }
}

TEST(FidelityTest, CommutingStatesClassicalFormula) {
    std::vector<Complex> p{0.5, 0.3, 0.2}, q{0.1, 0.6, 0.3};
    DensityMatrix a({3}, ComplexMatrix::diagonal(p));
    DensityMatrix b({3}, ComplexMatrix::diagonal(q));
    double bc = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        bc += std::sqrt(p[k].real() * q[k].real());
    }
    EXPECT_NEAR(fidelity(a, b), bc * bc, 1e-12);
}

TEST(TraceDistanceTest, OrthogonalAndIdentical) {
    DensityMatrix a = DensityMatrix::from_pure(PureState::basis({2}, 0));
    DensityMatrix b = DensityMatrix::from_pure(PureState::basis({2}, 1));
    EXPECT_NEAR(trace_distance(a.matrix(), b.matrix()), 1.0, 1e-14);
    EXPECT_NEAR(trace_distance(a.matrix(), a.matrix()), 0.0, 1e-14);
}

TEST(EntropyTest, MixedAndPure) {
    EXPECT_NEAR(entropy_bits(DensityMatrix::maximally_mixed({2, 2})), 2.0, 1e-12);
    EXPECT_NEAR(entropy_bits(DensityMatrix::from_pure(PureState::basis({2, 2}, 3))), 0.0, 1e-12);
}

TEST(SchmidtTest, ProductAndBell) {
    PureState product = PureState::normalized({2, 2}, {1.0, 1.0, 1.0, 1.0});
    const std::array<std::size_t, 1> first{0};
    std::vector<double> s = schmidt_coefficients(product, first);
    EXPECT_NEAR(s[0], 1.0, 1e-12);
    EXPECT_NEAR(s[1], 0.0, 1e-12);
    PureState bell = PureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
    s = schmidt_coefficients(bell, first);
    EXPECT_NEAR(s[0], 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(s[1], 1.0 / std::sqrt(2.0), 1e-12);
}

TEST(NegativityTest, BellStateIsOneHalf) {
    PureState bell = PureState::normalized({2, 2}, {1.0, 0.0, 0.0, 1.0});
    EXPECT_NEAR(negativity(DensityMatrix::from_pure(bell)), 0.5, 1e-12);
    EXPECT_NEAR(negativity(DensityMatrix::maximally_mixed({2, 2})), 0.0, 1e-12);
}

TEST(RandomTest, UnitaryAndStatesAreValid) {
    Rng rng(15);
    for (int trial = 0; trial < 10; ++trial) {
        EXPECT_LT(unitarity_error(random_unitary(4, rng)), 1e-12);
        DensityMatrix rho = random_density_matrix({2, 2}, rng, 2);
        std::vector<double> ev = hermitian_eigenvalues(rho.matrix());
        EXPECT_NEAR(ev[2], 0.0, 1e-12);
    }
}

TEST(RandomTest, StreamsAreDeterministicAndDistinct) {
    EXPECT_EQ(derive_stream_seed(7, 3), derive_stream_seed(7, 3));
    EXPECT_NE(derive_stream_seed(7, 3), derive_stream_seed(7, 4));
    EXPECT_NE(derive_stream_seed(7, 3), derive_stream_seed(8, 3));
}

}  // namespace
}  // namespace gmesim::qmath
