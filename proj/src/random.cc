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

#include "gmesim/random.h"

#include <cmath>

namespace gmesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

qmath::Complex gaussian(Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    double re = n(rng);
    double im = n(rng);
    return {re, im};
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

namespace qmath {

PureState random_pure_state(const Dims &dims, Rng &rng) {
    std::vector<Complex> amps(dims_product(dims));
    for (Complex &z : amps) {
        z = gaussian(rng);
    }
    return PureState::normalized(dims, std::move(amps));
}

DensityMatrix random_density_matrix(const Dims &dims, Rng &rng, std::size_t rank) {
    std::size_t n = dims_product(dims);
    if (rank == 0) {
        rank = n;
    }
    ComplexMatrix g(n, rank);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < rank; ++c) {
            g(r, c) = gaussian(rng);
        }
    }
    ComplexMatrix m = g * g.adjoint();
    m *= 1.0 / m.trace().real();
    return DensityMatrix(dims, std::move(m));
}

ComplexMatrix random_unitary(std::size_t n, Rng &rng) {
    // Modified Gram-Schmidt on the columns of a Ginibre matrix; column phases
    // are fixed by the positive diagonal of R, which gives the Haar measure.
    ComplexMatrix q(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            q(r, c) = gaussian(rng);
        }
    }
    for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            Complex proj = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                proj += std::conj(q(r, p)) * q(r, c);
            }
            for (std::size_t r = 0; r < n; ++r) {
                q(r, c) -= proj * q(r, p);
            }
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            norm += std::norm(q(r, c));
        }
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < n; ++r) {
            q(r, c) /= norm;
        }
    }
    return q;
}

DensityMatrix random_separable_two_qubit(Rng &rng, std::size_t terms) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> weights(terms);
    double total = 0.0;
    for (double &w : weights) {
        w = u(rng);
        total += w;
    }
    ComplexMatrix m(4, 4);
    for (std::size_t t = 0; t < terms; ++t) {
        PureState a = random_pure_state({2}, rng);
        PureState b = random_pure_state({2}, rng);
        m += kron(a.projector(), b.projector()) * Complex(weights[t] / total);
    }
    return DensityMatrix({2, 2}, std::move(m));
}

}  // namespace qmath
}  // namespace gmesim
