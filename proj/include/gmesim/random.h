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

#ifndef GMESIM_RANDOM_H
#define GMESIM_RANDOM_H

#include <cstdint>
#include <random>

#include "gmesim/qmath.h"

namespace gmesim {

using Rng = std::mt19937_64;

/// Seed for the independent stream `stream` of a run seeded with `seed`.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

inline Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
    return Rng(derive_stream_seed(seed, stream));
}

namespace qmath {

/// Haar-random pure state.
PureState random_pure_state(const Dims &dims, Rng &rng);

/// Ginibre-induced mixed state G G^dagger / tr, G of shape n x rank.
DensityMatrix random_density_matrix(const Dims &dims, Rng &rng, std::size_t rank = 0);

/// Haar-random n x n unitary (QR of a Ginibre matrix with phase fix).
ComplexMatrix random_unitary(std::size_t n, Rng &rng);

/// Convex mixture of `terms` random two-qubit product states.
DensityMatrix random_separable_two_qubit(Rng &rng, std::size_t terms = 4);

}  // namespace qmath
}  // namespace gmesim

#endif
