// Copyright 2026 The optfalsify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>

#include "optfalsify/matrix.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/random.hpp"

namespace optf::instances {

// Random problem instances for property suites. All draws come from the
// caller's stream; nothing here touches global state.

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream &rng);

/// Uniformly random unit vector.
ComplexMatrix random_ket(std::size_t dim, RandomStream &rng);

/// Haar-like unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, RandomStream &rng);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t dim, RandomStream &rng);

/// Trace-one state of exactly the given rank (1 <= rank <= dim).
QuantumState random_state(std::size_t dim, std::size_t rank, RandomStream &rng);

/// Trace-one full-rank state.
QuantumState random_state(std::size_t dim, RandomStream &rng);

/// Trace-preserving channel with n_kraus terms, cut from a random isometry.
KrausChannel random_channel(std::size_t dim, std::size_t n_kraus, RandomStream &rng);

/// Single Kraus operator with operator norm at most 1.
KrausChannel random_atomic_channel(std::size_t dim_in, std::size_t dim_out, RandomStream &rng);

}  // namespace optf::instances
