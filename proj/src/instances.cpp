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

#include "optfalsify/instances.hpp"

#include <cmath>

#include "optfalsify/error.hpp"
#include "optfalsify/linalg.hpp"

namespace optf::instances {

ComplexMatrix gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream &rng) {
    ComplexMatrix g(rows, cols);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double re = rng.gaussian();
        const double im = rng.gaussian();
        g[i] = complex{re, im};
    }
    return g;
}

ComplexMatrix random_ket(std::size_t dim, RandomStream &rng) {
    ComplexMatrix v = gaussian_matrix(dim, 1, rng);
    v *= 1.0 / norm(v);
    return v;
}

ComplexMatrix random_unitary(std::size_t dim, RandomStream &rng) {
    return orthonormalize_columns(gaussian_matrix(dim, dim, rng));
}

ComplexMatrix random_hermitian(std::size_t dim, RandomStream &rng) {
    const ComplexMatrix g = gaussian_matrix(dim, dim, rng);
    return 0.5 * (g + g.adjoint());
}

QuantumState random_state(std::size_t dim, std::size_t rank, RandomStream &rng) {
    if (rank == 0 || rank > dim) {
        throw Error(ErrorKind::OutOfRange, "rank must lie in [1, dim]");
    }
    const ComplexMatrix g = gaussian_matrix(dim, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho *= 1.0 / rho.trace().real();
    return QuantumState(std::move(rho));
}

QuantumState random_state(std::size_t dim, RandomStream &rng) {
    return random_state(dim, dim, rng);
}

KrausChannel random_channel(std::size_t dim, std::size_t n_kraus, RandomStream &rng) {
    if (n_kraus == 0) {
        throw Error(ErrorKind::OutOfRange, "a channel needs at least one Kraus operator");
    }
    const ComplexMatrix u = random_unitary(dim * n_kraus, rng);
    std::vector<ComplexMatrix> kraus(n_kraus, ComplexMatrix(dim, dim));
    for (std::size_t k = 0; k < n_kraus; ++k) {
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                kraus[k](i, j) = u(i * n_kraus + k, j);
            }
        }
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel random_atomic_channel(std::size_t dim_in, std::size_t dim_out, RandomStream &rng) {
    ComplexMatrix a = gaussian_matrix(dim_out, dim_in, rng);
    const ComplexMatrix gram = a.adjoint() * a;
    const double top = hermitian_eig(gram, 1e-8 * std::max(1.0, gram.max_abs())).eigenvalues.front();
    // Operator norm in [0.5, 1) keeps sum A^dagger A <= I with margin.
    const double target = 0.5 + 0.5 * rng.uniform();
    a *= target / std::sqrt(top);
    return KrausChannel({std::move(a)});
}

}  // namespace optf::instances
