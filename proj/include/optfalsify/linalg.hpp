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
#include <vector>

#include "optfalsify/matrix.hpp"

namespace optf {

/// Relative eigenvalue cutoff (fraction of the largest eigenvalue) below which
/// a direction is treated as belonging to the kernel.
inline constexpr double kDefaultRankTol = 1e-10;

/// Hermiticity tolerance used when validating operators.
inline constexpr double kHermitianTol = 1e-10;

inline constexpr int kJacobiSweepBudget = 100;
inline constexpr double kJacobiOffDiagonalTol = 1e-14;

enum class Subsystem { A, B };

/// Kronecker product, (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l].
ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b);

/// Reduces an operator on A (x) B to the `keep` factor.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b, Subsystem keep);

struct HermitianEig {
    std::vector<double> eigenvalues;  // descending
    ComplexMatrix eigenvectors;       // columns, orthonormal
};

/// Cyclic complex Jacobi diagonalization.
///
/// Throws NotHermitian when ||m - m^dagger||_max > tol and NoConvergence when
/// the off-diagonal mass does not drop below 1e-14 ||m||_F within 100 sweeps.
/// Eigenvalues come back sorted descending; ties keep the order in which the
/// sweeps left them.
HermitianEig hermitian_eig(const ComplexMatrix &m, double tol = kHermitianTol);

/// Number of eigenvalues above rank_tol * lambda_max.
std::size_t numerical_rank(const HermitianEig &eig, double rank_tol = kDefaultRankTol);

/// Rank of a PSD operator (validated like support_projector).
std::size_t psd_rank(const ComplexMatrix &m, double rank_tol = kDefaultRankTol);

/// Orthogonal projector onto the span of eigenvectors with lambda > rank_tol * lambda_max.
/// Throws NotPSD if an eigenvalue falls below -rank_tol * lambda_max.
ComplexMatrix support_projector(const ComplexMatrix &m, double rank_tol = kDefaultRankTol);

/// I - support_projector(m).
ComplexMatrix kernel_projector(const ComplexMatrix &m, double rank_tol = kDefaultRankTol);

/// Support eigenvectors (columns, descending eigenvalue) of a PSD operator.
ComplexMatrix support_basis(const ComplexMatrix &m, double rank_tol = kDefaultRankTol);

/// |A>> = sum_ij A_ij |i> (x) |j>, i.e. the row-major flattening as a column.
ComplexMatrix mat_to_doubleket(const ComplexMatrix &a);

/// Inverse of mat_to_doubleket for a rows x cols operator.
ComplexMatrix doubleket_to_mat(const ComplexMatrix &v, std::size_t rows, std::size_t cols);

/// Square variant; the vector length must be a perfect square.
ComplexMatrix doubleket_to_mat(const ComplexMatrix &v);

/// Extends the orthonormal columns of `basis` to a full orthonormal basis of
/// C^n (n = basis.rows()). New columns are Gram-Schmidt residuals of canonical
/// basis vectors, greedily taking the largest residual (lowest index on ties).
ComplexMatrix orthonormal_completion(const ComplexMatrix &basis);

/// Modified Gram-Schmidt (two passes) on the columns of m.
ComplexMatrix orthonormalize_columns(const ComplexMatrix &m);

}  // namespace optf
