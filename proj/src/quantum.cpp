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

#include "optfalsify/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optfalsify/error.hpp"

namespace optf {

namespace {

void require_square(const ComplexMatrix &m, const char *what) {
    if (!m.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + " must be a square matrix");
    }
}

}  // namespace

QuantumState::QuantumState(ComplexMatrix matrix, double rank_tol) : matrix_(std::move(matrix)) {
    require_square(matrix_, "state");
    if (hermiticity_defect(matrix_) > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian, "state is not Hermitian within 1e-10");
    }
    // Throws NotPSD on significantly negative eigenvalues; small ones are clamped away.
    (void)psd_rank(matrix_, rank_tol);
    trace_ = matrix_.trace().real();
    if (!(trace_ > 0.0)) {
        throw Error(ErrorKind::InvalidState, "state has zero trace");
    }
    if (trace_ > 1.0 + kValidationTol) {
        throw Error(ErrorKind::InvalidState, "state trace " + std::to_string(trace_) + " exceeds 1");
    }
    deterministic_ = std::abs(trace_ - 1.0) <= kValidationTol;
}

QuantumState QuantumState::pure(const ComplexMatrix &ket) {
    if (!ket.is_column()) {
        throw Error(ErrorKind::DimensionMismatch, "pure state needs a column vector");
    }
    return QuantumState(outer(ket, ket));
}

Effect::Effect(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    require_square(matrix_, "effect");
    if (hermiticity_defect(matrix_) > kHermitianTol) {
        throw Error(ErrorKind::NotHermitian, "effect is not Hermitian within 1e-10");
    }
    const HermitianEig eig = hermitian_eig(matrix_);
    if (eig.eigenvalues.back() < -kValidationTol || eig.eigenvalues.front() > 1.0 + kValidationTol) {
        throw Error(ErrorKind::InvalidEffect, "effect spectrum leaves [0, 1]: [" +
                                                  std::to_string(eig.eigenvalues.back()) + ", " +
                                                  std::to_string(eig.eigenvalues.front()) + "]");
    }
}

KrausChannel::KrausChannel(std::vector<ComplexMatrix> kraus) : kraus_(std::move(kraus)) {
    if (kraus_.empty()) {
        throw Error(ErrorKind::InvalidChannel, "channel needs at least one Kraus operator");
    }
    const std::size_t rows = kraus_.front().rows();
    const std::size_t cols = kraus_.front().cols();
    ComplexMatrix sum(cols, cols);
    for (const auto &a : kraus_) {
        if (a.rows() != rows || a.cols() != cols) {
            throw Error(ErrorKind::DimensionMismatch, "Kraus operators have different shapes");
        }
        sum += a.adjoint() * a;
    }
    const HermitianEig eig = hermitian_eig(sum, kHermitianTol * std::max(1.0, sum.max_abs()));
    if (eig.eigenvalues.front() > 1.0 + kValidationTol) {
        throw Error(ErrorKind::InvalidChannel,
                    "sum of A^dagger A exceeds identity (max eigenvalue " + std::to_string(eig.eigenvalues.front()) +
                        ")");
    }
    deterministic_ = std::all_of(eig.eigenvalues.begin(), eig.eigenvalues.end(),
                                 [](double l) { return std::abs(l - 1.0) <= kValidationTol; });
}

KrausChannel KrausChannel::identity(std::size_t dim) {
    return KrausChannel({ComplexMatrix::identity(dim)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix &u) {
    return KrausChannel({u});
}

KrausChannel compose(const KrausChannel &second, const KrausChannel &first) {
    if (second.dim_in() != first.dim_out()) {
        throw Error(ErrorKind::DimensionMismatch, "sequential composition: output/input dimensions differ");
    }
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(second.kraus().size() * first.kraus().size());
    for (const auto &b : second.kraus()) {
        for (const auto &a : first.kraus()) {
            kraus.push_back(b * a);
        }
    }
    return KrausChannel(std::move(kraus));
}

KrausChannel parallel(const KrausChannel &a, const KrausChannel &b) {
    std::vector<ComplexMatrix> kraus;
    kraus.reserve(a.kraus().size() * b.kraus().size());
    for (const auto &ka : a.kraus()) {
        for (const auto &kb : b.kraus()) {
            kraus.push_back(tensor(ka, kb));
        }
    }
    return KrausChannel(std::move(kraus));
}

Purification::Purification(ComplexMatrix state_vector, std::size_t dim_a, std::size_t dim_b)
    : vector_(std::move(state_vector)), dim_a_(dim_a), dim_b_(dim_b) {
    if (!vector_.is_column() || vector_.rows() != dim_a * dim_b) {
        throw Error(ErrorKind::DimensionMismatch, "purification vector length must be dim_a * dim_b");
    }
    if (std::abs(norm(vector_) - 1.0) > kValidationTol) {
        throw Error(ErrorKind::NotNormalized, "purification vector is not unit norm");
    }
}

ComplexMatrix Purification::marginal() const {
    return partial_trace(outer(vector_, vector_), dim_a_, dim_b_, Subsystem::A);
}

double born_probability(const QuantumState &rho, const Effect &e) {
    if (rho.dim() != e.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "state and effect act on different dimensions");
    }
    const ComplexMatrix &r = rho.matrix();
    const ComplexMatrix &f = e.matrix();
    complex t = 0.0;
    for (std::size_t i = 0; i < r.rows(); ++i) {
        for (std::size_t j = 0; j < r.cols(); ++j) {
            t += r(i, j) * f(j, i);
        }
    }
    if (std::abs(t.imag()) > 1e-8) {
        throw Error(ErrorKind::NumericalContamination,
                    "Tr(rho E) has imaginary part " + std::to_string(t.imag()));
    }
    return std::clamp(t.real(), 0.0, 1.0);
}

QuantumState apply_channel(const KrausChannel &ch, const QuantumState &rho) {
    if (ch.dim_in() != rho.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "channel input dimension " + std::to_string(ch.dim_in()) +
                                                      " vs state dimension " + std::to_string(rho.dim()));
    }
    ComplexMatrix out(ch.dim_out(), ch.dim_out());
    for (const auto &a : ch.kraus()) {
        out += a * rho.matrix() * a.adjoint();
    }
    return QuantumState(std::move(out));
}

Purification purify(const QuantumState &rho, double rank_tol) {
    if (!rho.deterministic()) {
        throw Error(ErrorKind::NotDeterministic,
                    "only trace-one states are purified (trace " + std::to_string(rho.trace()) + ")");
    }
    const HermitianEig eig = hermitian_eig(rho.matrix());
    const std::size_t dim_a = rho.dim();
    const std::size_t dim_b = numerical_rank(eig, rank_tol);
    ComplexMatrix psi(dim_a * dim_b, 1);
    for (std::size_t k = 0; k < dim_b; ++k) {
        const double amp = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
        for (std::size_t i = 0; i < dim_a; ++i) {
            psi[i * dim_b + k] = amp * eig.eigenvectors(i, k);
        }
    }
    // Dropping sub-tolerance eigenvalues leaves a norm defect of at most rank_tol * dim.
    psi *= 1.0 / norm(psi);
    return Purification(std::move(psi), dim_a, dim_b);
}

ComplexMatrix connecting_unitary(const Purification &psi1, const Purification &psi2) {
    if (psi1.dim_a() != psi2.dim_a() || psi1.dim_b() != psi2.dim_b()) {
        throw Error(ErrorKind::DimensionMismatch, "purifications must share the purifying system");
    }
    const ComplexMatrix rho1 = psi1.marginal();
    const ComplexMatrix rho2 = psi2.marginal();
    const double gap = max_abs_diff(rho1, rho2);
    if (gap > 1e-8) {
        throw Error(ErrorKind::NotSamePurifiedState, "marginals differ by " + std::to_string(gap));
    }
    const std::size_t dim_a = psi1.dim_a();
    const std::size_t dim_b = psi1.dim_b();
    const ComplexMatrix m1 = doubleket_to_mat(psi1.state_vector(), dim_a, dim_b);
    const ComplexMatrix m2 = doubleket_to_mat(psi2.state_vector(), dim_a, dim_b);

    // M_k = sum_i sqrt(l_i) |v_i><f_i^(k)| with f_i^(k) = M_k^dagger v_i / sqrt(l_i);
    // M1 W = M2 holds for any unitary W^dagger sending f_i^(1) to f_i^(2).
    const HermitianEig eig = hermitian_eig(0.5 * (rho1 + rho2));
    const std::size_t rank = std::min(numerical_rank(eig), dim_b);
    ComplexMatrix f1(dim_b, rank);
    ComplexMatrix f2(dim_b, rank);
    const ComplexMatrix m1_dag = m1.adjoint();
    const ComplexMatrix m2_dag = m2.adjoint();
    for (std::size_t i = 0; i < rank; ++i) {
        const ComplexMatrix v = eig.eigenvectors.col(i);
        const double scale = 1.0 / std::sqrt(eig.eigenvalues[i]);
        f1.set_col(i, scale * (m1_dag * v));
        f2.set_col(i, scale * (m2_dag * v));
    }
    const ComplexMatrix g1 = orthonormal_completion(orthonormalize_columns(f1));
    const ComplexMatrix g2 = orthonormal_completion(orthonormalize_columns(f2));
    const ComplexMatrix w_dag = g2 * g1.adjoint();
    // (I (x) U)|M>> = |M U^T>>, so U = W^T = conj(W^dagger).
    return w_dag.conj();
}

Discrimination perfectly_discriminable(const QuantumState &rho, const QuantumState &nu, double rank_tol) {
    if (rho.dim() != nu.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "states act on different dimensions");
    }
    const ComplexMatrix p_rho = support_projector(rho.matrix(), rank_tol);
    const ComplexMatrix p_nu = support_projector(nu.matrix(), rank_tol);
    Discrimination out{false, (p_rho * p_nu).max_abs(), std::nullopt};
    out.discriminable = out.support_overlap <= kOrthogonalSupportTol;
    if (out.discriminable) {
        const ComplexMatrix id = ComplexMatrix::identity(rho.dim());
        out.falsifiers = std::make_pair(id - p_rho, id - p_nu);
    }
    return out;
}

Compression compress(const QuantumState &rho, double rank_tol) {
    const ComplexMatrix basis = support_basis(rho.matrix(), rank_tol);
    if (basis.cols() == rho.dim()) {
        throw Error(ErrorKind::NotCompressible, "state has full rank; nothing to falsify or compress");
    }
    ComplexMatrix v = basis.adjoint();
    QuantumState compressed(v * rho.matrix() * basis, rank_tol);
    return Compression{std::move(v), std::move(compressed)};
}

std::vector<CanonicalTerm> canonical_form(const QuantumState &bipartite, std::size_t dim_a, double rank_tol) {
    if (dim_a == 0 || bipartite.dim() != dim_a * dim_a) {
        throw Error(ErrorKind::DimensionMismatch, "canonical form needs a state on C^d (x) C^d with d = " +
                                                      std::to_string(dim_a));
    }
    const HermitianEig eig = hermitian_eig(bipartite.matrix());
    const std::size_t rank = numerical_rank(eig, rank_tol);
    std::vector<CanonicalTerm> terms;
    terms.reserve(rank);
    for (std::size_t j = 0; j < rank; ++j) {
        const double weight = eig.eigenvalues[j];
        terms.push_back({std::sqrt(weight) * doubleket_to_mat(eig.eigenvectors.col(j), dim_a, dim_a), weight});
    }
    return terms;
}

LocalFalsifier local_falsifier(const ComplexMatrix &a_op, const ComplexMatrix &a) {
    if (!a.is_column() || a.rows() != a_op.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "|a> must live on the first factor of |A>>");
    }
    if (std::abs(norm(a) - 1.0) > kValidationTol) {
        throw Error(ErrorKind::NotNormalized, "|a> must be a unit vector");
    }
    if (a_op.max_abs() == 0.0) {
        throw Error(ErrorKind::OutOfRange, "A must be nonzero");
    }
    const std::size_t dim_b = a_op.cols();
    if (dim_b < 2) {
        throw Error(ErrorKind::Dim1, "no orthogonal direction exists in dimension 1");
    }

    // (<a| (x) <b|)|A>> = <b|(A^dagger a)^*>.
    const ComplexMatrix w = a_op.transpose() * a.conj();
    const double w_norm = norm(w);
    ComplexMatrix b;
    bool degenerate = false;
    if (w_norm <= kValidationTol * a_op.frobenius_norm()) {
        b = ComplexMatrix::basis_ket(dim_b, 0);
        degenerate = true;
    } else {
        const ComplexMatrix w_hat = (1.0 / w_norm) * w;
        std::size_t k = 0;
        for (std::size_t i = 1; i < dim_b; ++i) {
            if (std::abs(w_hat[i]) < std::abs(w_hat[k]) - 1e-12) {
                k = i;
            }
        }
        b = ComplexMatrix::basis_ket(dim_b, k) - std::conj(w_hat[k]) * w_hat;
        b -= inner(w_hat, b) * w_hat;
        b *= 1.0 / norm(b);
    }
    Effect falsifier(tensor(outer(a, a), outer(b, b)));
    return LocalFalsifier{std::move(b), std::move(falsifier), degenerate};
}

Dilation dilate(const KrausChannel &ch) {
    if (ch.dim_in() != ch.dim_out()) {
        throw Error(ErrorKind::DimensionMismatch, "only square channels are dilated");
    }
    if (!ch.deterministic()) {
        throw Error(ErrorKind::NotTracePreserving, "dilation needs a trace-preserving channel");
    }
    const std::size_t d = ch.dim_in();
    const std::size_t n_env = std::max<std::size_t>(ch.kraus().size(), 2);
    const std::size_t total = d * n_env;

    // V|psi> = sum_k (A_k|psi>) (x) |k>, i.e. U restricted to H (x) |0>.
    ComplexMatrix v(total, d);
    for (std::size_t k = 0; k < ch.kraus().size(); ++k) {
        const ComplexMatrix &a = ch.kraus()[k];
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                v(i * n_env + k, j) = a(i, j);
            }
        }
    }
    const ComplexMatrix q = orthonormal_completion(v);
    ComplexMatrix u(total, total);
    std::size_t next_extra = d;
    for (std::size_t col = 0; col < total; ++col) {
        if (col % n_env == 0) {
            u.set_col(col, q.col(col / n_env));
        } else {
            u.set_col(col, q.col(next_extra++));
        }
    }

    std::vector<ComplexMatrix> projectors;
    projectors.reserve(n_env);
    for (std::size_t k = 0; k < n_env; ++k) {
        const ComplexMatrix ket = ComplexMatrix::basis_ket(n_env, k);
        projectors.push_back(outer(ket, ket));
    }
    return Dilation{std::move(u), QuantumState::pure(ComplexMatrix::basis_ket(n_env, 0)), std::move(projectors), d,
                    n_env};
}

ComplexMatrix dilation_branch(const Dilation &d, const QuantumState &rho, std::size_t k) {
    if (rho.dim() != d.system_dim) {
        throw Error(ErrorKind::DimensionMismatch, "state does not match the dilated system");
    }
    if (k >= d.projectors.size()) {
        throw Error(ErrorKind::OutOfRange, "branch index out of range");
    }
    const ComplexMatrix evolved = d.unitary * tensor(rho.matrix(), d.ancilla.matrix()) * d.unitary.adjoint();
    const ComplexMatrix selected = evolved * tensor(ComplexMatrix::identity(d.system_dim), d.projectors[k]);
    return partial_trace(selected, d.system_dim, d.environment_dim, Subsystem::A);
}

}  // namespace optf
