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

#include "optfalsify/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "optfalsify/error.hpp"

namespace optf {

ComplexMatrix tensor(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t rb = b.rows();
    const std::size_t cb = b.cols();
    ComplexMatrix out(a.rows() * rb, a.cols() * cb);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex aij = a(i, j);
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < cb; ++l) {
                    out(i * rb + k, j * cb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::size_t dim_a, std::size_t dim_b, Subsystem keep) {
    if (dim_a == 0 || dim_b == 0 || !m.is_square() || m.rows() != dim_a * dim_b) {
        throw Error(ErrorKind::DimensionMismatch, "partial_trace: operator is " + std::to_string(m.rows()) +
                                                      "x" + std::to_string(m.cols()) + ", factors " +
                                                      std::to_string(dim_a) + "*" + std::to_string(dim_b));
    }
    if (keep == Subsystem::A) {
        ComplexMatrix out(dim_a, dim_a);
        for (std::size_t i = 0; i < dim_a; ++i) {
            for (std::size_t j = 0; j < dim_a; ++j) {
                complex s = 0.0;
                for (std::size_t k = 0; k < dim_b; ++k) {
                    s += m(i * dim_b + k, j * dim_b + k);
                }
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(dim_b, dim_b);
    for (std::size_t k = 0; k < dim_b; ++k) {
        for (std::size_t l = 0; l < dim_b; ++l) {
            complex s = 0.0;
            for (std::size_t i = 0; i < dim_a; ++i) {
                s += m(i * dim_b + k, i * dim_b + l);
            }
            out(k, l) = s;
        }
    }
    return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(s);
}

// Zeroes a(p,q) with J = diag-phase * real rotation; a <- J^dagger a J, v <- v J.
void jacobi_rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q) {
    const complex apq = a(p, q);
    const double g = std::abs(apq);
    if (g == 0.0) {
        return;
    }
    const complex e = std::conj(apq) / g;  // e^{-i arg a_pq}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * g);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const std::size_t n = a.rows();
    for (std::size_t k = 0; k < n; ++k) {
        if (k == p || k == q) {
            continue;
        }
        const complex akp = a(k, p);
        const complex akq = a(k, q);
        const complex kp = c * akp - s * e * akq;
        const complex kq = s * akp + c * e * akq;
        a(k, p) = kp;
        a(k, q) = kq;
        a(p, k) = std::conj(kp);
        a(q, k) = std::conj(kq);
    }
    a(p, p) = app - t * g;
    a(q, q) = aqq + t * g;
    a(p, q) = 0.0;
    a(q, p) = 0.0;

    for (std::size_t k = 0; k < n; ++k) {
        const complex vkp = v(k, p);
        const complex vkq = v(k, q);
        v(k, p) = c * vkp - s * e * vkq;
        v(k, q) = s * vkp + c * e * vkq;
    }
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix &m, double tol) {
    if (!m.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "hermitian_eig needs a square matrix");
    }
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        throw Error(ErrorKind::NotHermitian, "||m - m^dagger||_max = " + std::to_string(defect));
    }
    const std::size_t n = m.rows();
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = m(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const complex h = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = h;
            a(j, i) = std::conj(h);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double threshold = kJacobiOffDiagonalTol * a.frobenius_norm();
    bool converged = off_diagonal_norm(a) <= threshold;
    for (int sweep = 0; sweep < kJacobiSweepBudget && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                jacobi_rotate(a, v, p, q);
            }
        }
        converged = off_diagonal_norm(a) <= threshold;
    }
    if (!converged) {
        throw Error(ErrorKind::NoConvergence,
                    "Jacobi sweep budget of " + std::to_string(kJacobiSweepBudget) + " exhausted");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

    HermitianEig out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

namespace {

double hermitian_tol_for(const ComplexMatrix &m) {
    return kHermitianTol * std::max(1.0, m.max_abs());
}

// Eigendecomposition of a PSD operator plus the support cutoff.
struct PsdSpectrum {
    HermitianEig eig;
    double cutoff;
    std::size_t rank;
};

PsdSpectrum psd_spectrum(const ComplexMatrix &m, double rank_tol) {
    PsdSpectrum s{hermitian_eig(m, hermitian_tol_for(m)), 0.0, 0};
    const double lmax = s.eig.eigenvalues.front();
    const double lmin = s.eig.eigenvalues.back();
    s.cutoff = rank_tol * std::max(lmax, 0.0);
    if (lmin < -s.cutoff) {
        throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(lmin) + " below -rank_tol*lambda_max");
    }
    for (double l : s.eig.eigenvalues) {
        if (l > s.cutoff) {
            ++s.rank;
        }
    }
    return s;
}

}  // namespace

std::size_t numerical_rank(const HermitianEig &eig, double rank_tol) {
    const double cutoff = rank_tol * std::max(eig.eigenvalues.front(), 0.0);
    return static_cast<std::size_t>(
        std::count_if(eig.eigenvalues.begin(), eig.eigenvalues.end(), [&](double l) { return l > cutoff; }));
}

std::size_t psd_rank(const ComplexMatrix &m, double rank_tol) {
    return psd_spectrum(m, rank_tol).rank;
}

ComplexMatrix support_projector(const ComplexMatrix &m, double rank_tol) {
    const PsdSpectrum s = psd_spectrum(m, rank_tol);
    const std::size_t n = m.rows();
    ComplexMatrix p(n, n);
    for (std::size_t k = 0; k < s.rank; ++k) {
        p += outer(s.eig.eigenvectors.col(k), s.eig.eigenvectors.col(k));
    }
    return p;
}

ComplexMatrix kernel_projector(const ComplexMatrix &m, double rank_tol) {
    return ComplexMatrix::identity(m.rows()) - support_projector(m, rank_tol);
}

ComplexMatrix support_basis(const ComplexMatrix &m, double rank_tol) {
    const PsdSpectrum s = psd_spectrum(m, rank_tol);
    if (s.rank == 0) {
        throw Error(ErrorKind::InvalidState, "operator has empty support");
    }
    ComplexMatrix basis(m.rows(), s.rank);
    for (std::size_t k = 0; k < s.rank; ++k) {
        basis.set_col(k, s.eig.eigenvectors.col(k));
    }
    return basis;
}

ComplexMatrix mat_to_doubleket(const ComplexMatrix &a) {
    return ComplexMatrix(a.size(), 1, std::vector<complex>(a.entries().begin(), a.entries().end()));
}

ComplexMatrix doubleket_to_mat(const ComplexMatrix &v, std::size_t rows, std::size_t cols) {
    if (!v.is_column() || v.rows() != rows * cols) {
        throw Error(ErrorKind::DimensionMismatch, "double-ket of length " + std::to_string(v.rows()) +
                                                      " cannot be reshaped to " + std::to_string(rows) + "x" +
                                                      std::to_string(cols));
    }
    return ComplexMatrix(rows, cols, std::vector<complex>(v.entries().begin(), v.entries().end()));
}

ComplexMatrix doubleket_to_mat(const ComplexMatrix &v) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.rows()))));
    if (d * d != v.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "double-ket length is not a perfect square");
    }
    return doubleket_to_mat(v, d, d);
}

namespace {

// r <- r - Q Q^dagger r over the first `count` columns of q.
void project_out(ComplexMatrix &r, const ComplexMatrix &q, std::size_t count) {
    for (std::size_t c = 0; c < count; ++c) {
        complex overlap = 0.0;
        for (std::size_t i = 0; i < q.rows(); ++i) {
            overlap += std::conj(q(i, c)) * r[i];
        }
        for (std::size_t i = 0; i < q.rows(); ++i) {
            r[i] -= overlap * q(i, c);
        }
    }
}

}  // namespace

ComplexMatrix orthonormalize_columns(const ComplexMatrix &m) {
    ComplexMatrix q(m.rows(), m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        ComplexMatrix r = m.col(c);
        const double before = norm(r);
        project_out(r, q, c);
        project_out(r, q, c);
        const double after = norm(r);
        if (after <= 1e-12 * std::max(before, 1e-300)) {
            throw Error(ErrorKind::NotNormalized, "columns are linearly dependent");
        }
        q.set_col(c, (1.0 / after) * r);
    }
    return q;
}

ComplexMatrix orthonormal_completion(const ComplexMatrix &basis) {
    const std::size_t n = basis.rows();
    if (basis.cols() > n) {
        throw Error(ErrorKind::DimensionMismatch, "more basis columns than the space dimension");
    }
    ComplexMatrix q(n, n);
    for (std::size_t c = 0; c < basis.cols(); ++c) {
        q.set_col(c, basis.col(c));
    }
    for (std::size_t filled = basis.cols(); filled < n; ++filled) {
        ComplexMatrix best;
        double best_norm = -1.0;
        for (std::size_t m = 0; m < n; ++m) {
            ComplexMatrix r = ComplexMatrix::basis_ket(n, m);
            project_out(r, q, filled);
            const double rn = norm(r);
            if (rn > best_norm + 1e-12) {
                best_norm = rn;
                best = r;
            }
        }
        project_out(best, q, filled);
        q.set_col(filled, (1.0 / norm(best)) * best);
    }
    return q;
}

}  // namespace optf
