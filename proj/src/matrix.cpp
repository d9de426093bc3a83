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

#include "optfalsify/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "optfalsify/error.hpp"

namespace optf {

namespace {

void require_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "matrix shape must be at least 1x1, got " + std::to_string(rows) + "x" +
                        std::to_string(cols));
    }
}

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(op) + ": " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                        " vs " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_shape(rows, cols);
    data_.assign(rows * cols, complex{0.0, 0.0});
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    require_shape(rows, cols);
    if (data_.size() != rows * cols) {
        throw Error(ErrorKind::DimensionMismatch, "entry count " + std::to_string(data_.size()) +
                                                      " does not match shape " + std::to_string(rows) +
                                                      "x" + std::to_string(cols));
    }
    for (const auto &z : data_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorKind::NonFinite, "matrix entries must be finite");
        }
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    require_shape(rows_, cols_);
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw Error(ErrorKind::DimensionMismatch, "ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::basis_ket(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw Error(ErrorKind::DimensionMismatch, "basis index out of range");
    }
    ComplexMatrix v(dim, 1);
    v[index] = 1.0;
    return v;
}

ComplexMatrix ComplexMatrix::column(std::span<const complex> amplitudes) {
    return ComplexMatrix(amplitudes.size(), 1, std::vector<complex>(amplitudes.begin(), amplitudes.end()));
}

ComplexMatrix ComplexMatrix::column(std::initializer_list<complex> amplitudes) {
    return column(std::span<const complex>(amplitudes.begin(), amplitudes.size()));
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = std::conj((*this)(r, c));
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            out(c, r) = (*this)(r, c);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix out = *this;
    for (auto &z : out.data_) {
        z = std::conj(z);
    }
    return out;
}

complex ComplexMatrix::trace() const {
    if (!is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "trace of a non-square matrix");
    }
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
        t += (*this)(i, i);
    }
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto &z : data_) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::col(std::size_t c) const {
    ComplexMatrix v(rows_, 1);
    for (std::size_t r = 0; r < rows_; ++r) {
        v[r] = (*this)(r, c);
    }
    return v;
}

void ComplexMatrix::set_col(std::size_t c, const ComplexMatrix &v) {
    if (v.rows() != rows_ || v.cols() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "set_col: column length mismatch");
    }
    for (std::size_t r = 0; r < rows_; ++r) {
        (*this)(r, c) = v[r];
    }
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(complex s) {
    for (auto &z : data_) {
        z *= s;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
    a += b;
    return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
    a -= b;
    return a;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " and " +
                        std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex aik = a(i, k);
            if (aik == complex{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix operator*(complex s, ComplexMatrix a) {
    a *= s;
    return a;
}

ComplexMatrix operator*(ComplexMatrix a, complex s) {
    a *= s;
    return a;
}

ComplexMatrix outer(const ComplexMatrix &v, const ComplexMatrix &w) {
    if (!v.is_column() || !w.is_column()) {
        throw Error(ErrorKind::DimensionMismatch, "outer product needs column vectors");
    }
    ComplexMatrix out(v.rows(), w.rows());
    for (std::size_t i = 0; i < v.rows(); ++i) {
        for (std::size_t j = 0; j < w.rows(); ++j) {
            out(i, j) = v[i] * std::conj(w[j]);
        }
    }
    return out;
}

complex inner(const ComplexMatrix &v, const ComplexMatrix &w) {
    if (!v.is_column() || !w.is_column() || v.rows() != w.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "inner product needs equal-length column vectors");
    }
    complex s = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
        s += std::conj(v[i]) * w[i];
    }
    return s;
}

double norm(const ComplexMatrix &v) {
    return v.frobenius_norm();
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "hermiticity check of a non-square matrix");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = i; j < m.cols(); ++j) {
            d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
        }
    }
    return d;
}

}  // namespace optf
