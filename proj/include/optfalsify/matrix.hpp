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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace optf {

using complex = std::complex<double>;

/// Dense complex matrix in row-major order. Column vectors are n x 1 matrices.
///
/// Shapes are always at least 1 x 1 and every entry is finite; both are
/// checked whenever a matrix is built from caller-supplied data.
class ComplexMatrix {
  public:
    ComplexMatrix() : ComplexMatrix(1, 1) {
    }
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);
    /// Row-by-row literal, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(std::span<const double> diag);
    static ComplexMatrix diagonal(std::initializer_list<double> diag);
    /// Canonical basis column vector |index> of length dim.
    static ComplexMatrix basis_ket(std::size_t dim, std::size_t index);
    static ComplexMatrix column(std::span<const complex> amplitudes);
    static ComplexMatrix column(std::initializer_list<complex> amplitudes);

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    std::size_t size() const noexcept {
        return data_.size();
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }
    bool is_column() const noexcept {
        return cols_ == 1;
    }

    complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }
    /// Flat row-major access; for column vectors this is the i-th amplitude.
    complex &operator[](std::size_t i) {
        return data_[i];
    }
    const complex &operator[](std::size_t i) const {
        return data_[i];
    }

    std::span<const complex> entries() const noexcept {
        return data_;
    }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    complex trace() const;
    /// Largest absolute entry.
    double max_abs() const;
    double frobenius_norm() const;

    ComplexMatrix col(std::size_t c) const;
    void set_col(std::size_t c, const ComplexMatrix &v);

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(complex s);

    bool operator==(const ComplexMatrix &other) const = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, complex s);

/// v w^dagger for column vectors.
ComplexMatrix outer(const ComplexMatrix &v, const ComplexMatrix &w);
/// v^dagger w for column vectors.
complex inner(const ComplexMatrix &v, const ComplexMatrix &w);
/// Euclidean norm (Frobenius for general shapes).
double norm(const ComplexMatrix &v);
/// max |a - b| entrywise; shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max |m - m^dagger| entrywise.
double hermiticity_defect(const ComplexMatrix &m);

}  // namespace optf
