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
#include <optional>
#include <span>
#include <vector>

#include "optfalsify/linalg.hpp"
#include "optfalsify/quantum.hpp"

namespace optf {

/// Sub-normalized probability vector on the d-simplex.
class ClassicalState {
  public:
    /// Components down to -1e-12 are clamped to zero; the sum may not exceed 1.
    explicit ClassicalState(std::vector<double> probs);

    std::size_t dim() const noexcept {
        return probs_.size();
    }
    std::span<const double> probs() const noexcept {
        return probs_;
    }
    double total() const noexcept {
        return total_;
    }
    bool deterministic() const noexcept {
        return deterministic_;
    }

  private:
    std::vector<double> probs_;
    double total_;
    bool deterministic_;
};

/// Nonnegative dim_out x dim_in matrix with column sums <= 1, acting on
/// column probability vectors from the left. A 1 x n map is a classical effect.
class MarkovMap {
  public:
    MarkovMap(std::size_t dim_out, std::size_t dim_in, std::vector<double> entries);

    static MarkovMap permutation(std::span<const std::size_t> image);

    std::size_t dim_in() const noexcept {
        return dim_in_;
    }
    std::size_t dim_out() const noexcept {
        return dim_out_;
    }
    double operator()(std::size_t r, std::size_t c) const {
        return entries_[r * dim_in_ + c];
    }
    std::span<const double> entries() const noexcept {
        return entries_;
    }
    MarkovMap transpose() const;

  private:
    std::size_t dim_out_;
    std::size_t dim_in_;
    std::vector<double> entries_;
};

ClassicalState apply_markov(const MarkovMap &m, const ClassicalState &x);

/// Probability of a 1 x n effect row on x.
double effect_probability(const MarkovMap &effect, const ClassicalState &x);

/// diag(x) in the computational basis.
QuantumState embed_classical(const ClassicalState &x);

/// Outcomes {i : x_i <= rank_tol} whose occurrence would refute x, or nullopt
/// if every outcome is possible. Requires a deterministic x.
std::optional<std::vector<std::size_t>> classical_falsifier_exists(const ClassicalState &x,
                                                                   double rank_tol = kDefaultRankTol);

}  // namespace optf
