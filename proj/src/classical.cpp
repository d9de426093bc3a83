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

#include "optfalsify/classical.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "optfalsify/error.hpp"

namespace optf {

ClassicalState::ClassicalState(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw Error(ErrorKind::DimensionMismatch, "classical state needs at least one outcome");
    }
    for (auto &p : probs_) {
        if (!std::isfinite(p)) {
            throw Error(ErrorKind::NonFinite, "classical probabilities must be finite");
        }
        if (p < -1e-12) {
            throw Error(ErrorKind::InvalidState, "negative probability " + std::to_string(p));
        }
        if (p < 0.0) {
            p = 0.0;
        }
    }
    total_ = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (total_ > 1.0 + kValidationTol) {
        throw Error(ErrorKind::InvalidState, "probabilities sum to " + std::to_string(total_));
    }
    deterministic_ = std::abs(total_ - 1.0) <= kValidationTol;
}

MarkovMap::MarkovMap(std::size_t dim_out, std::size_t dim_in, std::vector<double> entries)
    : dim_out_(dim_out), dim_in_(dim_in), entries_(std::move(entries)) {
    if (dim_out == 0 || dim_in == 0 || entries_.size() != dim_out * dim_in) {
        throw Error(ErrorKind::DimensionMismatch, "Markov map entries do not match its shape");
    }
    for (double e : entries_) {
        if (!std::isfinite(e) || e < 0.0) {
            throw Error(ErrorKind::InvalidChannel, "Markov entries must be finite and nonnegative");
        }
    }
    for (std::size_t c = 0; c < dim_in; ++c) {
        double s = 0.0;
        for (std::size_t r = 0; r < dim_out; ++r) {
            s += entries_[r * dim_in + c];
        }
        if (s > 1.0 + kValidationTol) {
            throw Error(ErrorKind::InvalidChannel,
                        "column " + std::to_string(c) + " sums to " + std::to_string(s) + " > 1");
        }
    }
}

MarkovMap MarkovMap::permutation(std::span<const std::size_t> image) {
    const std::size_t n = image.size();
    std::vector<double> entries(n * n, 0.0);
    std::vector<bool> hit(n, false);
    for (std::size_t c = 0; c < n; ++c) {
        if (image[c] >= n || hit[image[c]]) {
            throw Error(ErrorKind::OutOfRange, "not a permutation");
        }
        hit[image[c]] = true;
        entries[image[c] * n + c] = 1.0;
    }
    return MarkovMap(n, n, std::move(entries));
}

MarkovMap MarkovMap::transpose() const {
    std::vector<double> t(entries_.size());
    for (std::size_t r = 0; r < dim_out_; ++r) {
        for (std::size_t c = 0; c < dim_in_; ++c) {
            t[c * dim_out_ + r] = entries_[r * dim_in_ + c];
        }
    }
    return MarkovMap(dim_in_, dim_out_, std::move(t));
}

ClassicalState apply_markov(const MarkovMap &m, const ClassicalState &x) {
    if (m.dim_in() != x.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "Markov map input dimension does not match the state");
    }
    std::vector<double> y(m.dim_out(), 0.0);
    for (std::size_t r = 0; r < m.dim_out(); ++r) {
        for (std::size_t c = 0; c < m.dim_in(); ++c) {
            y[r] += m(r, c) * x.probs()[c];
        }
    }
    return ClassicalState(std::move(y));
}

double effect_probability(const MarkovMap &effect, const ClassicalState &x) {
    if (effect.dim_out() != 1) {
        throw Error(ErrorKind::DimensionMismatch, "classical effects are 1 x n maps");
    }
    return apply_markov(effect, x).probs()[0];
}

QuantumState embed_classical(const ClassicalState &x) {
    return QuantumState(ComplexMatrix::diagonal(x.probs()));
}

std::optional<std::vector<std::size_t>> classical_falsifier_exists(const ClassicalState &x, double rank_tol) {
    if (!x.deterministic()) {
        throw Error(ErrorKind::NotDeterministic, "falsifiers are defined for normalized distributions");
    }
    std::vector<std::size_t> impossible;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (x.probs()[i] <= rank_tol) {
            impossible.push_back(i);
        }
    }
    if (impossible.empty()) {
        return std::nullopt;
    }
    return impossible;
}

}  // namespace optf
