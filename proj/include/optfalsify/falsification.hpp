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
#include <string>
#include <string_view>

#include "optfalsify/linalg.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/random.hpp"

namespace optf {

/// Binary test {F, F_?} with F_? = I - F. The falsifier F is PSD and nonzero:
/// the F = 0 "inconclusive test" cannot be constructed.
class FalsificationTest {
  public:
    FalsificationTest(Effect falsifier, std::string hypothesis_label, double rank_tol = kDefaultRankTol);

    const Effect &falsifier() const noexcept {
        return falsifier_;
    }
    const Effect &inconclusive() const noexcept {
        return inconclusive_;
    }
    const std::string &hypothesis_label() const noexcept {
        return label_;
    }
    std::size_t dim() const noexcept {
        return falsifier_.dim();
    }

  private:
    Effect falsifier_;
    Effect inconclusive_;
    std::string label_;
};

/// Hypothesis "Supp rho is contained in K" for a proper subspace K.
class SupportHypothesis {
  public:
    /// Throws FullSupport when K is the whole space, Dim1 when dim < 2.
    explicit SupportHypothesis(ComplexMatrix projector);

    /// K = Supp rho.
    static SupportHypothesis of_state(const QuantumState &rho, double rank_tol = kDefaultRankTol);

    std::size_t dim() const noexcept {
        return projector_.rows();
    }
    std::size_t rank() const noexcept {
        return rank_;
    }
    const ComplexMatrix &projector() const noexcept {
        return projector_;
    }

  private:
    ComplexMatrix projector_;
    std::size_t rank_;
};

/// Falsification probabilities at or below this are rounding noise of an
/// analytic zero; run_test never fires on them.
inline constexpr double kNumericalZeroProbability = 1e-12;

enum class TestOutcome { Falsified, Inconclusive };

std::string_view to_string(TestOutcome outcome);

/// F = efficiency * (I - P_K). efficiency = 1 is the most efficient test.
FalsificationTest support_falsification_test(const SupportHypothesis &h, double efficiency = 1.0);

/// Tr(rho F).
double falsification_probability(const FalsificationTest &t, const QuantumState &rho);

/// One shot: a single uniform draw compared against Tr(rho F).
TestOutcome run_test(const FalsificationTest &t, const QuantumState &rho, RandomStream &rng);

/// True iff ||F||_max <= rank_tol, i.e. the test can only answer "inconclusive".
bool is_inconclusive_test(const Effect &falsifier, double rank_tol = kDefaultRankTol);
bool is_inconclusive_test(const FalsificationTest &t, double rank_tol = kDefaultRankTol);

}  // namespace optf
