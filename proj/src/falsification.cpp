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

#include "optfalsify/falsification.hpp"

#include <cmath>

#include "optfalsify/error.hpp"

namespace optf {

namespace {

Effect complement_of(const Effect &f) {
    return Effect(ComplexMatrix::identity(f.dim()) - f.matrix());
}

}  // namespace

FalsificationTest::FalsificationTest(Effect falsifier, std::string hypothesis_label, double rank_tol)
    : falsifier_(std::move(falsifier)), inconclusive_(complement_of(falsifier_)), label_(std::move(hypothesis_label)) {
    if (is_inconclusive_test(falsifier_, rank_tol)) {
        throw Error(ErrorKind::InvalidTest, "falsifier F = 0 gives the inconclusive test");
    }
}

SupportHypothesis::SupportHypothesis(ComplexMatrix projector) : projector_(std::move(projector)) {
    if (!projector_.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "subspace projector must be square");
    }
    if (projector_.rows() < 2) {
        throw Error(ErrorKind::Dim1, "support hypotheses need dim >= 2");
    }
    if (hermiticity_defect(projector_) > kHermitianTol ||
        max_abs_diff(projector_ * projector_, projector_) > kValidationTol) {
        throw Error(ErrorKind::OutOfRange, "not an orthogonal projector");
    }
    rank_ = static_cast<std::size_t>(std::llround(projector_.trace().real()));
    if (rank_ == projector_.rows()) {
        throw Error(ErrorKind::FullSupport, "K is the whole space; only the inconclusive test F = 0 remains");
    }
}

SupportHypothesis SupportHypothesis::of_state(const QuantumState &rho, double rank_tol) {
    return SupportHypothesis(support_projector(rho.matrix(), rank_tol));
}

std::string_view to_string(TestOutcome outcome) {
    return outcome == TestOutcome::Falsified ? "FALSIFIED" : "INCONCLUSIVE";
}

FalsificationTest support_falsification_test(const SupportHypothesis &h, double efficiency) {
    if (!(efficiency > 0.0 && efficiency <= 1.0)) {
        throw Error(ErrorKind::OutOfRange, "efficiency must lie in (0, 1]");
    }
    ComplexMatrix f = ComplexMatrix::identity(h.dim()) - h.projector();
    f *= efficiency;
    return FalsificationTest(Effect(std::move(f)),
                             "Supp rho in K (rank " + std::to_string(h.rank()) + " of " + std::to_string(h.dim()) + ")");
}

double falsification_probability(const FalsificationTest &t, const QuantumState &rho) {
    return born_probability(rho, t.falsifier());
}

TestOutcome run_test(const FalsificationTest &t, const QuantumState &rho, RandomStream &rng) {
    if (!rho.deterministic()) {
        throw Error(ErrorKind::NotDeterministic, "single-shot tests need a normalized state");
    }
    double p = falsification_probability(t, rho);
    if (p <= kNumericalZeroProbability) {
        p = 0.0;
    }
    return rng.uniform() < p ? TestOutcome::Falsified : TestOutcome::Inconclusive;
}

bool is_inconclusive_test(const Effect &falsifier, double rank_tol) {
    return falsifier.matrix().max_abs() <= rank_tol;
}

bool is_inconclusive_test(const FalsificationTest &t, double rank_tol) {
    return is_inconclusive_test(t.falsifier(), rank_tol);
}

}  // namespace optf
