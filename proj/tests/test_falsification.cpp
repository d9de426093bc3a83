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

#include <gtest/gtest.h>

#include <numbers>

#include "optfalsify/error.hpp"
#include "optfalsify/falsification.hpp"
#include "optfalsify/instances.hpp"
#include "oracle.hpp"

namespace optf {
namespace {

const double kS = 1.0 / std::numbers::sqrt2;

std::size_t count_falsified(const FalsificationTest &t, const QuantumState &rho, std::size_t n, std::uint64_t seed) {
    RandomStream rng(seed);
    std::size_t hits = 0;
    for (std::size_t i = 0; i < n; ++i) {
        hits += run_test(t, rho, rng) == TestOutcome::Falsified ? 1 : 0;
    }
    return hits;
}

// Random state whose support lies inside the span of the projector's range.
QuantumState state_inside(const ComplexMatrix &proj, RandomStream &rng) {
    const auto m = proj * instances::random_state(proj.rows(), rng).matrix() * proj;
    return QuantumState((1.0 / m.trace().real()) * m);
}

TEST(FalsificationTest, Construction) {
    const FalsificationTest t(Effect(ComplexMatrix::diagonal({0, 1})), "h");
    EXPECT_EQ(t.inconclusive().matrix(), ComplexMatrix::diagonal({1, 0}));
    EXPECT_EQ(t.hypothesis_label(), "h");
    EXPECT_THROW(FalsificationTest(Effect(ComplexMatrix::zeros(2, 2)), "h"), Error);
}

TEST(SupportHypothesis, Validation) {
    EXPECT_EQ(SupportHypothesis(ComplexMatrix::diagonal({1, 0})).rank(), 1U);
    EXPECT_THROW(SupportHypothesis(ComplexMatrix{{1.0}}), Error);
    EXPECT_THROW(SupportHypothesis(ComplexMatrix::diagonal({0.5, 0})), Error);
    try {
        SupportHypothesis(ComplexMatrix::identity(2));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::FullSupport);
    }
}

TEST(SupportTest, Examples) {
    const auto t = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})));
    EXPECT_LE(max_abs_diff(t.falsifier().matrix(), ComplexMatrix::diagonal({0, 1})), 0.0);
    const auto half = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 1, 0})), 0.5);
    EXPECT_LE(max_abs_diff(half.falsifier().matrix(), ComplexMatrix::diagonal({0, 0, 0.5})), 0.0);
    EXPECT_THROW(support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})), 0.0), Error);
    EXPECT_THROW(support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})), 1.5), Error);
    EXPECT_THROW(SupportHypothesis::of_state(QuantumState(ComplexMatrix::diagonal({0.5, 0.5}))), Error);
}

TEST(Probability, Examples) {
    const auto t = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})));
    EXPECT_EQ(falsification_probability(t, QuantumState(ComplexMatrix::diagonal({1, 0}))), 0.0);
    EXPECT_NEAR(falsification_probability(t, QuantumState(ComplexMatrix::diagonal({0, 1}))), 1.0, 1e-15);

    RandomStream rng(3);
    const auto psi = instances::random_ket(2, rng);
    const auto coin = support_falsification_test(SupportHypothesis(outer(psi, psi)));
    for (int i = 0; i < 10; ++i) {
        const auto rho = instances::random_state(2, rng);
        const double overlap = inner(psi, rho.matrix() * psi).real();
        EXPECT_NEAR(falsification_probability(coin, rho), 1.0 - overlap, 1e-12);
    }
    EXPECT_THROW(falsification_probability(t, QuantumState(ComplexMatrix::diagonal({1, 0, 0}))), Error);
}

TEST(Probability, SoundnessOnRandomHypotheses) {
    RandomStream rng(5);
    for (std::size_t d = 2; d <= 5; ++d) {
        for (std::size_t k = 1; k < d; ++k) {
            const auto h = SupportHypothesis::of_state(instances::random_state(d, k, rng));
            const auto t = support_falsification_test(h);
            for (int i = 0; i < 5; ++i) {
                EXPECT_LE(falsification_probability(t, state_inside(h.projector(), rng)), 1e-10);
            }
        }
    }
}

TEST(Probability, EfficiencyIsLinearAndMonotone) {
    RandomStream rng(7);
    const auto h = SupportHypothesis::of_state(instances::random_state(4, 2, rng));
    const auto best = support_falsification_test(h, 1.0);
    for (int i = 0; i < 10; ++i) {
        const auto rho = instances::random_state(4, rng);
        const double top = falsification_probability(best, rho);
        for (double eta : {0.1, 0.25, 0.5, 0.9, 1.0}) {
            const double p = falsification_probability(support_falsification_test(h, eta), rho);
            EXPECT_NEAR(p, eta * top, 1e-12);
            EXPECT_GE(top + 1e-15, p);
        }
    }
}

TEST(Probability, FalseHypothesisCanStayInconclusive) {
    const auto t = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})));
    const auto plus = QuantumState::pure(ComplexMatrix::column({kS, kS}));
    const double p = falsification_probability(t, plus);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
}

TEST(RunTest, Deterministic) {
    const auto t = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})));
    const QuantumState zero(ComplexMatrix::diagonal({1, 0}));
    const QuantumState one(ComplexMatrix::diagonal({0, 1}));
    EXPECT_EQ(count_falsified(t, zero, 10000, 1), 0U);
    EXPECT_EQ(count_falsified(t, one, 10000, 1), 10000U);
    EXPECT_THROW(count_falsified(t, QuantumState(ComplexMatrix::diagonal({0.5, 0})), 1, 1), Error);
}

TEST(RunTest, HalfRateWithinFourSigma) {
    const auto t = support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})));
    const auto plus = QuantumState::pure(ComplexMatrix::column({kS, kS}));
    const double n = 1e5;
    const double rate = static_cast<double>(count_falsified(t, plus, 100000, 99)) / n;
    EXPECT_NEAR(rate, 0.5, testing::four_sigma(0.5, n));
    EXPECT_EQ(count_falsified(t, plus, 1000, 4), count_falsified(t, plus, 1000, 4));
}

TEST(RunTest, RandomPairsMatchProbability) {
    RandomStream rng(11);
    const double n = 1e5;
    for (int i = 0; i < 10; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const auto t = support_falsification_test(SupportHypothesis::of_state(instances::random_state(d, 1, rng)),
                                                  0.3 + 0.7 * rng.uniform());
        const auto rho = instances::random_state(d, rng);
        const double p = falsification_probability(t, rho);
        const double rate = static_cast<double>(count_falsified(t, rho, 100000, 1000 + i)) / n;
        EXPECT_NEAR(rate, p, testing::four_sigma(p, n)) << i;
    }
}

TEST(Inconclusive, Predicate) {
    EXPECT_FALSE(is_inconclusive_test(Effect(ComplexMatrix::diagonal({0, 1}))));
    EXPECT_TRUE(is_inconclusive_test(Effect(ComplexMatrix::zeros(2, 2))));
    EXPECT_TRUE(is_inconclusive_test(Effect(complex{1e-14} * ComplexMatrix::identity(2))));
    EXPECT_FALSE(is_inconclusive_test(support_falsification_test(SupportHypothesis(ComplexMatrix::diagonal({1, 0})))));
    EXPECT_EQ(to_string(TestOutcome::Falsified), "FALSIFIED");
    EXPECT_EQ(to_string(TestOutcome::Inconclusive), "INCONCLUSIVE");
}

}  // namespace
}  // namespace optf
