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

#include <algorithm>
#include <numeric>

#include "optfalsify/classical.hpp"
#include "optfalsify/error.hpp"
#include "optfalsify/instances.hpp"

namespace optf {
namespace {

std::vector<double> probs_of(const ClassicalState &x) {
    return {x.probs().begin(), x.probs().end()};
}

TEST(ClassicalState, Validation) {
    EXPECT_TRUE(ClassicalState({0.3, 0.7}).deterministic());
    EXPECT_FALSE(ClassicalState({0.3, 0.2}).deterministic());
    EXPECT_EQ(ClassicalState({1.0, -1e-13}).probs()[1], 0.0);
    EXPECT_THROW(ClassicalState({1.0, -0.1}), Error);
    EXPECT_THROW(ClassicalState({0.6, 0.6}), Error);
    EXPECT_THROW(ClassicalState(std::vector<double>{}), Error);
}

TEST(MarkovMap, Validation) {
    EXPECT_NO_THROW(MarkovMap(2, 2, {0.5, 0.0, 0.5, 1.0}));
    EXPECT_THROW(MarkovMap(2, 2, {0.7, 0.0, 0.5, 1.0}), Error);
    EXPECT_THROW(MarkovMap(2, 2, {-0.1, 0.0, 0.5, 1.0}), Error);
    EXPECT_THROW(MarkovMap(2, 2, {0.5, 0.5}), Error);
}

TEST(ApplyMarkov, Examples) {
    const std::vector<std::size_t> swap{1, 0};
    EXPECT_EQ(probs_of(apply_markov(MarkovMap::permutation(swap), ClassicalState({0.3, 0.7}))),
              (std::vector<double>{0.7, 0.3}));

    const auto collapsed = apply_markov(MarkovMap(1, 3, {1, 1, 1}), ClassicalState({0.2, 0.3, 0.5}));
    EXPECT_NEAR(collapsed.probs()[0], 1.0, 1e-15);

    const auto y = apply_markov(MarkovMap(2, 2, {0.5, 0, 0, 1}), ClassicalState({0.4, 0.6}));
    EXPECT_NEAR(y.probs()[0], 0.2, 1e-15);
    EXPECT_NEAR(y.probs()[1], 0.6, 1e-15);
    EXPECT_NEAR(y.total(), 0.8, 1e-15);

    EXPECT_THROW(apply_markov(MarkovMap(2, 3, {1, 0, 0, 0, 1, 1}), ClassicalState({0.4, 0.6})), Error);
}

TEST(ApplyMarkov, PermutationReversibility) {
    RandomStream rng(3);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::size_t> image(5);
        std::iota(image.begin(), image.end(), 0);
        std::shuffle(image.begin(), image.end(), rng);
        std::vector<double> raw(5);
        double total = 0.0;
        for (auto &v : raw) {
            v = rng.uniform();
            total += v;
        }
        for (auto &v : raw) {
            v /= total;
        }
        const ClassicalState x(raw);
        const auto p = MarkovMap::permutation(image);
        const auto back = apply_markov(p, apply_markov(p.transpose(), x));
        for (std::size_t i = 0; i < 5; ++i) {
            EXPECT_NEAR(back.probs()[i], x.probs()[i], 1e-12);
        }
    }
}

TEST(Embed, Examples) {
    EXPECT_EQ(embed_classical(ClassicalState({1, 0})).matrix(), ComplexMatrix::diagonal({1, 0}));
    EXPECT_EQ(embed_classical(ClassicalState({0.5, 0.5})).matrix(), ComplexMatrix::diagonal({0.5, 0.5}));
    const auto rho = embed_classical(ClassicalState({0.2, 0.3, 0.5}));
    EXPECT_NEAR(born_probability(rho, Effect(ComplexMatrix::diagonal({0, 1, 0}))), 0.3, 1e-15);
}

TEST(Embed, ConsistentWithScalarProductEffects) {
    RandomStream rng(5);
    for (int t = 0; t < 20; ++t) {
        std::vector<double> x(4);
        std::vector<double> e(4);
        double total = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] = rng.uniform();
            e[i] = rng.uniform();
            total += x[i];
        }
        double expected = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            x[i] /= total;
            expected += e[i] * x[i];
        }
        const ClassicalState cx(x);
        EXPECT_NEAR(born_probability(embed_classical(cx), Effect(ComplexMatrix::diagonal(e))), expected, 1e-12);
        EXPECT_NEAR(effect_probability(MarkovMap(1, 4, e), cx), expected, 1e-12);
    }
}

TEST(ClassicalFalsifier, Examples) {
    EXPECT_EQ(classical_falsifier_exists(ClassicalState({1, 0})), (std::vector<std::size_t>{1}));
    EXPECT_FALSE(classical_falsifier_exists(ClassicalState({0.5, 0.5})).has_value());
    EXPECT_EQ(classical_falsifier_exists(ClassicalState({0.3, 0.7, 0})), (std::vector<std::size_t>{2}));
    EXPECT_THROW(classical_falsifier_exists(ClassicalState({0.3, 0.3})), Error);
}

TEST(ClassicalFalsifier, AgreesWithEmbeddedKernel) {
    for (const auto &x : {std::vector<double>{0.5, 0.5, 0}, {1, 0, 0}, {0.2, 0.3, 0.5}, {0, 0.4, 0.6}}) {
        const ClassicalState cx(x);
        const auto kernel = kernel_projector(embed_classical(cx).matrix());
        const auto support = support_projector(embed_classical(cx).matrix());
        for (std::size_t i = 0; i < x.size(); ++i) {
            EXPECT_NEAR(support(i, i).real(), x[i] > 1e-10 ? 1.0 : 0.0, 1e-12);
        }
        EXPECT_EQ(classical_falsifier_exists(cx).has_value(), kernel.max_abs() > 0.5);
    }
}

}  // namespace
}  // namespace optf
