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

#include <sstream>

#include "optfalsify/error.hpp"
#include "optfalsify/instances.hpp"
#include "optfalsify/io.hpp"

namespace optf {
namespace {

using io::json;

TEST(Io, MatrixRoundTripIsBitExact) {
    RandomStream rng(3);
    const auto m = instances::gaussian_matrix(3, 2, rng);
    const auto text = io::dump(io::matrix_to_json(m));
    EXPECT_EQ(io::matrix_from_json(io::parse(text)), m);
}

TEST(Io, MatrixLiteral) {
    const auto m = io::matrix_from_json(io::parse(R"({"rows": 1, "cols": 2, "re": [1, 2]})"));
    EXPECT_EQ(m, (ComplexMatrix{{1.0, 2.0}}));
    EXPECT_THROW(io::matrix_from_json(io::parse(R"({"rows": 2, "cols": 2, "re": [1, 2]})")), Error);
    EXPECT_THROW(io::matrix_from_json(io::parse(R"({"rows": -1, "cols": 2, "re": []})")), Error);
    EXPECT_THROW(io::matrix_from_json(io::parse(R"({"cols": 2, "re": [1, 2]})")), Error);
    EXPECT_THROW(io::parse("{not json"), Error);
}

TEST(Io, KindsRoundTrip) {
    RandomStream rng(5);
    const auto rho = instances::random_state(3, rng);
    EXPECT_EQ(io::state_from_json(io::parse(io::dump(io::state_to_json(rho)))).matrix(), rho.matrix());

    const Effect e(ComplexMatrix::diagonal({0.25, 1.0}));
    EXPECT_EQ(io::effect_from_json(io::effect_to_json(e)).matrix(), e.matrix());

    const auto ch = instances::random_channel(2, 3, rng);
    const auto back = io::channel_from_json(io::parse(io::dump(io::channel_to_json(ch))));
    ASSERT_EQ(back.kraus().size(), 3U);
    EXPECT_EQ(back.kraus()[2], ch.kraus()[2]);

    const ClassicalState x({0.1, 0.9});
    EXPECT_EQ(io::cstate_from_json(io::cstate_to_json(x)).probs()[1], 0.9);

    const MarkovMap m(2, 2, {0.5, 0, 0.5, 1});
    EXPECT_EQ(io::markov_from_json(io::markov_to_json(m))(1, 0), 0.5);

    const FalsificationTest t(Effect(ComplexMatrix::diagonal({0, 1})), "supp <= |0>");
    const auto tb = io::ftest_from_json(io::ftest_to_json(t));
    EXPECT_EQ(tb.hypothesis_label(), "supp <= |0>");
    EXPECT_EQ(tb.falsifier().matrix(), t.falsifier().matrix());

    EXPECT_THROW(io::state_from_json(io::effect_to_json(e)), Error);
}

TEST(Io, InconclusiveTestIsRepresentable) {
    json j = {{"kind", "ftest"}, {"hypothesis", "purity"}, {"F", io::matrix_to_json(ComplexMatrix::zeros(2, 2))}};
    EXPECT_TRUE(is_inconclusive_test(io::ftest_falsifier_from_json(j)));
    EXPECT_THROW(io::ftest_from_json(j), Error);
}

TEST(Io, CampaignConfig) {
    const auto cfg = io::campaign_config_from_json(io::parse(R"({
        "declared": {"p": 0.5, "phi": 0},
        "true_state": {"kind": "state", "rows": 2, "cols": 2, "re": [0.5, 0, 0, 0.5]},
        "n_trials": 10, "seed": 7})"));
    EXPECT_EQ(cfg.n_trials, 10U);
    EXPECT_EQ(cfg.seed, 7U);
    EXPECT_TRUE(std::holds_alternative<CoinSetup>(cfg.declared));

    const auto nary = io::generator_from_json(io::parse(R"({"probs": [0.5, 0.25, 0.25]})"));
    EXPECT_TRUE(std::holds_alternative<NaryGenerator>(nary));
    EXPECT_THROW(io::generator_from_json(io::parse(R"({"q": 1})")), Error);
}

TEST(Io, DumpIsDeterministicAndSorted) {
    const json j = {{"b", 0.1}, {"a", std::vector<double>{1.0 / 3.0, 2.0}}, {"c", {{"z", true}, {"y", nullptr}}}};
    EXPECT_EQ(io::dump(j),
              "{\n  \"a\": [0.33333333333333331, 2],\n  \"b\": 0.10000000000000001,\n  \"c\": {\n    \"y\": null,\n"
              "    \"z\": true\n  }\n}\n");
}

TEST(Io, TraceCsv) {
    std::ostringstream out;
    io::write_trace_csv(out, {TrialRecord{0, TestOutcome::Falsified, 0.5, 11}, {1, TestOutcome::Inconclusive, 0.5, 12}});
    EXPECT_EQ(out.str(), "trial,outcome,p_theoretical,seed\n0,FALSIFIED,0.5,11\n1,INCONCLUSIVE,0.5,12\n");
}

}  // namespace
}  // namespace optf
