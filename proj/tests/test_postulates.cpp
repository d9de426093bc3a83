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

#include "optfalsify/error.hpp"
#include "optfalsify/postulates.hpp"

namespace optf {
namespace {

SuiteOptions small(std::uint64_t seed) {
    SuiteOptions o;
    o.seed = seed;
    o.dim_lo = 2;
    o.dim_hi = 3;
    o.instances_per_dim = 5;
    return o;
}

TEST(Postulates, AllPassByDefault) {
    for (std::uint64_t seed : {0, 1, 2}) {
        const auto results = run_postulate_suites(small(seed));
        EXPECT_EQ(results.size(), 9U);
        for (const auto &r : results) {
            EXPECT_TRUE(r.passed) << r.name << ": " << r.detail << " worst=" << r.worst;
            EXPECT_GT(r.instances, 0U) << r.name;
        }
    }
}

TEST(Postulates, EachInjectedFaultIsCaught) {
    for (auto fault : known_faults()) {
        auto o = small(0);
        o.inject_fault = std::string(fault);
        const auto results = run_postulate_suites(o);
        std::size_t failed = 0;
        for (const auto &r : results) {
            failed += r.passed ? 0 : 1;
        }
        EXPECT_GE(failed, 1U) << fault;
    }
}

TEST(Postulates, Deterministic) {
    const auto a = run_postulate_suites(small(5));
    const auto b = run_postulate_suites(small(5));
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].worst, b[i].worst);
    }
}

TEST(Postulates, RejectsBadOptions) {
    auto o = small(0);
    o.inject_fault = "nonsense";
    EXPECT_THROW(run_postulate_suites(o), Error);
    o = small(0);
    o.dim_lo = 4;
    o.dim_hi = 2;
    EXPECT_THROW(run_postulate_suites(o), Error);
    o = small(0);
    o.dim_lo = 1;
    EXPECT_THROW(run_postulate_suites(o), Error);
}

}  // namespace
}  // namespace optf
