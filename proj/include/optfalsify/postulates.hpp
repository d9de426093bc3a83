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
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "optfalsify/linalg.hpp"

namespace optf {

struct PropertyResult {
    std::string name;
    bool passed = true;
    std::size_t instances = 0;
    /// Largest observed defect and the bound it was held to (0/0 for exact checks).
    double worst = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t dim_lo = 2;
    std::size_t dim_hi = 4;
    std::size_t instances_per_dim = 20;
    double rank_tol = kDefaultRankTol;
    /// Empty, or one of known_faults(); deliberately breaks one suite.
    std::string inject_fault;
};

/// Names accepted by SuiteOptions::inject_fault.
std::vector<std::string_view> known_faults();

/// Runs every structural property suite (double-ket, purification existence
/// and uniqueness, discriminability, local falsifiers and canonical form,
/// compression, atomic rank monotonicity, dilation, Born additivity).
/// Suite s draws from derive_seed(options.seed, s).
std::vector<PropertyResult> run_postulate_suites(const SuiteOptions &options);

}  // namespace optf
