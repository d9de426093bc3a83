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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "optfalsify/classical.hpp"
#include "optfalsify/falsification.hpp"
#include "optfalsify/matrix.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/rng_falsify.hpp"

namespace optf::io {

using json = nlohmann::json;

// Schemas:
//   matrix   {"rows": n, "cols": m, "re": [...], "im": [...]}   (row-major)
//   state    matrix + {"kind": "state"}; effect likewise with "effect"
//   channel  {"kind": "channel", "kraus": [matrix, ...]}
//   cstate   {"kind": "cstate", "probs": [...]}
//   markov   {"kind": "markov", "rows": n, "cols": m, "entries": [...]}
//   ftest    {"kind": "ftest", "hypothesis": text, "F": matrix}
// Malformed input raises Error(ParseError) or the validation error of the type.

json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const json &j);

json state_to_json(const QuantumState &rho);
QuantumState state_from_json(const json &j);

json effect_to_json(const Effect &e);
Effect effect_from_json(const json &j);

json channel_to_json(const KrausChannel &ch);
KrausChannel channel_from_json(const json &j);

json cstate_to_json(const ClassicalState &x);
ClassicalState cstate_from_json(const json &j);

json markov_to_json(const MarkovMap &m);
MarkovMap markov_from_json(const json &j);

json ftest_to_json(const FalsificationTest &t);
FalsificationTest ftest_from_json(const json &j);
/// The falsifier of an ftest record without the nonzero check; accepts F = 0.
Effect ftest_falsifier_from_json(const json &j);

json purification_to_json(const Purification &p);

/// {"p": .., "phi": ..} or {"probs": [..], "phases": [..]}.
Generator generator_from_json(const json &j);
json generator_to_json(const Generator &g);

struct CampaignConfig {
    Generator declared;
    QuantumState true_state;
    std::uint64_t n_trials;
    std::optional<std::uint64_t> seed;
};

/// {"declared": generator, "true_state": state, "n_trials": N, "seed": S}.
CampaignConfig campaign_config_from_json(const json &j);

json report_to_json(const CampaignReport &r);

/// trial,outcome,p_theoretical,seed
void write_trace_csv(std::ostream &out, const std::vector<TrialRecord> &trace);

/// Deterministic text form: sorted keys, two-space indent, floats at 17
/// significant digits (enough for a bit-exact round trip).
std::string dump(const json &j);

json parse(const std::string &text);
json read_file(const std::string &path);
void write_file(const std::string &path, const std::string &text);

}  // namespace optf::io
