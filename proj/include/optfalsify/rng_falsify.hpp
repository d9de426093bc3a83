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
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "optfalsify/falsification.hpp"
#include "optfalsify/matrix.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/random.hpp"

namespace optf {

/// Biased quantum coin: sqrt(p)|0> + sqrt(1-p) e^{i phi}|1>, read out in the
/// computational basis.
class CoinSetup {
  public:
    CoinSetup(double p, double phi);

    double p() const noexcept {
        return p_;
    }
    double phi() const noexcept {
        return phi_;
    }
    const ComplexMatrix &state_vector() const noexcept {
        return psi_;
    }
    /// {|0><0|, |1><1|}.
    const std::vector<Effect> &observation_test() const noexcept {
        return observation_;
    }

  private:
    double p_;
    double phi_;
    ComplexMatrix psi_;
    std::vector<Effect> observation_;
};

/// N-outcome generator with amplitudes sqrt(p_n) e^{i phi_n}.
class NaryGenerator {
  public:
    /// Empty `phases` means all zero.
    NaryGenerator(std::vector<double> probs, std::vector<double> phases = {});

    std::size_t dim() const noexcept {
        return probs_.size();
    }
    std::span<const double> probs() const noexcept {
        return probs_;
    }
    std::span<const double> phases() const noexcept {
        return phases_;
    }
    const ComplexMatrix &state_vector() const noexcept {
        return psi_;
    }

  private:
    std::vector<double> probs_;
    std::vector<double> phases_;
    ComplexMatrix psi_;
};

using Generator = std::variant<CoinSetup, NaryGenerator>;

const ComplexMatrix &state_vector(const Generator &g);

/// Born probabilities of the computational-basis readout.
std::vector<double> outcome_probabilities(const Generator &g);

enum class Verdict { Falsified, NotFalsified, NotFalsifiable };

std::string_view to_string(Verdict v);

struct CampaignReport {
    std::uint64_t n_trials = 0;
    std::uint64_t n_falsified = 0;
    double empirical_rate = 0.0;
    double theoretical_rate = 0.0;
    double z_score = 0.0;
    /// Set when the theoretical rate is 0 or 1 and z_score is reported as 0.
    bool z_score_degenerate = false;
    std::uint64_t seed = 0;
    Verdict verdict = Verdict::NotFalsified;
};

struct TrialRecord {
    std::uint64_t trial;
    TestOutcome outcome;
    double p_theoretical;
    std::uint64_t seed;
};

/// Throws OutOfRange unless p is in [0, 1].
CoinSetup make_coin(double p, double phi);

/// i.i.d. readout outcomes of the prepared state.
std::vector<std::size_t> sample_generator(const Generator &g, std::size_t n, RandomStream &rng);

/// Support test of the declared pure state: F = I - |psi><psi|.
FalsificationTest coin_falsification_test(const Generator &declared);

struct CampaignOptions {
    /// Worker threads; the report does not depend on this.
    unsigned threads = 1;
    /// When non-null, receives one record per trial in trial order.
    std::vector<TrialRecord> *trace = nullptr;
};

/// Runs n_trials single-shot falsification tests of `declared` on copies of
/// `true_state`. Trial i draws from derive_seed(master_seed, i).
CampaignReport falsify_campaign(const Generator &declared, const QuantumState &true_state, std::uint64_t n_trials,
                                std::uint64_t master_seed, const CampaignOptions &options = {});

/// Classical view of the same generator: a distribution strictly inside the
/// simplex admits no falsifying outcome.
Verdict classical_baseline(double declared_p, std::span<const int> outcomes);

}  // namespace optf
