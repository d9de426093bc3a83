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

#include "optfalsify/rng_falsify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "optfalsify/classical.hpp"
#include "optfalsify/error.hpp"

namespace optf {

namespace {

ComplexMatrix amplitudes(std::span<const double> probs, std::span<const double> phases) {
    ComplexMatrix psi(probs.size(), 1);
    for (std::size_t n = 0; n < probs.size(); ++n) {
        psi[n] = std::polar(std::sqrt(probs[n]), phases[n]);
    }
    return psi;
}

std::vector<Effect> computational_readout(std::size_t dim) {
    std::vector<Effect> omega;
    omega.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const ComplexMatrix ket = ComplexMatrix::basis_ket(dim, i);
        omega.emplace_back(outer(ket, ket));
    }
    return omega;
}

}  // namespace

CoinSetup::CoinSetup(double p, double phi) : p_(p), phi_(phi) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::OutOfRange, "coin bias p must lie in [0, 1]");
    }
    if (!std::isfinite(phi)) {
        throw Error(ErrorKind::NonFinite, "coin phase must be finite");
    }
    const double probs[] = {p, 1.0 - p};
    const double phases[] = {0.0, phi};
    psi_ = amplitudes(probs, phases);
    observation_ = computational_readout(2);
}

NaryGenerator::NaryGenerator(std::vector<double> probs, std::vector<double> phases)
    : probs_(std::move(probs)), phases_(std::move(phases)) {
    if (probs_.size() < 2) {
        throw Error(ErrorKind::Dim1, "a generator needs at least two outcomes");
    }
    if (phases_.empty()) {
        phases_.assign(probs_.size(), 0.0);
    }
    if (phases_.size() != probs_.size()) {
        throw Error(ErrorKind::DimensionMismatch, "one phase per outcome is required");
    }
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0 && probs_[i] <= 1.0) || !std::isfinite(phases_[i])) {
            throw Error(ErrorKind::OutOfRange, "probabilities must lie in [0, 1] and phases be finite");
        }
    }
    const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
    if (std::abs(total - 1.0) > kValidationTol) {
        throw Error(ErrorKind::OutOfRange, "probabilities sum to " + std::to_string(total));
    }
    psi_ = amplitudes(probs_, phases_);
}

const ComplexMatrix &state_vector(const Generator &g) {
    return std::visit([](const auto &gen) -> const ComplexMatrix & { return gen.state_vector(); }, g);
}

std::vector<double> outcome_probabilities(const Generator &g) {
    const QuantumState rho = QuantumState::pure(state_vector(g));
    std::vector<double> probs;
    for (const Effect &omega : computational_readout(rho.dim())) {
        probs.push_back(born_probability(rho, omega));
    }
    return probs;
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Falsified:
            return "FALSIFIED";
        case Verdict::NotFalsified:
            return "NOT_FALSIFIED";
        case Verdict::NotFalsifiable:
            return "NOT_FALSIFIABLE";
    }
    return "UNKNOWN";
}

CoinSetup make_coin(double p, double phi) {
    return CoinSetup(p, phi);
}

std::vector<std::size_t> sample_generator(const Generator &g, std::size_t n, RandomStream &rng) {
    if (n == 0) {
        throw Error(ErrorKind::OutOfRange, "at least one sample is required");
    }
    const std::vector<double> probs = outcome_probabilities(g);
    std::vector<double> cdf(probs.size());
    std::partial_sum(probs.begin(), probs.end(), cdf.begin());
    // Rounding can leave cdf.back() a hair below 1; overflow goes to the last
    // outcome that actually carries probability.
    std::size_t last_possible = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (probs[i] > 0.0) {
            last_possible = i;
        }
    }
    std::vector<std::size_t> outcomes(n);
    for (auto &out : outcomes) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        out = it == cdf.end() ? last_possible : static_cast<std::size_t>(it - cdf.begin());
    }
    return outcomes;
}

FalsificationTest coin_falsification_test(const Generator &declared) {
    const ComplexMatrix &psi = state_vector(declared);
    std::string label = std::visit(
        [](const auto &gen) -> std::string {
            if constexpr (std::is_same_v<std::decay_t<decltype(gen)>, CoinSetup>) {
                return "prepared state is coin(p=" + std::to_string(gen.p()) + ", phi=" + std::to_string(gen.phi()) +
                       ")";
            } else {
                return "prepared state is the declared " + std::to_string(gen.dim()) + "-ary generator";
            }
        },
        declared);
    return FalsificationTest(Effect(ComplexMatrix::identity(psi.rows()) - outer(psi, psi)), std::move(label));
}

CampaignReport falsify_campaign(const Generator &declared, const QuantumState &true_state, std::uint64_t n_trials,
                                std::uint64_t master_seed, const CampaignOptions &options) {
    const FalsificationTest test = coin_falsification_test(declared);
    if (true_state.dim() != test.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "true state and declared generator differ in dimension");
    }
    if (!true_state.deterministic()) {
        throw Error(ErrorKind::NotDeterministic, "campaigns run on normalized states");
    }
    if (n_trials == 0) {
        throw Error(ErrorKind::OutOfRange, "n_trials must be at least 1");
    }
    const double rate = falsification_probability(test, true_state);
    if (options.trace != nullptr) {
        options.trace->assign(n_trials, TrialRecord{0, TestOutcome::Inconclusive, rate, 0});
    }

    auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
        std::uint64_t hits = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const std::uint64_t seed = derive_seed(master_seed, i);
            RandomStream stream(seed);
            const TestOutcome outcome = run_test(test, true_state, stream);
            if (outcome == TestOutcome::Falsified) {
                ++hits;
            }
            if (options.trace != nullptr) {
                (*options.trace)[i] = TrialRecord{i, outcome, rate, seed};
            }
        }
        return hits;
    };

    std::uint64_t falsified = 0;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, 64));
    if (workers == 1 || n_trials < workers) {
        falsified = run_range(0, n_trials);
    } else {
        std::vector<std::uint64_t> counts(workers, 0);
        std::vector<std::thread> pool;
        const std::uint64_t chunk = (n_trials + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            const std::uint64_t begin = std::min<std::uint64_t>(w * chunk, n_trials);
            const std::uint64_t end = std::min<std::uint64_t>(begin + chunk, n_trials);
            pool.emplace_back([&, w, begin, end] { counts[w] = run_range(begin, end); });
        }
        for (auto &t : pool) {
            t.join();
        }
        falsified = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    }

    CampaignReport report;
    report.n_trials = n_trials;
    report.n_falsified = falsified;
    report.empirical_rate = static_cast<double>(falsified) / static_cast<double>(n_trials);
    report.theoretical_rate = rate;
    report.seed = master_seed;
    report.verdict = falsified >= 1 ? Verdict::Falsified : Verdict::NotFalsified;
    if (rate > kNumericalZeroProbability && rate < 1.0 - kNumericalZeroProbability) {
        report.z_score = (report.empirical_rate - rate) / std::sqrt(rate * (1.0 - rate) / static_cast<double>(n_trials));
    } else {
        report.z_score = 0.0;
        report.z_score_degenerate = true;
    }
    return report;
}

Verdict classical_baseline(double declared_p, std::span<const int> outcomes) {
    if (!(declared_p >= 0.0 && declared_p <= 1.0)) {
        throw Error(ErrorKind::OutOfRange, "declared p must lie in [0, 1]");
    }
    for (int o : outcomes) {
        if (o != 0 && o != 1) {
            throw Error(ErrorKind::OutOfRange, "binary outcomes must be 0 or 1");
        }
    }
    const auto impossible = classical_falsifier_exists(ClassicalState({declared_p, 1.0 - declared_p}));
    if (!impossible) {
        return Verdict::NotFalsifiable;
    }
    for (int o : outcomes) {
        if (std::find(impossible->begin(), impossible->end(), static_cast<std::size_t>(o)) != impossible->end()) {
            return Verdict::Falsified;
        }
    }
    return Verdict::NotFalsified;
}

}  // namespace optf
