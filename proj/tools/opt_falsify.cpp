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

// opt-falsify: batch front end for purification demos, falsification
// campaigns, generator sampling and the structural property suites.
//
// Exit codes: 0 success (whatever the verdict), 1 property-suite failure,
// 2 invalid flags, config or input data.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "optfalsify/classical.hpp"
#include "optfalsify/error.hpp"
#include "optfalsify/io.hpp"
#include "optfalsify/postulates.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/rng_falsify.hpp"

namespace {

using optf::io::json;

constexpr int kExitOk = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitInvalid = 2;

struct RunConfig {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    double rank_tol = optf::kDefaultRankTol;
    std::string out_path;
    std::string csv_path;
    std::string dims = "2..4";
    std::string inject_fault;
    std::size_t instances = 20;
    unsigned threads = 1;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const RunConfig &cfg, std::optional<std::uint64_t> from_config) {
    if (cfg.seed) {
        return *cfg.seed;
    }
    if (from_config) {
        return *from_config;
    }
    if (const char *env = std::getenv("OPT_FALSIFY_SEED")) {
        try {
            std::size_t used = 0;
            const auto seed = std::stoull(env, &used);
            if (used == std::string(env).size()) {
                return seed;
            }
        } catch (const std::exception &) {
        }
        throw UsageError("OPT_FALSIFY_SEED is not an unsigned integer: " + std::string(env));
    }
    return 0;
}

void validate(const RunConfig &cfg) {
    if (!(cfg.rank_tol > 0.0 && cfg.rank_tol < 1e-4)) {
        throw UsageError("--rank-tol must lie in (0, 1e-4)");
    }
    if (cfg.trials && *cfg.trials == 0) {
        throw UsageError("--trials must be at least 1");
    }
}

optf::io::json load_config(const RunConfig &cfg) {
    if (cfg.config_path.empty()) {
        throw UsageError("--config is required");
    }
    return optf::io::read_file(cfg.config_path);
}

void emit(const RunConfig &cfg, const json &doc) {
    const std::string text = optf::io::dump(doc);
    if (cfg.out_path.empty()) {
        std::cout << text;
    } else {
        optf::io::write_file(cfg.out_path, text);
    }
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string &dims) {
    static const std::regex pattern(R"((\d+)\.\.(\d+))");
    std::smatch m;
    if (!std::regex_match(dims, m, pattern)) {
        throw UsageError("--dims expects A..B, got " + dims);
    }
    return {std::stoul(m[1].str()), std::stoul(m[2].str())};
}

int cmd_purify(const RunConfig &cfg) {
    const json doc = load_config(cfg);
    const optf::QuantumState rho(optf::io::state_from_json(doc).matrix(), cfg.rank_tol);
    const optf::Purification psi = optf::purify(rho, cfg.rank_tol);
    json out = optf::io::purification_to_json(psi);
    out["marginal_error"] = optf::max_abs_diff(psi.marginal(), rho.matrix());
    emit(cfg, out);
    return kExitOk;
}

int cmd_falsify_coin(const RunConfig &cfg) {
    const json doc = load_config(cfg);
    const optf::io::CampaignConfig campaign = optf::io::campaign_config_from_json(doc);
    const std::uint64_t seed = resolve_seed(cfg, campaign.seed);
    const std::uint64_t n = cfg.trials.value_or(campaign.n_trials);
    if (n == 0) {
        throw UsageError("n_trials must be at least 1");
    }
    std::vector<optf::TrialRecord> trace;
    optf::CampaignOptions options;
    options.threads = cfg.threads;
    options.trace = cfg.csv_path.empty() ? nullptr : &trace;
    const optf::CampaignReport report =
        optf::falsify_campaign(campaign.declared, campaign.true_state, n, seed, options);
    if (!cfg.csv_path.empty()) {
        std::ofstream csv(cfg.csv_path, std::ios::binary);
        if (!csv) {
            throw UsageError("cannot write " + cfg.csv_path);
        }
        optf::io::write_trace_csv(csv, trace);
    }
    emit(cfg, optf::io::report_to_json(report));
    return kExitOk;
}

int cmd_sample(const RunConfig &cfg) {
    const json doc = load_config(cfg);
    const json &declared = doc.contains("declared") ? doc.at("declared") : doc;
    const optf::Generator gen = optf::io::generator_from_json(declared);
    std::optional<std::uint64_t> config_seed;
    if (doc.contains("seed")) {
        config_seed = doc.at("seed").get<std::uint64_t>();
    }
    std::uint64_t n = 1000;
    if (cfg.trials) {
        n = *cfg.trials;
    } else if (doc.contains("n_trials")) {
        n = doc.at("n_trials").get<std::uint64_t>();
    }
    const std::uint64_t seed = resolve_seed(cfg, config_seed);
    optf::RandomStream rng(seed);
    const auto outcomes = optf::sample_generator(gen, n, rng);
    const auto probs = optf::outcome_probabilities(gen);
    std::vector<std::uint64_t> counts(probs.size(), 0);
    for (auto o : outcomes) {
        ++counts[o];
    }
    std::vector<double> freqs;
    for (auto c : counts) {
        freqs.push_back(static_cast<double>(c) / static_cast<double>(n));
    }
    if (!cfg.csv_path.empty()) {
        std::ofstream csv(cfg.csv_path, std::ios::binary);
        if (!csv) {
            throw UsageError("cannot write " + cfg.csv_path);
        }
        csv << "trial,outcome\n";
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            csv << i << ',' << outcomes[i] << '\n';
        }
    }
    emit(cfg, json{{"declared", optf::io::generator_to_json(gen)},
                   {"n_samples", n},
                   {"seed", seed},
                   {"counts", counts},
                   {"frequencies", freqs},
                   {"probabilities", probs}});
    return kExitOk;
}

int cmd_check_postulates(const RunConfig &cfg) {
    optf::SuiteOptions options;
    options.seed = resolve_seed(cfg, std::nullopt);
    std::tie(options.dim_lo, options.dim_hi) = parse_dims(cfg.dims);
    options.instances_per_dim = cfg.instances;
    options.rank_tol = cfg.rank_tol;
    options.inject_fault = cfg.inject_fault;

    std::vector<optf::PropertyResult> results;
    try {
        results = optf::run_postulate_suites(options);
    } catch (const optf::Error &e) {
        throw UsageError(e.what());
    }

    bool all = true;
    json table = json::array();
    std::cout << "seed " << options.seed << ", dims " << options.dim_lo << ".." << options.dim_hi << "\n";
    for (const auto &r : results) {
        all = all && r.passed;
        std::cout << (r.passed ? "PASS  " : "FAIL  ") << r.name << "  (n=" << r.instances << ", worst=" << r.worst
                  << ", tol=" << r.tolerance << ")";
        if (!r.detail.empty()) {
            std::cout << "  " << r.detail;
        }
        std::cout << "\n";
        table.push_back(json{{"name", r.name},
                             {"passed", r.passed},
                             {"instances", r.instances},
                             {"worst", r.worst},
                             {"tolerance", r.tolerance},
                             {"detail", r.detail}});
    }
    if (!cfg.out_path.empty()) {
        optf::io::write_file(cfg.out_path,
                             optf::io::dump(json{{"seed", options.seed}, {"all_passed", all}, {"properties", table}}));
    }
    return all ? kExitOk : kExitSuiteFailure;
}

int cmd_classical_baseline(const RunConfig &cfg) {
    const json doc = load_config(cfg);
    const double p = doc.at("declared_p").get<double>();
    const auto outcomes = doc.at("outcomes").get<std::vector<int>>();
    const optf::Verdict verdict = optf::classical_baseline(p, outcomes);
    json out{{"declared_p", p}, {"n_outcomes", outcomes.size()}, {"verdict", std::string(optf::to_string(verdict))}};
    const auto falsifiers = optf::classical_falsifier_exists(optf::ClassicalState({p, 1.0 - p}), cfg.rank_tol);
    out["falsifying_outcomes"] = falsifiers ? json(*falsifiers) : json(nullptr);
    emit(cfg, out);
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Falsification tests for quantum and classical random generators"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--rank-tol", cfg.rank_tol, "relative eigenvalue cutoff for supports");
        sub->add_option("--out", cfg.out_path, "write the JSON result here instead of stdout");
    };
    auto add_seed = [&](CLI::App *sub) {
        sub->add_option("--seed", cfg.seed, "master seed (fallback: config, then $OPT_FALSIFY_SEED, then 0)");
    };

    auto *purify = app.add_subcommand("purify", "purify a state given as state-JSON");
    purify->add_option("--config", cfg.config_path, "state JSON file")->required();
    add_common(purify);

    auto *falsify = app.add_subcommand("falsify-coin", "run a falsification campaign against a declared generator");
    falsify->add_option("--config", cfg.config_path, "campaign config JSON")->required();
    falsify->add_option("--trials", cfg.trials, "override n_trials");
    falsify->add_option("--csv", cfg.csv_path, "per-trial trace CSV");
    falsify->add_option("--threads", cfg.threads, "worker threads (report is independent of this)");
    add_seed(falsify);
    add_common(falsify);

    auto *sample = app.add_subcommand("sample", "sample readout outcomes of a declared generator");
    sample->add_option("--config", cfg.config_path, "generator JSON ({declared: ...} or bare)")->required();
    sample->add_option("--trials", cfg.trials, "number of samples");
    sample->add_option("--csv", cfg.csv_path, "per-sample CSV");
    add_seed(sample);
    add_common(sample);

    auto *check = app.add_subcommand("check-postulates", "run the structural property suites");
    check->add_option("--dims", cfg.dims, "dimension range A..B")->capture_default_str();
    check->add_option("--inject-fault", cfg.inject_fault, "deliberately break one suite (self-test)");
    check->add_option("--instances", cfg.instances, "random instances per dimension")->capture_default_str();
    add_seed(check);
    add_common(check);

    auto *baseline = app.add_subcommand("classical-baseline", "classical falsifiability verdict for a binary source");
    baseline->add_option("--config", cfg.config_path, "{declared_p, outcomes} JSON")->required();
    add_common(baseline);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitInvalid;
    }

    try {
        validate(cfg);
        if (purify->parsed()) {
            return cmd_purify(cfg);
        }
        if (falsify->parsed()) {
            return cmd_falsify_coin(cfg);
        }
        if (sample->parsed()) {
            return cmd_sample(cfg);
        }
        if (check->parsed()) {
            return cmd_check_postulates(cfg);
        }
        return cmd_classical_baseline(cfg);
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const optf::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "error: malformed config: " << e.what() << "\n";
    }
    return kExitInvalid;
}
