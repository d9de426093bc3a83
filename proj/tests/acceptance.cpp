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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "optfalsify/instances.hpp"
#include "optfalsify/io.hpp"
#include "optfalsify/linalg.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/rng_falsify.hpp"
#include "oracle.hpp"

namespace {

using namespace optf;
using testing::EMat;
using testing::to_eigen;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool passed;
    std::string detail;
};

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char *pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

Outcome coin_rate_law() {
    const auto t0 = Clock::now();
    const auto r = falsify_campaign(make_coin(0.5, 0.0), QuantumState(ComplexMatrix::diagonal({0.5, 0.5})), 100000, 42);
    const double elapsed = seconds_since(t0);
    const bool ok = std::abs(r.empirical_rate - 0.5) <= 0.0063 && elapsed < 5.0;
    return {ok, fmt("rate=%.6f (0.5 +/- 0.0063), %.2fs < 5s", r.empirical_rate, elapsed)};
}

Outcome soundness() {
    const auto t0 = Clock::now();
    const auto coin = make_coin(0.5, 0.0);
    const auto r = falsify_campaign(coin, QuantumState::pure(coin.state_vector()), 1000000, 42);
    const double elapsed = seconds_since(t0);
    return {r.n_falsified == 0 && elapsed < 10.0,
            fmt("n_falsified=%.0f over 1e6 trials, %.2fs < 10s", static_cast<double>(r.n_falsified), elapsed)};
}

Outcome contrast() {
    const std::vector<int> outcomes{0, 1, 1, 0, 1};
    bool ok = true;
    double min_rate = 1.0;
    for (int k = 1; k <= 9; ++k) {
        const double p = 0.1 * k;
        ok = ok && classical_baseline(p, outcomes) == Verdict::NotFalsifiable;
        const double theta = std::acos(std::sqrt(p)) + 0.2;
        const auto rotated = ComplexMatrix::column({std::cos(theta), std::sin(theta)});
        const auto r = falsify_campaign(make_coin(p, 0.0), QuantumState::pure(rotated), 1000, 42);
        min_rate = std::min(min_rate, r.theoretical_rate);
        ok = ok && r.theoretical_rate >= 0.01;
    }
    return {ok, fmt("classical NOT_FALSIFIABLE on p-grid; min quantum rate %.4f >= 0.01", min_rate)};
}

Outcome purification() {
    const auto t0 = Clock::now();
    RandomStream rng(1001);
    double worst = 0.0;
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int i = 0; i < 50; ++i) {
            const auto rho = instances::random_state(d, 1 + rng() % d, rng);
            const auto psi = purify(rho);
            const EMat v = to_eigen(psi.state_vector());
            const EMat red = testing::oracle_trace_b(v * v.adjoint(), static_cast<Eigen::Index>(d),
                                                     static_cast<Eigen::Index>(psi.dim_b()));
            worst = std::max(worst, testing::oracle_max_diff(rho.matrix(), red));
        }
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-9 && elapsed < 2.0, fmt("150 states, worst marginal error %.2e <= 1e-9, %.2fs < 2s", worst, elapsed)};
}

Outcome uniqueness() {
    RandomStream rng(1002);
    double worst_vec = 0.0;
    double worst_unit = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const auto rho = instances::random_state(d, rng);
        const auto base = purify(rho).state_vector();
        const auto id = ComplexMatrix::identity(d);
        const Purification p1(tensor(id, instances::random_unitary(d, rng)) * base, d, d);
        const Purification p2(tensor(id, instances::random_unitary(d, rng)) * base, d, d);
        const auto u = connecting_unitary(p1, p2);
        const EMat eu = to_eigen(u);
        const EMat moved = testing::oracle_kron(EMat::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d)), eu) *
                           to_eigen(p1.state_vector());
        worst_vec = std::max(worst_vec, (moved - to_eigen(p2.state_vector())).norm());
        worst_unit = std::max(worst_unit, testing::max_abs(eu.adjoint() * eu - EMat::Identity(eu.rows(), eu.cols())));
    }
    return {worst_vec <= 1e-8 && worst_unit <= 1e-9,
            fmt("50 pairs, |(I x U)psi1 - psi2| %.2e <= 1e-8, |U^dag U - I| %.2e <= 1e-9", worst_vec, worst_unit)};
}

Outcome discrimination() {
    RandomStream rng(1003);
    std::size_t agree = 0;
    std::size_t total = 0;
    auto check = [&](const QuantumState &rho, const QuantumState &nu, bool expect_orthogonal) {
        const double overlap =
            (testing::oracle_support(rho.matrix(), 1e-10) * testing::oracle_support(nu.matrix(), 1e-10)).trace().real();
        const bool oracle = overlap <= 1e-8;
        const bool got = perfectly_discriminable(rho, nu).discriminable;
        ++total;
        agree += (got == oracle && (!expect_orthogonal || got)) ? 1 : 0;
    };
    for (std::size_t d = 2; d <= 4; ++d) {
        for (int i = 0; i < 200; ++i) {
            check(instances::random_state(d, 1 + rng() % d, rng), instances::random_state(d, 1 + rng() % d, rng), false);
        }
    }
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const std::size_t split = 1 + rng() % (d - 1);
        const auto u = instances::random_unitary(d, rng);
        ComplexMatrix a = ComplexMatrix::zeros(d, d);
        ComplexMatrix b = ComplexMatrix::zeros(d, d);
        for (std::size_t k = 0; k < d; ++k) {
            (k < split ? a : b) += outer(u.col(k), u.col(k));
        }
        check(QuantumState((1.0 / static_cast<double>(split)) * a),
              QuantumState((1.0 / static_cast<double>(d - split)) * b), true);
    }
    return {agree == total, fmt("%.0f / %.0f pairs agree with the Tr(P_rho P_nu) oracle", static_cast<double>(agree),
                                static_cast<double>(total))};
}

Outcome local_falsifiers() {
    RandomStream rng(1004);
    double worst_born = 0.0;
    for (std::size_t d : {2, 3}) {
        for (int i = 0; i < 100; ++i) {
            const auto psi = instances::random_ket(d * d, rng);
            const auto lf = local_falsifier(doubleket_to_mat(psi), instances::random_ket(d, rng));
            const EMat v = to_eigen(psi);
            worst_born = std::max(worst_born, std::abs((v.adjoint() * to_eigen(lf.falsifier.matrix()) * v)(0, 0)));
        }
    }
    double worst_recon = 0.0;
    for (int i = 0; i < 50; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
        const auto r = instances::random_state(d * d, 1 + rng() % (d * d), rng);
        EMat sum = EMat::Zero(static_cast<Eigen::Index>(d * d), static_cast<Eigen::Index>(d * d));
        for (const auto &t : canonical_form(r, d)) {
            const Eigen::VectorXcd v = testing::oracle_vec(to_eigen(t.operator_));
            sum += v * v.adjoint();
        }
        worst_recon = std::max(worst_recon, testing::oracle_max_diff(r.matrix(), sum));
    }
    return {worst_born <= 1e-10 && worst_recon <= 1e-9,
            fmt("200 pure states, worst Born %.2e <= 1e-10; 50 canonical forms, worst %.2e <= 1e-9", worst_born,
                worst_recon)};
}

Outcome compression() {
    RandomStream rng(1005);
    double worst_iso = 0.0;
    double worst_recon = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 4);
        const auto rho = instances::random_state(d, 1 + rng() % (d - 1), rng);
        const auto c = compress(rho);
        const EMat v = to_eigen(c.isometry);
        worst_iso = std::max(worst_iso, testing::max_abs(v * v.adjoint() - EMat::Identity(v.rows(), v.rows())));
        worst_recon = std::max(worst_recon,
                               testing::oracle_max_diff(rho.matrix(), v.adjoint() * to_eigen(c.compressed.matrix()) * v));
    }
    return {worst_iso <= 1e-10 && worst_recon <= 1e-9,
            fmt("100 states, |VV^dag - I| %.2e <= 1e-10, reconstruction %.2e <= 1e-9", worst_iso, worst_recon)};
}

Outcome rank_monotonicity() {
    RandomStream rng(1006);
    int violations = 0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const auto rho = instances::random_state(d, 1 + rng() % d, rng);
        const auto out = apply_channel(instances::random_atomic_channel(d, d, rng), rho);
        violations += psd_rank(out.matrix(), 1e-10) > psd_rank(rho.matrix(), 1e-10) ? 1 : 0;
    }
    const double s = 1.0 / std::sqrt(2.0);
    const auto plus = QuantumState::pure(ComplexMatrix::column({s, s}));
    const KrausChannel dephase({ComplexMatrix::diagonal({1, 0}), ComplexMatrix::diagonal({0, 1})});
    const auto before = psd_rank(plus.matrix(), 1e-10);
    const auto after = psd_rank(apply_channel(dephase, plus).matrix(), 1e-10);
    return {violations == 0 && before == 1 && after == 2,
            fmt("%.0f atomic violations in 100; dephasing rank %.0f -> %.0f", violations, static_cast<double>(before),
                static_cast<double>(after))};
}

Outcome dilation() {
    RandomStream rng(1007);
    double worst = 0.0;
    for (std::size_t d : {2, 3}) {
        for (int i = 0; i < 10; ++i) {
            const auto ch = instances::random_channel(d, 1 + rng() % 4, rng);
            const auto dl = dilate(ch);
            const auto rho = instances::random_state(d, rng);
            for (std::size_t k = 0; k < ch.kraus().size(); ++k) {
                const EMat a = to_eigen(ch.kraus()[k]);
                worst = std::max(worst, testing::oracle_max_diff(dilation_branch(dl, rho, k),
                                                                 a * to_eigen(rho.matrix()) * a.adjoint()));
            }
        }
    }
    return {worst <= 1e-9, fmt("20 channels, worst branch error %.2e <= 1e-9", worst)};
}

Outcome double_ket() {
    RandomStream rng(1008);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 2);
        const auto a = instances::gaussian_matrix(d, d, rng);
        const auto b = instances::gaussian_matrix(d, d, rng);
        const auto c = instances::gaussian_matrix(d, d, rng);
        worst = std::max(worst, norm(tensor(a, b) * mat_to_doubleket(c) - mat_to_doubleket(a * c * b.transpose())));
    }
    return {worst <= 1e-12, fmt("100 triples, worst %.2e <= 1e-12", worst)};
}

std::string slurp(const std::filesystem::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "opt_falsify_acceptance";
    fs::create_directories(dir);
    {
        std::ofstream cfg(dir / "campaign.json");
        cfg << R"({"declared": {"p": 0.5, "phi": 0}, )"
               R"("true_state": {"kind": "state", "rows": 2, "cols": 2, "re": [0.5, 0, 0, 0.5]}, )"
               R"("n_trials": 100000, "seed": 42})";
    }
    auto run = [&](const char *out) {
        const std::string cmd = std::string("\"") + OPT_FALSIFY_BIN + "\" falsify-coin --config \"" +
                                (dir / "campaign.json").string() + "\" --out \"" + (dir / out).string() + "\"";
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    };
    const int a = run("a.json");
    const int b = run("b.json");
    const std::string ra = slurp(dir / "a.json");
    const std::string rb = slurp(dir / "b.json");
    fs::remove_all(dir);
    const bool ok = a == 0 && b == 0 && !ra.empty() && ra == rb;
    return {ok, fmt("exit codes %.0f/%.0f, %.0f-byte reports identical", a, b, static_cast<double>(ra.size()))};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"coin rate law", coin_rate_law},
        {"soundness", soundness},
        {"quantum/classical contrast", contrast},
        {"purification existence", purification},
        {"purification uniqueness", uniqueness},
        {"perfect discriminability", discrimination},
        {"local falsifier and canonical form", local_falsifiers},
        {"compression", compression},
        {"rank monotonicity", rank_monotonicity},
        {"dilation", dilation},
        {"double-ket identity", double_ket},
        {"report determinism", determinism},
    };
    int failed = 0;
    int index = 0;
    for (const auto &[name, check] : criteria) {
        ++index;
        Outcome o{false, ""};
        try {
            o = check();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += o.passed ? 0 : 1;
        std::printf("%s  %2d  %-36s %s\n", o.passed ? "PASS" : "FAIL", index, name, o.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
