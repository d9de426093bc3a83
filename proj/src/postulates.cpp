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

#include "optfalsify/postulates.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <functional>
#include <numbers>

#include "optfalsify/error.hpp"
#include "optfalsify/instances.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/random.hpp"

namespace optf {

namespace {

constexpr std::string_view kFaultKraus = "kraus-validation";
constexpr std::string_view kFaultPurification = "purification";
constexpr std::string_view kFaultLocalFalsifier = "local-falsifier";

struct Tracker {
    PropertyResult result;

    Tracker(std::string name, double tolerance) {
        result.name = std::move(name);
        result.tolerance = tolerance;
    }

    void observe(double defect) {
        ++result.instances;
        result.worst = std::max(result.worst, defect);
        if (!(defect <= result.tolerance)) {
            result.passed = false;
        }
    }

    void require(bool ok, const std::string &what) {
        ++result.instances;
        if (!ok) {
            result.passed = false;
            if (result.detail.empty()) {
                result.detail = what;
            }
        }
    }
};

using Suite = std::function<PropertyResult(const SuiteOptions &, RandomStream &)>;

PropertyResult double_ket_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("double-ket (A(x)B)|C>> = |A C B^T>>", 1e-12);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const ComplexMatrix a = instances::gaussian_matrix(d, d, rng);
            const ComplexMatrix b = instances::gaussian_matrix(d, d, rng);
            const ComplexMatrix c = instances::gaussian_matrix(d, d, rng);
            const ComplexMatrix lhs = tensor(a, b) * mat_to_doubleket(c);
            const ComplexMatrix rhs = mat_to_doubleket(a * c * b.transpose());
            const double scale = std::max(1.0, norm(rhs));
            t.observe(norm(lhs - rhs) / scale);
        }
    }
    return t.result;
}

PropertyResult purification_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("purification marginal recovery", 1e-9);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d);
            const QuantumState rho = instances::random_state(d, rank, rng);
            const Purification psi = purify(rho, opt.rank_tol);
            ComplexMatrix marginal = psi.marginal();
            if (opt.inject_fault == kFaultPurification) {
                marginal(0, 0) += 1e-6;
            }
            t.observe(max_abs_diff(marginal, rho.matrix()));
        }
    }
    return t.result;
}

PropertyResult uniqueness_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("purification uniqueness (I(x)U)Psi1 = Psi2", 1e-8);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const QuantumState rho = instances::random_state(d, rng);
            const Purification psi1 = purify(rho, opt.rank_tol);
            const ComplexMatrix v = instances::random_unitary(psi1.dim_b(), rng);
            const ComplexMatrix moved = tensor(ComplexMatrix::identity(d), v) * psi1.state_vector();
            const Purification psi2(moved * (1.0 / norm(moved)), d, psi1.dim_b());
            const ComplexMatrix u = connecting_unitary(psi1, psi2);
            const ComplexMatrix mapped = tensor(ComplexMatrix::identity(d), u) * psi1.state_vector();
            const double unitarity = max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows()));
            t.observe(norm(mapped - psi2.state_vector()));
            t.require(unitarity <= 1e-9, "connecting unitary is not unitary");
        }
    }
    return t.result;
}

// Two states with orthogonal supports, carved out of one random basis.
std::pair<QuantumState, QuantumState> orthogonal_pair(std::size_t d, RandomStream &rng) {
    const ComplexMatrix u = instances::random_unitary(d, rng);
    const std::size_t split = 1 + static_cast<std::size_t>(rng() % (d - 1));
    ComplexMatrix r(d, d);
    ComplexMatrix n(d, d);
    double tr = 0.0;
    double tn = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
        const double w = 0.1 + rng.uniform();
        const ComplexMatrix proj = outer(u.col(k), u.col(k));
        if (k < split) {
            r += w * proj;
            tr += w;
        } else {
            n += w * proj;
            tn += w;
        }
    }
    return {QuantumState((1.0 / tr) * r), QuantumState((1.0 / tn) * n)};
}

PropertyResult discrimination_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("discriminability iff orthogonal supports", 0.0);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const bool constructed = (i % 2) == 0;
            const auto [rho, nu] = constructed
                                       ? orthogonal_pair(d, rng)
                                       : std::pair{instances::random_state(d, 1 + rng() % d, rng),
                                                   instances::random_state(d, 1 + rng() % d, rng)};
            const Discrimination res = perfectly_discriminable(rho, nu, opt.rank_tol);
            // Second route: Tr(P_rho P_nu) = ||B_rho^dagger B_nu||_F^2 from the support bases.
            const ComplexMatrix overlap =
                support_basis(rho.matrix(), opt.rank_tol).adjoint() * support_basis(nu.matrix(), opt.rank_tol);
            const double tr = overlap.frobenius_norm() * overlap.frobenius_norm();
            t.require(res.discriminable == (tr <= 1e-8), "criterion disagrees with Tr(P_rho P_nu)");
            if (constructed) {
                t.require(res.discriminable, "orthogonal-support pair not recognized");
            }
            if (res.falsifiers) {
                t.require(born_probability(rho, Effect(res.falsifiers->first)) <= 1e-10 &&
                              born_probability(nu, Effect(res.falsifiers->first)) >= 1.0 - 1e-8,
                          "ker rho does not falsify rho inside Supp nu");
            }
        }
    }
    return t.result;
}

PropertyResult local_falsifier_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("local falsifier and canonical form", 1e-9);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const ComplexMatrix ket = instances::random_ket(d * d, rng);
            const ComplexMatrix a_op = doubleket_to_mat(ket, d, d);
            const ComplexMatrix a = ComplexMatrix::basis_ket(d, static_cast<std::size_t>(rng() % d));
            const LocalFalsifier lf = local_falsifier(a_op, a);
            ComplexMatrix falsifier = lf.falsifier.matrix();
            if (opt.inject_fault == kFaultLocalFalsifier) {
                // b along A^T a* instead of orthogonal to it.
                const ComplexMatrix w = a_op.transpose() * a.conj();
                const ComplexMatrix b = (1.0 / norm(w)) * w;
                falsifier = tensor(outer(a, a), outer(b, b));
            }
            const double p = born_probability(QuantumState::pure(ket), Effect(falsifier));
            t.require(p <= 1e-10, "local falsifier fires on its own entangled state");

            const QuantumState r = instances::random_state(d * d, 1 + rng() % (d * d), rng);
            const auto terms = canonical_form(r, d, opt.rank_tol);
            ComplexMatrix rebuilt(d * d, d * d);
            for (std::size_t x = 0; x < terms.size(); ++x) {
                const ComplexMatrix v = mat_to_doubleket(terms[x].operator_);
                rebuilt += outer(v, v);
                for (std::size_t y = 0; y < x; ++y) {
                    const complex g = (terms[y].operator_.adjoint() * terms[x].operator_).trace();
                    t.require(std::abs(g) <= 1e-10, "canonical operators are not orthogonal");
                }
            }
            t.observe(max_abs_diff(rebuilt, r.matrix()));
        }
    }
    return t.result;
}

PropertyResult compression_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("compression isometry of falsifiable states", 1e-9);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const std::size_t rank = 1 + static_cast<std::size_t>(rng() % (d - 1));
            const QuantumState rho = instances::random_state(d, rank, rng);
            const Compression c = compress(rho, opt.rank_tol);
            const ComplexMatrix &v = c.isometry;
            t.require(max_abs_diff(v * v.adjoint(), ComplexMatrix::identity(rank)) <= 1e-10, "V V^dagger != I");
            t.require(c.compressed.dim() == rank, "compressed dimension differs from rank");
            t.observe(max_abs_diff(v.adjoint() * c.compressed.matrix() * v, rho.matrix()));
        }
    }
    return t.result;
}

PropertyResult rank_monotonicity_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("atomic channels never raise rank", 0.0);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const std::size_t rank = 1 + static_cast<std::size_t>(rng() % d);
            const QuantumState rho = instances::random_state(d, rank, rng);
            const KrausChannel ch = instances::random_atomic_channel(d, d, rng);
            const QuantumState out = apply_channel(ch, rho);
            t.require(psd_rank(out.matrix(), opt.rank_tol) <= psd_rank(rho.matrix(), opt.rank_tol),
                      "atomic channel increased rank");
        }
    }
    // Non-atomic counterexample: dephasing |+><+| gives I/2.
    const ComplexMatrix plus = ComplexMatrix::column({std::numbers::sqrt2 / 2, std::numbers::sqrt2 / 2});
    const KrausChannel dephasing({ComplexMatrix::diagonal({1.0, 0.0}), ComplexMatrix::diagonal({0.0, 1.0})});
    const QuantumState out = apply_channel(dephasing, QuantumState::pure(plus));
    t.require(psd_rank(out.matrix(), opt.rank_tol) == 2, "dephasing counterexample did not raise rank");
    return t.result;
}

PropertyResult dilation_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("dilation reproduces every Kraus branch", 1e-9);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const std::size_t n_kraus = 1 + static_cast<std::size_t>(rng() % 3);
            KrausChannel ch = instances::random_channel(d, n_kraus, rng);
            const QuantumState rho = instances::random_state(d, rng);
            try {
                if (opt.inject_fault == kFaultKraus) {
                    std::vector<ComplexMatrix> kraus = ch.kraus();
                    kraus.front() *= 1.05;
                    ch = KrausChannel(std::move(kraus));
                }
                const Dilation dil = dilate(ch);
                t.require(max_abs_diff(dil.unitary.adjoint() * dil.unitary,
                                       ComplexMatrix::identity(dil.unitary.rows())) <= 1e-9,
                          "dilation is not unitary");
                for (std::size_t k = 0; k < ch.kraus().size(); ++k) {
                    const ComplexMatrix &a = ch.kraus()[k];
                    t.observe(max_abs_diff(dilation_branch(dil, rho, k), a * rho.matrix() * a.adjoint()));
                }
            } catch (const Error &e) {
                t.require(false, e.what());
            }
        }
    }
    return t.result;
}

PropertyResult born_additivity_suite(const SuiteOptions &opt, RandomStream &rng) {
    Tracker t("Born rule additivity over complete effect families", 1e-10);
    for (std::size_t d = opt.dim_lo; d <= opt.dim_hi; ++d) {
        for (std::size_t i = 0; i < opt.instances_per_dim; ++i) {
            const QuantumState rho = instances::random_state(d, rng);
            const ComplexMatrix u = instances::random_unitary(d, rng);
            double total = 0.0;
            for (std::size_t k = 0; k < d; ++k) {
                total += born_probability(rho, Effect(outer(u.col(k), u.col(k))));
            }
            t.observe(std::abs(total - rho.trace()));
        }
    }
    return t.result;
}

}  // namespace

std::vector<std::string_view> known_faults() {
    return {kFaultKraus, kFaultPurification, kFaultLocalFalsifier};
}

std::vector<PropertyResult> run_postulate_suites(const SuiteOptions &options) {
    if (options.dim_lo < 2 || options.dim_hi < options.dim_lo) {
        throw Error(ErrorKind::OutOfRange, "dimension range must satisfy 2 <= lo <= hi");
    }
    if (!options.inject_fault.empty()) {
        const auto faults = known_faults();
        if (std::find(faults.begin(), faults.end(), options.inject_fault) == faults.end()) {
            throw Error(ErrorKind::OutOfRange, "unknown fault \"" + options.inject_fault + "\"");
        }
    }
    const std::vector<Suite> suites = {double_ket_suite,     purification_suite,      uniqueness_suite,
                                       discrimination_suite, local_falsifier_suite,   compression_suite,
                                       rank_monotonicity_suite, dilation_suite,       born_additivity_suite};
    std::vector<PropertyResult> results;
    for (std::size_t s = 0; s < suites.size(); ++s) {
        RandomStream rng(derive_seed(options.seed, s));
        try {
            results.push_back(suites[s](options, rng));
        } catch (const std::exception &e) {
            PropertyResult failed;
            failed.name = "suite #" + std::to_string(s);
            failed.passed = false;
            failed.detail = e.what();
            results.push_back(std::move(failed));
        }
    }
    return results;
}

}  // namespace optf
