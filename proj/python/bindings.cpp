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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "optfalsify/classical.hpp"
#include "optfalsify/error.hpp"
#include "optfalsify/falsification.hpp"
#include "optfalsify/io.hpp"
#include "optfalsify/linalg.hpp"
#include "optfalsify/quantum.hpp"
#include "optfalsify/rng_falsify.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// 1-D input becomes a column vector.
optf::ComplexMatrix to_matrix(const CArray &a) {
    if (a.ndim() != 1 && a.ndim() != 2) {
        throw py::value_error("expected a 1-D or 2-D array");
    }
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = a.ndim() == 2 ? static_cast<std::size_t>(a.shape(1)) : std::size_t{1};
    std::vector<optf::complex> entries(a.data(), a.data() + rows * cols);
    return optf::ComplexMatrix(rows, cols, std::move(entries));
}

CArray to_array(const optf::ComplexMatrix &m) {
    CArray out({m.rows(), m.cols()});
    std::memcpy(out.mutable_data(), m.entries().data(), m.size() * sizeof(optf::complex));
    return out;
}

optf::Subsystem parse_keep(const std::string &keep) {
    if (keep == "A") {
        return optf::Subsystem::A;
    }
    if (keep == "B") {
        return optf::Subsystem::B;
    }
    throw py::value_error("keep must be 'A' or 'B'");
}

optf::Generator to_generator(const py::handle &h) {
    if (py::isinstance<optf::CoinSetup>(h)) {
        return h.cast<optf::CoinSetup>();
    }
    if (py::isinstance<optf::NaryGenerator>(h)) {
        return h.cast<optf::NaryGenerator>();
    }
    throw py::type_error("expected a CoinSetup or NaryGenerator");
}

py::dict report_dict(const optf::CampaignReport &r) {
    return py::dict("n_trials"_a = r.n_trials, "n_falsified"_a = r.n_falsified, "empirical_rate"_a = r.empirical_rate,
                    "theoretical_rate"_a = r.theoretical_rate, "z_score"_a = r.z_score,
                    "z_score_degenerate"_a = r.z_score_degenerate, "seed"_a = r.seed,
                    "verdict"_a = std::string(optf::to_string(r.verdict)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Falsification tests for finite-dimensional quantum and classical theories";

    py::register_exception<optf::Error>(m, "OptError", PyExc_ValueError);

    m.attr("DEFAULT_RANK_TOL") = optf::kDefaultRankTol;

    // linalg
    m.def("tensor", [](const CArray &a, const CArray &b) { return to_array(optf::tensor(to_matrix(a), to_matrix(b))); });
    m.def(
        "partial_trace",
        [](const CArray &a, std::size_t dim_a, std::size_t dim_b, const std::string &keep) {
            return to_array(optf::partial_trace(to_matrix(a), dim_a, dim_b, parse_keep(keep)));
        },
        "m"_a, "dim_a"_a, "dim_b"_a, "keep"_a = "A");
    m.def(
        "hermitian_eig",
        [](const CArray &a, double tol) {
            const auto eig = optf::hermitian_eig(to_matrix(a), tol);
            return py::make_tuple(eig.eigenvalues, to_array(eig.eigenvectors));
        },
        "m"_a, "tol"_a = optf::kHermitianTol);
    m.def(
        "support_projector",
        [](const CArray &a, double rank_tol) { return to_array(optf::support_projector(to_matrix(a), rank_tol)); },
        "m"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def(
        "kernel_projector",
        [](const CArray &a, double rank_tol) { return to_array(optf::kernel_projector(to_matrix(a), rank_tol)); },
        "m"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def("mat_to_doubleket", [](const CArray &a) { return to_array(optf::mat_to_doubleket(to_matrix(a))); });
    m.def("doubleket_to_mat", [](const CArray &v, std::size_t rows, std::size_t cols) {
        return to_array(optf::doubleket_to_mat(to_matrix(v), rows, cols));
    });

    // quantum core
    py::class_<optf::QuantumState>(m, "QuantumState")
        .def(py::init([](const CArray &a, double rank_tol) { return optf::QuantumState(to_matrix(a), rank_tol); }),
             "matrix"_a, "rank_tol"_a = optf::kDefaultRankTol)
        .def_static("pure", [](const CArray &ket) { return optf::QuantumState::pure(to_matrix(ket)); })
        .def_property_readonly("matrix", [](const optf::QuantumState &s) { return to_array(s.matrix()); })
        .def_property_readonly("dim", &optf::QuantumState::dim)
        .def_property_readonly("trace", &optf::QuantumState::trace)
        .def_property_readonly("deterministic", &optf::QuantumState::deterministic);

    py::class_<optf::Effect>(m, "Effect")
        .def(py::init([](const CArray &a) { return optf::Effect(to_matrix(a)); }))
        .def_property_readonly("matrix", [](const optf::Effect &e) { return to_array(e.matrix()); })
        .def_property_readonly("dim", &optf::Effect::dim);

    py::class_<optf::KrausChannel>(m, "KrausChannel")
        .def(py::init([](const std::vector<CArray> &ops) {
            std::vector<optf::ComplexMatrix> kraus;
            for (const auto &a : ops) {
                kraus.push_back(to_matrix(a));
            }
            return optf::KrausChannel(std::move(kraus));
        }))
        .def_property_readonly("kraus",
                               [](const optf::KrausChannel &c) {
                                   py::list out;
                                   for (const auto &a : c.kraus()) {
                                       out.append(to_array(a));
                                   }
                                   return out;
                               })
        .def_property_readonly("atomic", &optf::KrausChannel::atomic)
        .def_property_readonly("deterministic", &optf::KrausChannel::deterministic);

    py::class_<optf::Purification>(m, "Purification")
        .def(py::init([](const CArray &v, std::size_t dim_a, std::size_t dim_b) {
            return optf::Purification(to_matrix(v), dim_a, dim_b);
        }))
        .def_property_readonly("state_vector", [](const optf::Purification &p) { return to_array(p.state_vector()); })
        .def_property_readonly("dim_a", &optf::Purification::dim_a)
        .def_property_readonly("dim_b", &optf::Purification::dim_b)
        .def("marginal", [](const optf::Purification &p) { return to_array(p.marginal()); });

    py::class_<optf::Dilation>(m, "Dilation")
        .def_property_readonly("unitary", [](const optf::Dilation &d) { return to_array(d.unitary); })
        .def_readonly("environment_dim", &optf::Dilation::environment_dim)
        .def("branch", [](const optf::Dilation &d, const optf::QuantumState &rho, std::size_t k) {
            return to_array(optf::dilation_branch(d, rho, k));
        });

    m.def("born_probability", &optf::born_probability);
    m.def("apply_channel", &optf::apply_channel);
    m.def("purify", &optf::purify, "rho"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def("connecting_unitary", [](const optf::Purification &a, const optf::Purification &b) {
        return to_array(optf::connecting_unitary(a, b));
    });
    m.def(
        "perfectly_discriminable",
        [](const optf::QuantumState &rho, const optf::QuantumState &nu, double rank_tol) {
            const auto res = optf::perfectly_discriminable(rho, nu, rank_tol);
            py::dict out("discriminable"_a = res.discriminable, "support_overlap"_a = res.support_overlap);
            if (res.falsifiers) {
                out["falsifiers"] = py::make_tuple(to_array(res.falsifiers->first), to_array(res.falsifiers->second));
            } else {
                out["falsifiers"] = py::none();
            }
            return out;
        },
        "rho"_a, "nu"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def(
        "compress",
        [](const optf::QuantumState &rho, double rank_tol) {
            auto c = optf::compress(rho, rank_tol);
            return py::make_tuple(to_array(c.isometry), c.compressed);
        },
        "rho"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def(
        "canonical_form",
        [](const optf::QuantumState &r, std::size_t dim_a, double rank_tol) {
            py::list out;
            for (const auto &t : optf::canonical_form(r, dim_a, rank_tol)) {
                out.append(py::make_tuple(to_array(t.operator_), t.weight));
            }
            return out;
        },
        "state"_a, "dim_a"_a, "rank_tol"_a = optf::kDefaultRankTol);
    m.def("local_falsifier", [](const CArray &a_op, const CArray &a) {
        const auto lf = optf::local_falsifier(to_matrix(a_op), to_matrix(a));
        return py::dict("b"_a = to_array(lf.b), "falsifier"_a = lf.falsifier, "degenerate"_a = lf.degenerate);
    });
    m.def("dilate", &optf::dilate);

    // classical core
    py::class_<optf::ClassicalState>(m, "ClassicalState")
        .def(py::init<std::vector<double>>())
        .def_property_readonly("probs",
                               [](const optf::ClassicalState &x) {
                                   return std::vector<double>(x.probs().begin(), x.probs().end());
                               })
        .def_property_readonly("deterministic", &optf::ClassicalState::deterministic);
    py::class_<optf::MarkovMap>(m, "MarkovMap")
        .def(py::init<std::size_t, std::size_t, std::vector<double>>(), "rows"_a, "cols"_a, "entries"_a);
    m.def("apply_markov", &optf::apply_markov);
    m.def("embed_classical", &optf::embed_classical);
    m.def("classical_falsifier_exists", &optf::classical_falsifier_exists, "x"_a,
          "rank_tol"_a = optf::kDefaultRankTol);

    // falsification
    py::class_<optf::SupportHypothesis>(m, "SupportHypothesis")
        .def(py::init([](const CArray &p) { return optf::SupportHypothesis(to_matrix(p)); }))
        .def_static("of_state", &optf::SupportHypothesis::of_state, "rho"_a, "rank_tol"_a = optf::kDefaultRankTol)
        .def_property_readonly("rank", &optf::SupportHypothesis::rank);
    py::class_<optf::FalsificationTest>(m, "FalsificationTest")
        .def_property_readonly("falsifier", [](const optf::FalsificationTest &t) { return to_array(t.falsifier().matrix()); })
        .def_property_readonly("inconclusive",
                               [](const optf::FalsificationTest &t) { return to_array(t.inconclusive().matrix()); })
        .def_property_readonly("hypothesis_label", &optf::FalsificationTest::hypothesis_label);
    m.def("support_falsification_test", &optf::support_falsification_test, "h"_a, "efficiency"_a = 1.0);
    m.def("falsification_probability", &optf::falsification_probability);
    m.def("run_test", [](const optf::FalsificationTest &t, const optf::QuantumState &rho, std::uint64_t seed) {
        optf::RandomStream rng(seed);
        return std::string(optf::to_string(optf::run_test(t, rho, rng)));
    });
    m.def("is_inconclusive_test", [](const CArray &f, double rank_tol) {
        return optf::is_inconclusive_test(optf::Effect(to_matrix(f)), rank_tol);
    }, "falsifier"_a, "rank_tol"_a = optf::kDefaultRankTol);

    // random generators
    py::class_<optf::CoinSetup>(m, "CoinSetup")
        .def_property_readonly("p", &optf::CoinSetup::p)
        .def_property_readonly("phi", &optf::CoinSetup::phi)
        .def_property_readonly("state_vector", [](const optf::CoinSetup &c) { return to_array(c.state_vector()); });
    py::class_<optf::NaryGenerator>(m, "NaryGenerator")
        .def(py::init<std::vector<double>, std::vector<double>>(), "probs"_a, "phases"_a = std::vector<double>{})
        .def_property_readonly("state_vector", [](const optf::NaryGenerator &g) { return to_array(g.state_vector()); });
    m.def("make_coin", &optf::make_coin, "p"_a, "phi"_a = 0.0);
    m.def("outcome_probabilities", [](const py::object &g) { return optf::outcome_probabilities(to_generator(g)); });
    m.def("sample_generator", [](const py::object &g, std::size_t n, std::uint64_t seed) {
        optf::RandomStream rng(seed);
        return optf::sample_generator(to_generator(g), n, rng);
    }, "generator"_a, "n"_a, "seed"_a);
    m.def("coin_falsification_test", [](const py::object &g) { return optf::coin_falsification_test(to_generator(g)); });
    m.def(
        "falsify_campaign",
        [](const py::object &g, const optf::QuantumState &rho, std::uint64_t n, std::uint64_t seed,
           unsigned threads) {
            optf::CampaignOptions options;
            options.threads = threads;
            return report_dict(optf::falsify_campaign(to_generator(g), rho, n, seed, options));
        },
        "declared"_a, "true_state"_a, "n_trials"_a, "seed"_a, "threads"_a = 1);
    m.def("classical_baseline", [](double p, const std::vector<int> &outcomes) {
        return std::string(optf::to_string(optf::classical_baseline(p, outcomes)));
    });

    // JSON schemas shared with the CLI
    m.def("state_from_json", [](const std::string &text) { return optf::io::state_from_json(optf::io::parse(text)); });
    m.def("state_to_json", [](const optf::QuantumState &s) { return optf::io::dump(optf::io::state_to_json(s)); });
}
