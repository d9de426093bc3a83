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

#include "optfalsify/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "optfalsify/error.hpp"

namespace optf::io {

namespace {

const json &field(const json &j, const char *key) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ParseError, "expected a JSON object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw Error(ErrorKind::ParseError, std::string("missing field \"") + key + "\"");
    }
    return *it;
}

template <typename T>
T get_as(const json &j, const char *key) {
    const json &v = field(j, key);
    try {
        return v.get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\": " + e.what());
    }
}

std::size_t get_count(const json &j, const char *key) {
    const json &v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
        throw Error(ErrorKind::ParseError, std::string("field \"") + key + "\" must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

void expect_kind(const json &j, const char *kind) {
    const auto k = get_as<std::string>(j, "kind");
    if (k != kind) {
        throw Error(ErrorKind::ParseError, "expected kind \"" + std::string(kind) + "\", got \"" + k + "\"");
    }
}

json with_kind(json j, const char *kind) {
    j["kind"] = kind;
    return j;
}

void dump_to(std::string &out, const json &j, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto &[key, value] : j.items()) {
                if (!first) {
                    out += ",\n";
                }
                first = false;
                out += inner + json(key).dump() + ": ";
                dump_to(out, value, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[";
            bool first = true;
            for (const auto &value : j) {
                if (!first) {
                    out += ", ";
                }
                first = false;
                dump_to(out, value, indent + 1);
            }
            out += "]";
            return;
        }
        case json::value_t::number_float: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
            out += buf;
            return;
        }
        default:
            out += j.dump();
            return;
    }
}

}  // namespace

json matrix_to_json(const ComplexMatrix &m) {
    std::vector<double> re;
    std::vector<double> im;
    re.reserve(m.size());
    im.reserve(m.size());
    for (const auto &z : m.entries()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json &j) {
    const std::size_t rows = get_count(j, "rows");
    const std::size_t cols = get_count(j, "cols");
    const auto re = get_as<std::vector<double>>(j, "re");
    std::vector<double> im;
    if (j.contains("im")) {
        im = get_as<std::vector<double>>(j, "im");
    } else {
        im.assign(re.size(), 0.0);
    }
    if (re.size() != rows * cols || im.size() != rows * cols) {
        throw Error(ErrorKind::ParseError, "re/im lengths must equal rows * cols");
    }
    std::vector<complex> entries(re.size());
    for (std::size_t i = 0; i < re.size(); ++i) {
        entries[i] = complex{re[i], im[i]};
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

json state_to_json(const QuantumState &rho) {
    return with_kind(matrix_to_json(rho.matrix()), "state");
}

QuantumState state_from_json(const json &j) {
    expect_kind(j, "state");
    return QuantumState(matrix_from_json(j));
}

json effect_to_json(const Effect &e) {
    return with_kind(matrix_to_json(e.matrix()), "effect");
}

Effect effect_from_json(const json &j) {
    expect_kind(j, "effect");
    return Effect(matrix_from_json(j));
}

json channel_to_json(const KrausChannel &ch) {
    json kraus = json::array();
    for (const auto &a : ch.kraus()) {
        kraus.push_back(matrix_to_json(a));
    }
    return json{{"kind", "channel"}, {"kraus", kraus}};
}

KrausChannel channel_from_json(const json &j) {
    expect_kind(j, "channel");
    const json &list = field(j, "kraus");
    if (!list.is_array()) {
        throw Error(ErrorKind::ParseError, "\"kraus\" must be an array of matrices");
    }
    std::vector<ComplexMatrix> kraus;
    for (const auto &m : list) {
        kraus.push_back(matrix_from_json(m));
    }
    return KrausChannel(std::move(kraus));
}

json cstate_to_json(const ClassicalState &x) {
    return json{{"kind", "cstate"}, {"probs", std::vector<double>(x.probs().begin(), x.probs().end())}};
}

ClassicalState cstate_from_json(const json &j) {
    expect_kind(j, "cstate");
    return ClassicalState(get_as<std::vector<double>>(j, "probs"));
}

json markov_to_json(const MarkovMap &m) {
    return json{{"kind", "markov"},
                {"rows", m.dim_out()},
                {"cols", m.dim_in()},
                {"entries", std::vector<double>(m.entries().begin(), m.entries().end())}};
}

MarkovMap markov_from_json(const json &j) {
    expect_kind(j, "markov");
    return MarkovMap(get_count(j, "rows"), get_count(j, "cols"), get_as<std::vector<double>>(j, "entries"));
}

json ftest_to_json(const FalsificationTest &t) {
    return json{{"kind", "ftest"}, {"hypothesis", t.hypothesis_label()}, {"F", matrix_to_json(t.falsifier().matrix())}};
}

Effect ftest_falsifier_from_json(const json &j) {
    expect_kind(j, "ftest");
    return Effect(matrix_from_json(field(j, "F")));
}

FalsificationTest ftest_from_json(const json &j) {
    return FalsificationTest(ftest_falsifier_from_json(j), get_as<std::string>(j, "hypothesis"));
}

json purification_to_json(const Purification &p) {
    return json{{"kind", "purification"},
                {"dim_a", p.dim_a()},
                {"dim_b", p.dim_b()},
                {"state_vector", matrix_to_json(p.state_vector())}};
}

Generator generator_from_json(const json &j) {
    if (!j.is_object()) {
        throw Error(ErrorKind::ParseError, "declared generator must be an object");
    }
    if (j.contains("p")) {
        const double phi = j.contains("phi") ? get_as<double>(j, "phi") : 0.0;
        return make_coin(get_as<double>(j, "p"), phi);
    }
    if (j.contains("probs")) {
        std::vector<double> phases;
        if (j.contains("phases")) {
            phases = get_as<std::vector<double>>(j, "phases");
        }
        return NaryGenerator(get_as<std::vector<double>>(j, "probs"), std::move(phases));
    }
    throw Error(ErrorKind::ParseError, "declared generator needs {p, phi} or {probs, phases}");
}

json generator_to_json(const Generator &g) {
    if (const auto *coin = std::get_if<CoinSetup>(&g)) {
        return json{{"p", coin->p()}, {"phi", coin->phi()}};
    }
    const auto &nary = std::get<NaryGenerator>(g);
    return json{{"probs", std::vector<double>(nary.probs().begin(), nary.probs().end())},
                {"phases", std::vector<double>(nary.phases().begin(), nary.phases().end())}};
}

CampaignConfig campaign_config_from_json(const json &j) {
    CampaignConfig cfg{generator_from_json(field(j, "declared")), state_from_json(field(j, "true_state")),
                       get_count(j, "n_trials"), std::nullopt};
    if (j.contains("seed")) {
        cfg.seed = get_as<std::uint64_t>(j, "seed");
    }
    return cfg;
}

json report_to_json(const CampaignReport &r) {
    return json{{"n_trials", r.n_trials},
                {"n_falsified", r.n_falsified},
                {"empirical_rate", r.empirical_rate},
                {"theoretical_rate", r.theoretical_rate},
                {"z_score", r.z_score},
                {"z_score_degenerate", r.z_score_degenerate},
                {"seed", r.seed},
                {"verdict", std::string(to_string(r.verdict))}};
}

void write_trace_csv(std::ostream &out, const std::vector<TrialRecord> &trace) {
    out << "trial,outcome,p_theoretical,seed\n";
    char buf[32];
    for (const auto &t : trace) {
        std::snprintf(buf, sizeof buf, "%.17g", t.p_theoretical);
        out << t.trial << ',' << to_string(t.outcome) << ',' << buf << ',' << t.seed << '\n';
    }
}

std::string dump(const json &j) {
    std::string out;
    dump_to(out, j, 0);
    out += "\n";
    return out;
}

json parse(const std::string &text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

void write_file(const std::string &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorKind::ParseError, "cannot write " + path);
    }
    out << text;
}

}  // namespace optf::io
