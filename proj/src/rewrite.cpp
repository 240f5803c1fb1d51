// Copyright 2026 The mbqc-toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mbqc/rewrite.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

#include "mbqc/errors.hpp"

namespace mbqc {

const char* basis_name(Basis b) { return b == Basis::Y ? "Y" : "Z"; }

const char* correction_name(CorrectionOp op) {
    switch (op) {
        case CorrectionOp::Identity: return "identity";
        case CorrectionOp::Z: return "Z";
        case CorrectionOp::SqrtPlusIZ: return "sqrt(+iZ)";
        case CorrectionOp::SqrtMinusIZ: return "sqrt(-iZ)";
    }
    return "?";
}

std::string MeasurementPattern::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const PatternStep& s : steps) {
        nlohmann::ordered_json step;
        step["v"] = s.v;
        step["basis"] = basis_name(s.basis);
        if (s.outcome != +1) step["outcome"] = s.outcome;
        arr.push_back(std::move(step));
    }
    nlohmann::ordered_json j;
    j["pattern"] = std::move(arr);
    return j.dump();
}

MeasurementPattern MeasurementPattern::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("pattern JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
    }
    MeasurementPattern p;
    try {
        for (const auto& step : j.at("pattern")) {
            PatternStep s;
            s.v = step.at("v").get<int>();
            const std::string b = step.at("basis").get<std::string>();
            if (b == "Y")
                s.basis = Basis::Y;
            else if (b == "Z")
                s.basis = Basis::Z;
            else
                throw input_error("pattern JSON: basis must be \"Y\" or \"Z\"");
            if (step.contains("outcome")) {
                s.outcome = step.at("outcome").get<int>();
                if (s.outcome != 1 && s.outcome != -1)
                    throw input_error("pattern JSON: outcome must be 1 or -1");
            }
            p.steps.push_back(s);
        }
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("pattern JSON: ") + e.what());
    }
    return p;
}

void MeasurementPattern::validate(int n) const {
    std::unordered_set<int> seen;
    for (const PatternStep& s : steps) {
        if (s.v < 0 || s.v >= n) throw input_error("pattern: vertex out of range");
        if (!seen.insert(s.v).second) throw input_error("pattern: vertex measured twice");
        if (s.outcome != 1 && s.outcome != -1) throw input_error("pattern: outcome must be +-1");
    }
}

Graph local_complement(const Graph& g, int a) {
    if (a < 0 || a >= g.n()) throw input_error("local_complement: vertex out of range");
    const std::vector<int> nbrs = g.neighbors(a);
    auto edges = g.edges();
    std::vector<std::pair<int, int>> out;
    auto in_nbrs = std::vector<char>(static_cast<std::size_t>(g.n()), 0);
    for (int v : nbrs) in_nbrs[static_cast<std::size_t>(v)] = 1;
    for (auto [u, v] : edges)
        if (!(in_nbrs[static_cast<std::size_t>(u)] && in_nbrs[static_cast<std::size_t>(v)]))
            out.emplace_back(u, v);
    for (std::size_t i = 0; i < nbrs.size(); ++i)
        for (std::size_t j = i + 1; j < nbrs.size(); ++j)
            if (!g.has_edge(nbrs[i], nbrs[j])) out.emplace_back(nbrs[i], nbrs[j]);

    std::vector<Coord> coords;
    if (g.coords()) coords = *g.coords();
    std::vector<std::string> labels;
    if (g.labels()) labels = *g.labels();
    return Graph(g.n(), out, std::move(coords), std::move(labels));
}

VertexDeletion delete_vertex(const Graph& g, int a) {
    if (a < 0 || a >= g.n()) throw input_error("delete_vertex: vertex out of range");
    std::vector<int> old_to_new(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v)
        old_to_new[static_cast<std::size_t>(v)] = v < a ? v : (v == a ? -1 : v - 1);

    std::vector<std::pair<int, int>> edges;
    for (auto [u, v] : g.edges())
        if (u != a && v != a)
            edges.emplace_back(old_to_new[static_cast<std::size_t>(u)],
                               old_to_new[static_cast<std::size_t>(v)]);

    std::vector<Coord> coords;
    if (g.coords())
        for (int v = 0; v < g.n(); ++v)
            if (v != a) coords.push_back((*g.coords())[static_cast<std::size_t>(v)]);
    std::vector<std::string> labels;
    if (g.labels())
        for (int v = 0; v < g.n(); ++v)
            if (v != a) labels.push_back((*g.labels())[static_cast<std::size_t>(v)]);

    return {Graph(g.n() - 1, edges, std::move(coords), std::move(labels)), std::move(old_to_new)};
}

MeasureResult measure_pauli(const Graph& g, int a, Basis basis, int outcome) {
    if (a < 0 || a >= g.n()) throw input_error("measure_pauli: vertex out of range");
    if (outcome != 1 && outcome != -1) throw input_error("measure_pauli: outcome must be +-1");

    CorrectionRecord rec;
    rec.vertex = a;
    rec.basis = basis;
    rec.outcome = outcome;

    if (basis == Basis::Z) {
        VertexDeletion del = delete_vertex(g, a);
        if (outcome == -1)
            for (int b : g.neighbors(a)) rec.corrections.emplace_back(b, CorrectionOp::Z);
        return {std::move(del.graph), std::move(rec), std::move(del.old_to_new)};
    }

    // sigma_y: local complementation then deletion. Byproducts are square
    // roots of (-1)^outcome * i * sigma_z on the old neighborhood.
    const CorrectionOp tag = outcome == +1 ? CorrectionOp::SqrtMinusIZ : CorrectionOp::SqrtPlusIZ;
    for (int b : g.neighbors(a)) rec.corrections.emplace_back(b, tag);
    VertexDeletion del = delete_vertex(local_complement(g, a), a);
    return {std::move(del.graph), std::move(rec), std::move(del.old_to_new)};
}

PatternResult apply_pattern(const Graph& g, const MeasurementPattern& pattern) {
    pattern.validate(g.n());

    Graph cur = g;
    std::vector<int> orig_to_cur(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) orig_to_cur[static_cast<std::size_t>(v)] = v;

    std::vector<CorrectionRecord> log;
    for (const PatternStep& step : pattern.steps) {
        const int cur_v = orig_to_cur[static_cast<std::size_t>(step.v)];
        if (cur_v < 0) throw input_error("apply_pattern: measured vertex no longer present");

        MeasureResult res = measure_pauli(cur, cur_v, step.basis, step.outcome);

        // translate the record and the running index map back to original labels
        std::vector<int> cur_to_orig(static_cast<std::size_t>(cur.n()), -1);
        for (int v = 0; v < g.n(); ++v)
            if (orig_to_cur[static_cast<std::size_t>(v)] >= 0)
                cur_to_orig[static_cast<std::size_t>(orig_to_cur[static_cast<std::size_t>(v)])] = v;

        CorrectionRecord rec = res.record;
        rec.vertex = step.v;
        for (auto& [v, op] : rec.corrections) v = cur_to_orig[static_cast<std::size_t>(v)];
        log.push_back(std::move(rec));

        for (int v = 0; v < g.n(); ++v) {
            int& m = orig_to_cur[static_cast<std::size_t>(v)];
            if (m >= 0) m = res.old_to_new[static_cast<std::size_t>(m)];
        }
        cur = std::move(res.graph);
    }
    return {std::move(cur), std::move(log), std::move(orig_to_cur)};
}

}  // namespace mbqc
