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

#include "mbqc/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

nlohmann::ordered_json graph_to_node(const Graph& g) {
    return nlohmann::ordered_json::parse(g.to_json());
}

Graph graph_from_node(const nlohmann::ordered_json& node) { return Graph::from_json(node.dump()); }

nlohmann::ordered_json pattern_to_node(const MeasurementPattern& p) {
    return nlohmann::ordered_json::parse(p.to_json());
}

MeasurementPattern pattern_from_node(const nlohmann::ordered_json& node) {
    return MeasurementPattern::from_json(node.dump());
}

bool valid_isomorphism(const Graph& g, const Graph& h, const std::vector<int>& pi) {
    if (g.n() != h.n() || static_cast<int>(pi.size()) != g.n()) return false;
    std::vector<char> hit(static_cast<std::size_t>(g.n()), 0);
    for (int v : pi) {
        if (v < 0 || v >= g.n() || hit[static_cast<std::size_t>(v)]) return false;
        hit[static_cast<std::size_t>(v)] = 1;
    }
    for (int u = 0; u < g.n(); ++u)
        for (int v = u + 1; v < g.n(); ++v)
            if (g.has_edge(u, v) !=
                h.has_edge(pi[static_cast<std::size_t>(u)], pi[static_cast<std::size_t>(v)]))
                return false;
    return true;
}

}  // namespace

std::string ReductionCertificate::to_json() const {
    nlohmann::ordered_json j;
    j["source_kind"] = source_kind;
    j["source_dims"] = source_dims;
    j["source"] = graph_to_node(source);
    j["k"] = k;
    j["pattern"] = pattern_to_node(pattern);
    auto log_node = nlohmann::ordered_json::array();
    for (const StepLog& s : log) {
        nlohmann::ordered_json e;
        e["v"] = s.v;
        e["basis"] = basis_name(s.basis);
        e["outcome"] = s.outcome;
        auto corr = nlohmann::ordered_json::array();
        for (auto [v, op] : s.corrections) corr.push_back({v, correction_name(op)});
        e["corrections"] = std::move(corr);
        e["n_after"] = s.n_after;
        e["edges_after"] = s.edges_after;
        log_node.push_back(std::move(e));
    }
    j["log"] = std::move(log_node);
    j["result"] = graph_to_node(result);
    if (isomorphism)
        j["isomorphism"] = *isomorphism;
    else
        j["isomorphism"] = nullptr;
    j["pass"] = pass;
    return j.dump(2);
}

namespace {

CorrectionOp correction_from_name(const std::string& name) {
    if (name == "identity") return CorrectionOp::Identity;
    if (name == "Z") return CorrectionOp::Z;
    if (name == "sqrt(+iZ)") return CorrectionOp::SqrtPlusIZ;
    if (name == "sqrt(-iZ)") return CorrectionOp::SqrtMinusIZ;
    throw input_error("certificate JSON: unknown correction tag " + name);
}

}  // namespace

ReductionCertificate ReductionCertificate::from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("certificate JSON parse error at byte ") +
                          std::to_string(e.byte) + ": " + e.what());
    }
    ReductionCertificate cert;
    try {
        cert.source_kind = j.at("source_kind").get<std::string>();
        cert.source_dims = j.at("source_dims").get<std::vector<int>>();
        cert.source = graph_from_node(j.at("source"));
        cert.k = j.at("k").get<int>();
        cert.pattern = pattern_from_node(j.at("pattern"));
        for (const auto& e : j.at("log")) {
            StepLog s;
            s.v = e.at("v").get<int>();
            const std::string b = e.at("basis").get<std::string>();
            s.basis = b == "Y" ? Basis::Y : Basis::Z;
            s.outcome = e.at("outcome").get<int>();
            for (const auto& c : e.at("corrections"))
                s.corrections.emplace_back(c.at(0).get<int>(),
                                           correction_from_name(c.at(1).get<std::string>()));
            s.n_after = e.at("n_after").get<int>();
            s.edges_after = e.at("edges_after").get<int>();
            cert.log.push_back(std::move(s));
        }
        cert.result = graph_from_node(j.at("result"));
        if (!j.at("isomorphism").is_null())
            cert.isomorphism = j.at("isomorphism").get<std::vector<int>>();
        cert.pass = j.at("pass").get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("certificate JSON: ") + e.what());
    }
    return cert;
}

ReductionCertificate verify_reduction(const Graph& source, const MeasurementPattern& pattern,
                                      int k, const std::string& source_kind,
                                      std::vector<int> source_dims) {
    if (k < 1) throw input_error("verify_reduction: k must be positive");
    pattern.validate(source.n());

    ReductionCertificate cert;
    cert.source_kind = source_kind;
    cert.source_dims = std::move(source_dims);
    cert.source = source;
    cert.pattern = pattern;
    cert.k = k;

    // replayable step log: apply one measurement at a time
    Graph cur = source;
    std::vector<int> orig_to_cur(static_cast<std::size_t>(source.n()));
    for (int v = 0; v < source.n(); ++v) orig_to_cur[static_cast<std::size_t>(v)] = v;
    for (const PatternStep& step : pattern.steps) {
        MeasurementPattern single;
        single.steps = {{orig_to_cur[static_cast<std::size_t>(step.v)], step.basis, step.outcome}};
        PatternResult res = apply_pattern(cur, single);
        StepLog s;
        s.v = step.v;
        s.basis = step.basis;
        s.outcome = step.outcome;
        // record corrections in the original labeling
        std::vector<int> cur_to_orig(static_cast<std::size_t>(cur.n()), -1);
        for (int v = 0; v < source.n(); ++v)
            if (orig_to_cur[static_cast<std::size_t>(v)] >= 0)
                cur_to_orig[static_cast<std::size_t>(orig_to_cur[static_cast<std::size_t>(v)])] = v;
        for (auto [cv, op] : res.log.front().corrections)
            s.corrections.emplace_back(cur_to_orig[static_cast<std::size_t>(cv)], op);
        s.n_after = res.graph.n();
        s.edges_after = static_cast<int>(res.graph.edge_count());
        cert.log.push_back(std::move(s));

        for (int v = 0; v < source.n(); ++v) {
            int& m = orig_to_cur[static_cast<std::size_t>(v)];
            if (m >= 0) m = res.old_to_new[static_cast<std::size_t>(m)];
        }
        cur = std::move(res.graph);
    }

    cert.result = std::move(cur);
    cert.isomorphism = is_isomorphic(cert.result, lattice({LatticeKind::Grid, {k, k}}));
    cert.pass = cert.isomorphism.has_value();
    return cert;
}

bool replay_certificate(const ReductionCertificate& cert) {
    ReductionCertificate fresh;
    try {
        fresh = verify_reduction(cert.source, cert.pattern, cert.k, cert.source_kind,
                                 cert.source_dims);
    } catch (const input_error&) {
        return false;
    }
    if (fresh.log.size() != cert.log.size()) return false;
    for (std::size_t i = 0; i < cert.log.size(); ++i) {
        const StepLog& a = cert.log[i];
        const StepLog& b = fresh.log[i];
        if (a.v != b.v || a.basis != b.basis || a.outcome != b.outcome ||
            a.corrections != b.corrections || a.n_after != b.n_after ||
            a.edges_after != b.edges_after)
            return false;
    }
    if (!fresh.result.same_topology(cert.result)) return false;
    if (cert.pass != fresh.pass) return false;
    if (cert.pass) {
        if (!cert.isomorphism) return false;
        if (!valid_isomorphism(cert.result, lattice({LatticeKind::Grid, {cert.k, cert.k}}),
                               *cert.isomorphism))
            return false;
    }
    return true;
}

namespace {

struct ClassTable {
    std::vector<std::vector<int>> members;  // class -> sorted vertex list
    std::vector<int> of_vertex;
};

ClassTable vertex_classes(const Graph& g, double period_x, double period_y, int max_classes) {
    if (!g.coords())
        throw input_error("search_pattern: source graph must carry coordinates");
    const auto quantize = [](double v) { return static_cast<long long>(std::llround(4.0 * v)); };
    const long long px = std::max<long long>(1, quantize(period_x));
    const long long py = std::max<long long>(1, quantize(period_y));

    std::map<std::pair<long long, long long>, std::vector<int>> buckets;
    for (int v = 0; v < g.n(); ++v) {
        const Coord c = (*g.coords())[static_cast<std::size_t>(v)];
        const long long kx = ((quantize(c.x) % px) + px) % px;
        const long long ky = ((quantize(c.y) % py) + py) % py;
        buckets[{kx, ky}].push_back(v);
    }
    if (static_cast<int>(buckets.size()) > max_classes)
        throw resource_error("search_pattern: class cap of " + std::to_string(max_classes) +
                             " exceeded (" + std::to_string(buckets.size()) + " classes)");

    ClassTable table;
    table.of_vertex.assign(static_cast<std::size_t>(g.n()), -1);
    for (auto& [key, members] : buckets) {
        for (int v : members) table.of_vertex[static_cast<std::size_t>(v)] = static_cast<int>(table.members.size());
        table.members.push_back(std::move(members));
    }
    return table;
}

enum : int { kUnmeasured = 0 };

MeasurementPattern pattern_from_assignment(const ClassTable& classes,
                                           const std::vector<int>& assignment,
                                           const std::vector<Basis>& alphabet) {
    // canonical instruction order: Y measurements by ascending vertex, then Z;
    // Z commutes with everything, Y order is fixed by the ascending rule
    MeasurementPattern p;
    for (Basis want : {Basis::Y, Basis::Z}) {
        std::vector<int> vs;
        for (std::size_t c = 0; c < classes.members.size(); ++c) {
            if (assignment[c] == kUnmeasured) continue;
            if (alphabet[static_cast<std::size_t>(assignment[c]) - 1] != want) continue;
            vs.insert(vs.end(), classes.members[c].begin(), classes.members[c].end());
        }
        std::sort(vs.begin(), vs.end());
        for (int v : vs) p.steps.push_back({v, want, +1});
    }
    return p;
}

}  // namespace

std::optional<MeasurementPattern> search_pattern_to(const Graph& source, const Graph& target,
                                                    const SearchOptions& opts) {
    const ClassTable classes = vertex_classes(source, opts.period_x, opts.period_y, opts.max_classes);
    const std::size_t nclasses = classes.members.size();

    std::vector<Basis> alphabet;
    if (opts.allow_y) alphabet.push_back(Basis::Y);
    if (opts.allow_z) alphabet.push_back(Basis::Z);
    if (alphabet.empty()) throw input_error("search_pattern: no measurement bases allowed");
    const std::uint64_t radix = 1 + alphabet.size();

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < nclasses; ++i) {
        if (total > (std::uint64_t{1} << 40) / radix)
            throw resource_error("search_pattern: assignment space exceeds the 2^40 cap");
        total *= radix;
    }

    const int max_measured = static_cast<int>(opts.max_measured_fraction * source.n());
    const auto target_degrees = [&] {
        std::vector<int> d;
        for (int v = 0; v < target.n(); ++v) d.push_back(target.degree(v));
        std::sort(d.begin(), d.end());
        return d;
    }();

    // decode most-significant-first so candidate order is lexicographic
    auto decode = [&](std::uint64_t index, std::vector<int>& digits) {
        for (std::size_t i = nclasses; i-- > 0;) {
            digits[i] = static_cast<int>(index % radix);
            index /= radix;
        }
    };

    auto try_candidate = [&](std::uint64_t index) -> bool {
        std::vector<int> digits(nclasses);
        decode(index, digits);
        int survivors = 0;
        int measured = 0;
        for (std::size_t c = 0; c < nclasses; ++c) {
            const int size = static_cast<int>(classes.members[c].size());
            if (digits[c] == kUnmeasured)
                survivors += size;
            else
                measured += size;
        }
        if (survivors != target.n() || measured > max_measured) return false;

        const MeasurementPattern p = pattern_from_assignment(classes, digits, alphabet);
        const PatternResult res = apply_pattern(source, p);
        if (res.graph.edge_count() != target.edge_count()) return false;
        std::vector<int> d;
        for (int v = 0; v < res.graph.n(); ++v) d.push_back(res.graph.degree(v));
        std::sort(d.begin(), d.end());
        if (d != target_degrees) return false;
        return is_isomorphic(res.graph, target).has_value();
    };

    // chunked scan keeps the "first hit in lexicographic order" contract for
    // any thread count
    const std::uint64_t block = 4096;
    for (std::uint64_t start = 0; start < total; start += block) {
        const std::uint64_t end = std::min(total, start + block);
        std::uint64_t hit = UINT64_MAX;
#pragma omp parallel num_threads(opts.threads) if (opts.threads > 1)
        {
            std::uint64_t local_hit = UINT64_MAX;
#pragma omp for schedule(dynamic, 64)
            for (std::int64_t i = static_cast<std::int64_t>(start); i < static_cast<std::int64_t>(end); ++i) {
                if (local_hit != UINT64_MAX) continue;
                if (try_candidate(static_cast<std::uint64_t>(i)))
                    local_hit = static_cast<std::uint64_t>(i);
            }
#pragma omp critical
            hit = std::min(hit, local_hit);
        }
        if (hit != UINT64_MAX) {
            std::vector<int> digits(nclasses);
            decode(hit, digits);
            return pattern_from_assignment(classes, digits, alphabet);
        }
    }
    return std::nullopt;
}

std::optional<MeasurementPattern> search_pattern(const Graph& source, int k,
                                                 const SearchOptions& opts) {
    if (k < 1) throw input_error("search_pattern: k must be positive");
    return search_pattern_to(source, lattice({LatticeKind::Grid, {k, k}}), opts);
}

std::string PatternAsset::to_json() const {
    nlohmann::ordered_json j;
    j["lattice"] = lattice_kind_name(patch.kind);
    j["dims"] = patch.dims;
    j["target"] = {{"kind", lattice_kind_name(target.kind)}, {"dims", target.dims}};
    j["pattern"] = pattern_to_node(pattern);
    return j.dump(2);
}

PatternAsset PatternAsset::from_json(const std::string& text) {
    nlohmann::ordered_json j;
    try {
        j = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("asset JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
    }
    PatternAsset asset;
    try {
        auto kind = parse_lattice_kind(j.at("lattice").get<std::string>());
        if (!kind) throw input_error("asset JSON: unknown lattice kind");
        asset.patch.kind = *kind;
        asset.patch.dims = j.at("dims").get<std::vector<int>>();
        auto tkind = parse_lattice_kind(j.at("target").at("kind").get<std::string>());
        if (!tkind) throw input_error("asset JSON: unknown target kind");
        asset.target.kind = *tkind;
        asset.target.dims = j.at("target").at("dims").get<std::vector<int>>();
        asset.pattern = pattern_from_node(j.at("pattern"));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("asset JSON: ") + e.what());
    }
    return asset;
}

std::string pattern_asset_filename(LatticeKind kind, int k) {
    return std::string(lattice_kind_name(kind)) + "_k" + std::to_string(k) + ".json";
}

PatternAsset load_pattern_asset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open pattern asset: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return PatternAsset::from_json(buf.str());
}

ReductionCertificate certify_asset(const PatternAsset& asset) {
    if (asset.target.kind != LatticeKind::Grid || asset.target.dims.size() != 2 ||
        asset.target.dims[0] != asset.target.dims[1])
        throw input_error("certify_asset: asset target must be a square grid");
    const Graph source = lattice(asset.patch);
    return verify_reduction(source, asset.pattern, asset.target.dims[0],
                            lattice_kind_name(asset.patch.kind), asset.patch.dims);
}

std::string ChainReport::to_json() const {
    nlohmann::ordered_json j;
    j["attempted"] = attempted;
    j["pass"] = pass;
    j["stages"] = stages;
    return j.dump(2);
}

ChainReport attempt_chain(const std::string& pattern_dir, int k) {
    ChainReport report;
    auto stage_file = [&](const std::string& name) { return pattern_dir + "/" + name; };

    PatternAsset hex_to_tri, tri_to_kag, kag_to_grid;
    try {
        hex_to_tri = load_pattern_asset(stage_file("hexagonal_to_triangular.json"));
        tri_to_kag = load_pattern_asset(stage_file("triangular_to_kagome.json"));
        kag_to_grid = load_pattern_asset(stage_file(pattern_asset_filename(LatticeKind::Kagome, k)));
    } catch (const input_error& e) {
        report.stages.push_back(std::string("chain not attempted: ") + e.what());
        return report;
    }
    report.attempted = true;

    Graph cur = lattice(hex_to_tri.patch);
    struct Stage {
        const PatternAsset* asset;
        const char* label;
    };
    const Stage stages[] = {{&hex_to_tri, "hexagonal->triangular"},
                            {&tri_to_kag, "triangular->kagome"},
                            {&kag_to_grid, "kagome->grid"}};
    for (const Stage& st : stages) {
        const Graph patch = lattice(st.asset->patch);
        // align the running graph with the stage's patch labeling
        const auto iso = is_isomorphic(patch, cur);
        if (!iso) {
            report.stages.push_back(std::string(st.label) + ": intermediate does not match patch " +
                                    lattice_kind_name(st.asset->patch.kind));
            return report;
        }
        MeasurementPattern translated;
        for (const PatternStep& s : st.asset->pattern.steps)
            translated.steps.push_back({(*iso)[static_cast<std::size_t>(s.v)], s.basis, s.outcome});
        const PatternResult res = apply_pattern(cur, translated);
        cur = res.graph;
        const Graph target = lattice(st.asset->target);
        const bool ok = is_isomorphic(cur, target).has_value();
        report.stages.push_back(std::string(st.label) + (ok ? ": ok" : ": target mismatch"));
        if (!ok) return report;
    }
    report.pass = true;
    return report;
}

}  // namespace mbqc
