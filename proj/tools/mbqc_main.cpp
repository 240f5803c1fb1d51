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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbqc/errors.hpp"
#include "mbqc/graph.hpp"
#include "mbqc/localizable.hpp"
#include "mbqc/percolation.hpp"
#include "mbqc/reduction.hpp"
#include "mbqc/rewrite.hpp"
#include "mbqc/statevec.hpp"
#include "mbqc/width.hpp"

#ifndef MBQC_PATTERN_DIR
#define MBQC_PATTERN_DIR "data/patterns/v1"
#endif

namespace {

using namespace mbqc;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw input_error("cannot write file: " + path);
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw input_error("empty entry in integer list: " + text);
        out.push_back(std::stoi(item));
    }
    if (out.empty()) throw input_error("empty integer list");
    return out;
}

/// "0.90:1.00:0.01" inclusive range, or a comma list "0.5,0.9".
std::vector<double> parse_lambda_spec(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::stringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw input_error("bad lambda range, expected lo:hi:step");
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(std::min(v, 1.0));
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    }
    if (out.empty()) throw input_error("empty lambda list");
    return out;
}

LatticeSpec parse_lattice(const std::string& kind, const std::string& dims) {
    const auto k = parse_lattice_kind(kind);
    if (!k) throw input_error("unknown lattice kind: " + kind);
    return {*k, parse_int_list(dims)};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

nlohmann::ordered_json corrections_json(const std::vector<CorrectionRecord>& log) {
    auto arr = nlohmann::ordered_json::array();
    for (const CorrectionRecord& rec : log) {
        nlohmann::ordered_json e;
        e["v"] = rec.vertex;
        e["basis"] = basis_name(rec.basis);
        e["outcome"] = rec.outcome;
        auto corr = nlohmann::ordered_json::array();
        for (auto [v, op] : rec.corrections) corr.push_back({v, correction_name(op)});
        e["corrections"] = std::move(corr);
        arr.push_back(std::move(e));
    }
    return arr;
}

int run(int argc, char** argv) {
    CLI::App app{"graph-state resource toolkit: lattices, rewrites, widths, reductions,\n"
                 "localizable entanglement and deformed-cluster percolation"};
    app.require_subcommand(1);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a lattice graph");
    std::string gen_kind, gen_dims, gen_out, gen_dot;
    gen->add_option("--kind", gen_kind, "path|cycle|star|grid|hexagonal|triangular|kagome")
        ->required();
    gen->add_option("--dims", gen_dims, "n for 1D kinds, rows,cols for planar ones")->required();
    gen->add_option("-o,--output", gen_out, "graph JSON output path");
    gen->add_option("--dot", gen_dot, "DOT output path");
    gen->callback([&] {
        const Graph g = lattice(parse_lattice(gen_kind, gen_dims));
        if (!gen_out.empty()) spill(gen_out, g.to_json());
        if (!gen_dot.empty()) spill(gen_dot, g.to_dot());
        if (gen_out.empty() && gen_dot.empty()) std::cout << g.to_json() << "\n";
    });

    // ---- rewrite ----
    auto* rw = app.add_subcommand("rewrite", "apply a measurement pattern to a graph");
    std::string rw_graph, rw_pattern, rw_out, rw_log;
    rw->add_option("--graph", rw_graph, "input graph JSON")->required();
    rw->add_option("--pattern", rw_pattern, "measurement pattern JSON")->required();
    rw->add_option("-o,--output", rw_out, "rewritten graph JSON output");
    rw->add_option("--log", rw_log, "corrections log JSON output");
    rw->callback([&] {
        const Graph g = Graph::from_json(slurp(rw_graph));
        const MeasurementPattern p = MeasurementPattern::from_json(slurp(rw_pattern));
        const PatternResult res = apply_pattern(g, p);
        nlohmann::ordered_json j;
        j["graph"] = nlohmann::ordered_json::parse(res.graph.to_json());
        j["corrections"] = corrections_json(res.log);
        j["vertex_map"] = res.old_to_new;
        if (!rw_out.empty()) spill(rw_out, res.graph.to_json());
        if (!rw_log.empty()) spill(rw_log, j.dump(2));
        if (rw_out.empty() && rw_log.empty()) std::cout << j.dump(2) << "\n";
    });

    // ---- cutrank ----
    auto* cr = app.add_subcommand("cutrank", "GF(2) cut rank of a vertex subset");
    std::string cr_graph, cr_subset;
    cr->add_option("--graph", cr_graph, "input graph JSON")->required();
    cr->add_option("--subset", cr_subset, "comma-separated vertex list")->required();
    cr->callback([&] {
        const Graph g = Graph::from_json(slurp(cr_graph));
        const auto subset = parse_int_list(cr_subset);
        std::cout << cut_rank(g, subset) << "\n";
    });

    // ---- rankwidth ----
    auto* rwid = app.add_subcommand("rankwidth", "exact rank width with a witness tree");
    std::string rwid_in, rwid_method = "dp", rwid_witness;
    int rwid_threads = 1;
    rwid->add_option("-i,--input", rwid_in, "input graph JSON")->required();
    rwid->add_option("--method", rwid_method, "dp|enumerate (default dp)");
    rwid->add_option("--witness", rwid_witness, "witness tree JSON output path");
    rwid->add_option("--threads", rwid_threads, "worker threads (default 1)");
    rwid->callback([&] {
        const Graph g = Graph::from_json(slurp(rwid_in));
        WidthMethod method;
        if (rwid_method == "dp")
            method = WidthMethod::SubsetDP;
        else if (rwid_method == "enumerate")
            method = WidthMethod::Enumerate;
        else
            throw input_error("method must be dp or enumerate");
        WidthOptions opts;
        opts.threads = rwid_threads;
        const WidthResult r = rank_width(g, method, opts);
        std::cout << format_double(r.value) << "\n";
        if (!rwid_witness.empty()) spill(rwid_witness, r.witness.to_json());
    });

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "closed-form width bounds");
    int bounds_grid_k = 0, bounds_twd = 0;
    bounds->add_option("--grid-k", bounds_grid_k, "lower bound log2(k+2)-1 for the k x k grid");
    bounds->add_option("--treewidth", bounds_twd, "upper bound 4*2^(twd-1)+1");
    bounds->callback([&] {
        if (bounds_grid_k == 0 && bounds_twd == 0)
            throw input_error("bounds: pass --grid-k and/or --treewidth");
        if (bounds_grid_k != 0)
            std::cout << "grid_lower_bound(" << bounds_grid_k
                      << ") = " << format_double(grid_lower_bound(bounds_grid_k)) << "\n";
        if (bounds_twd != 0)
            std::cout << "treewidth_upper_bound(" << bounds_twd
                      << ") = " << format_double(treewidth_upper_bound(bounds_twd)) << "\n";
    });

    // ---- reduce ----
    auto* red = app.add_subcommand("reduce", "certify a lattice-to-grid reduction");
    std::string red_source, red_pattern, red_out, red_dir = MBQC_PATTERN_DIR;
    int red_k = 0, red_rows = 0, red_cols = 0;
    bool red_chain = false;
    red->add_option("--source", red_source, "hexagonal|triangular|kagome|grid")->required();
    red->add_option("--k", red_k, "target grid size k")->required();
    red->add_option("--rows", red_rows, "patch rows (default: the shipped asset's)");
    red->add_option("--cols", red_cols, "patch cols (default: the shipped asset's)");
    red->add_option("--pattern", red_pattern, "pattern JSON (default: the shipped asset)");
    red->add_option("--pattern-dir", red_dir, "pattern asset directory");
    red->add_option("-o,--output", red_out, "certificate JSON output path");
    red->add_flag("--chain", red_chain, "also attempt the staged hexagonal->triangular->kagome route");
    red->callback([&] {
        const auto kind = parse_lattice_kind(red_source);
        if (!kind) throw input_error("unknown source kind: " + red_source);

        ReductionCertificate cert;
        if (!red_pattern.empty()) {
            if (red_rows == 0 || red_cols == 0)
                throw input_error("reduce: --rows/--cols required with --pattern");
            const LatticeSpec spec{*kind, {red_rows, red_cols}};
            cert = verify_reduction(lattice(spec), MeasurementPattern::from_json(slurp(red_pattern)),
                                    red_k, lattice_kind_name(*kind), spec.dims);
        } else if (*kind == LatticeKind::Grid) {
            const LatticeSpec spec{*kind, {red_k, red_k}};
            cert = verify_reduction(lattice(spec), MeasurementPattern{}, red_k, "grid", spec.dims);
        } else {
            const PatternAsset asset =
                load_pattern_asset(red_dir + "/" + pattern_asset_filename(*kind, red_k));
            cert = certify_asset(asset);
        }
        if (!red_out.empty()) spill(red_out, cert.to_json());
        std::cout << (cert.pass ? "pass" : "fail") << "\n";
        if (red_chain) std::cout << attempt_chain(red_dir, red_k).to_json() << "\n";
        if (!cert.pass) throw std::runtime_error("reduction certificate failed");
    });

    // ---- verify-cert ----
    auto* vc = app.add_subcommand("verify-cert", "replay a reduction certificate");
    std::string vc_file;
    vc->add_option("--cert", vc_file, "certificate JSON")->required();
    vc->callback([&] {
        const ReductionCertificate cert = ReductionCertificate::from_json(slurp(vc_file));
        const bool ok = replay_certificate(cert);
        std::cout << (ok ? "replay ok" : "replay FAILED") << "\n";
        if (!ok) throw std::runtime_error("certificate replay failed");
    });

    // ---- search-pattern ----
    auto* sp = app.add_subcommand("search-pattern", "search for a class-periodic reduction pattern");
    std::string sp_source, sp_target_kind = "grid", sp_out;
    int sp_rows = 0, sp_cols = 0, sp_k = 0, sp_trows = 0, sp_tcols = 0, sp_threads = 1;
    double sp_px = 2.0, sp_py = 2.0, sp_frac = 1.0;
    sp->add_option("--source", sp_source, "source lattice kind")->required();
    sp->add_option("--rows", sp_rows, "patch rows")->required();
    sp->add_option("--cols", sp_cols, "patch cols")->required();
    sp->add_option("--k", sp_k, "target grid size (grid targets)");
    sp->add_option("--target-kind", sp_target_kind, "target lattice kind (default grid)");
    sp->add_option("--target-rows", sp_trows, "target rows (non-grid targets)");
    sp->add_option("--target-cols", sp_tcols, "target cols (non-grid targets)");
    sp->add_option("--period-x", sp_px, "class period along x, lattice units (default 2)");
    sp->add_option("--period-y", sp_py, "class period along y, lattice units (default 2)");
    sp->add_option("--max-measured-fraction", sp_frac, "limit on the measured fraction");
    sp->add_option("--threads", sp_threads, "worker threads (default 1)");
    sp->add_option("-o,--output", sp_out, "pattern asset JSON output path");
    sp->callback([&] {
        const auto kind = parse_lattice_kind(sp_source);
        if (!kind) throw input_error("unknown source kind: " + sp_source);
        const auto tkind = parse_lattice_kind(sp_target_kind);
        if (!tkind) throw input_error("unknown target kind: " + sp_target_kind);
        const LatticeSpec src{*kind, {sp_rows, sp_cols}};
        LatticeSpec tgt;
        if (*tkind == LatticeKind::Grid) {
            if (sp_k < 1) throw input_error("search-pattern: --k required for grid targets");
            tgt = {LatticeKind::Grid, {sp_k, sp_k}};
        } else {
            if (sp_trows < 1 || sp_tcols < 1)
                throw input_error("search-pattern: --target-rows/--target-cols required");
            tgt = {*tkind, {sp_trows, sp_tcols}};
        }
        SearchOptions opts;
        opts.period_x = sp_px;
        opts.period_y = sp_py;
        opts.max_measured_fraction = sp_frac;
        opts.threads = sp_threads;
        const auto pattern = search_pattern_to(lattice(src), lattice(tgt), opts);
        if (!pattern) {
            std::cout << "no pattern found\n";
            throw std::runtime_error("search exhausted without a hit");
        }
        PatternAsset asset{src, tgt, *pattern};
        if (!sp_out.empty()) spill(sp_out, asset.to_json());
        std::cout << asset.to_json() << "\n";
    });

    // ---- le / nle ----
    auto* le = app.add_subcommand("le", "Pauli-strategy localizable entanglement of a pair");
    std::string le_graph, le_pair;
    int le_threads = 1;
    le->add_option("--graph", le_graph, "input graph JSON")->required();
    le->add_option("--pair", le_pair, "a,b")->required();
    le->add_option("--threads", le_threads, "worker threads (default 1)");
    le->callback([&] {
        const Graph g = Graph::from_json(slurp(le_graph));
        const auto pair = parse_int_list(le_pair);
        if (pair.size() != 2) throw input_error("le: --pair needs exactly two vertices");
        const LePairResult r = pauli_le_pair(g, pair[0], pair[1], le_threads);
        nlohmann::ordered_json j;
        j["a"] = r.a;
        j["b"] = r.b;
        j["value"] = r.value;
        if (r.witness) {
            auto w = nlohmann::ordered_json::array();
            for (auto [v, basis] : *r.witness) w.push_back({v, pauli_basis_name(basis)});
            j["witness"] = std::move(w);
        } else {
            j["witness"] = nullptr;
        }
        std::cout << j.dump() << "\n";
    });

    auto* nle = app.add_subcommand("nle", "largest subset with all pairs at unit localizable entanglement");
    std::string nle_graph;
    int nle_threads = 1;
    nle->add_option("--graph", nle_graph, "input graph JSON")->required();
    nle->add_option("--threads", nle_threads, "worker threads (default 1)");
    nle->callback([&] {
        const Graph g = Graph::from_json(slurp(nle_graph));
        const NleResult r = n_le(g, nle_threads);
        nlohmann::ordered_json j;
        j["size"] = r.size;
        j["subset"] = r.subset;
        std::cout << j.dump() << "\n";
    });

    // ---- perc ----
    auto* perc = app.add_subcommand("perc", "deformed-cluster site percolation");
    perc->require_subcommand(1);

    auto* scan = perc->add_subcommand("scan", "Monte Carlo crossing scan");
    std::string scan_k = "32", scan_lambda = "0.90:1.00:0.01", scan_out;
    int scan_trials = 500, scan_threads = 1;
    std::uint64_t scan_seed = 7;
    scan->add_option("--k", scan_k, "lattice sizes, comma list (default 32)");
    scan->add_option("--lambda", scan_lambda, "lo:hi:step range or comma list");
    scan->add_option("--trials", scan_trials, "trials per point (default 500)");
    scan->add_option("--seed", scan_seed, "RNG seed (default 7)");
    scan->add_option("--threads", scan_threads, "worker threads (default 1)");
    scan->add_option("-o,--output", scan_out, "CSV output path");
    scan->callback([&] {
        const auto ks = parse_int_list(scan_k);
        const auto lambdas = parse_lambda_spec(scan_lambda);
        const auto results = percolation_scan(ks, lambdas, scan_trials, scan_seed, scan_threads);
        std::ostringstream os;
        os << PercResult::csv_header() << "\n";
        for (const PercResult& r : results) os << r.csv_row() << "\n";
        if (!scan_out.empty())
            spill(scan_out, os.str());
        else
            std::cout << os.str();
    });

    auto* thr = perc->add_subcommand("threshold", "occupation threshold calibration estimate");
    int thr_k = 64, thr_trials = 2000, thr_threads = 1;
    std::uint64_t thr_seed = 7;
    thr->add_option("--k", thr_k, "lattice size (default 64)");
    thr->add_option("--trials", thr_trials, "trials per bisection step (default 2000)");
    thr->add_option("--seed", thr_seed, "RNG seed (default 7)");
    thr->add_option("--threads", thr_threads, "worker threads (default 1)");
    thr->callback([&] {
        std::cout << format_double(estimate_occupation_threshold(thr_k, thr_trials, thr_seed,
                                                                 thr_threads))
                  << "\n";
    });

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "state-vector ground-truth checks");
    oracle->require_subcommand(1);

    auto* vr = oracle->add_subcommand("verify-rules", "check Y/Z rewrite rules against the oracle");
    std::string vr_graph;
    double vr_tol = 1e-9;
    vr->add_option("--graph", vr_graph, "input graph JSON")->required();
    vr->add_option("--tol", vr_tol, "fidelity tolerance (default 1e-9)");
    vr->callback([&] {
        const Graph g = Graph::from_json(slurp(vr_graph));
        bool all_ok = true;
        for (int v = 0; v < g.n(); ++v)
            for (Basis basis : {Basis::Y, Basis::Z})
                for (int outcome : {+1, -1}) {
                    const RuleReport rep = verify_rule(g, v, basis, outcome, vr_tol);
                    all_ok = all_ok && rep.pass;
                    std::cout << "v=" << v << " basis=" << basis_name(basis) << " outcome="
                              << (outcome > 0 ? "+" : "-") << " fidelity=" << format_double(rep.fidelity)
                              << (rep.pass ? " ok" : " FAIL") << "\n";
                }
        if (!all_ok) throw std::runtime_error("rule verification failed");
    });

    auto* oe = oracle->add_subcommand("entropy", "bipartite entanglement entropy of a graph state");
    std::string oe_graph, oe_subset;
    oe->add_option("--graph", oe_graph, "input graph JSON")->required();
    oe->add_option("--subset", oe_subset, "comma-separated vertex list")->required();
    oe->callback([&] {
        const Graph g = Graph::from_json(slurp(oe_graph));
        const auto subset = parse_int_list(oe_subset);
        const StateVector psi = graph_state(g);
        std::cout << format_double(entanglement_entropy(psi, subset)) << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mbqc::input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const mbqc::resource_error& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
