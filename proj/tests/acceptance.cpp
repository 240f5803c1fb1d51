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

// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/localizable.hpp"
#include "mbqc/percolation.hpp"
#include "mbqc/reduction.hpp"
#include "mbqc/rewrite.hpp"
#include "mbqc/statevec.hpp"
#include "mbqc/width.hpp"
#include "test_util.hpp"

#ifndef MBQC_PATTERN_DIR
#define MBQC_PATTERN_DIR "data/patterns/v1"
#endif

using namespace mbqc;
using mbqc::testing::random_connected_graph;
using mbqc::testing::random_graph;
using mbqc::testing::random_tree;

namespace {

constexpr int kThreads = 2;

double stabilizer_deviation(const Graph& g, const StateVector& psi, int a) {
    StateVector phi = psi;
    const Mat2 x = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    const Mat2 z = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    phi.apply_single_qubit(a, x);
    for (int b : g.neighbors(a)) phi.apply_single_qubit(b, z);
    double dev = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) dev = std::max(dev, std::abs(phi[i] - psi[i]));
    return dev;
}

std::vector<Graph> small_lattice_zoo(int max_n) {
    std::vector<Graph> zoo;
    for (int n = 2; n <= max_n; ++n) zoo.push_back(lattice({LatticeKind::Path, {n}}));
    for (int n = 3; n <= max_n; ++n) zoo.push_back(lattice({LatticeKind::Cycle, {n}}));
    for (int n = 2; n <= max_n; ++n) zoo.push_back(lattice({LatticeKind::Star, {n}}));
    for (LatticeKind kind : {LatticeKind::Grid, LatticeKind::Hexagonal, LatticeKind::Triangular,
                             LatticeKind::Kagome}) {
        for (int r = 2; r <= max_n / 2; ++r)
            for (int c = r; c <= max_n; ++c) {
                const Graph g = lattice({kind, {r, c}});
                if (g.n() <= max_n) zoo.push_back(g);
            }
    }
    return zoo;
}

// ---- criteria ----

bool stabilizer_identity(std::string& detail) {
    double worst = 0.0;
    int states = 0;
    for (const Graph& g : small_lattice_zoo(12)) {
        const StateVector psi = graph_state(g);
        for (int a = 0; a < g.n(); ++a) worst = std::max(worst, stabilizer_deviation(g, psi, a));
        ++states;
    }
    std::mt19937_64 eng(1001);
    for (int i = 0; i < 100; ++i) {
        const Graph g = random_graph(eng, 2 + static_cast<int>(eng() % 7));
        const StateVector psi = graph_state(g);
        for (int a = 0; a < g.n(); ++a) worst = std::max(worst, stabilizer_deviation(g, psi, a));
        ++states;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d states, max deviation %.2e", states, worst);
    detail = buf;
    return worst < 1e-12;
}

bool cutrank_equals_entropy(std::string& detail) {
    double worst = 0.0;
    for (std::uint32_t edges = 0; edges < 1024; ++edges) {
        std::vector<std::pair<int, int>> e;
        int bit = 0;
        for (int u = 0; u < 5; ++u)
            for (int v = u + 1; v < 5; ++v, ++bit)
                if (edges >> bit & 1) e.emplace_back(u, v);
        const Graph g(5, e);
        const StateVector psi = graph_state(g);
        const CutRankFn rank(g);
        for (std::uint64_t mask = 1; mask < 31; mask += 2)  // the 15 splits containing vertex 0
            worst = std::max(worst, std::abs(entanglement_entropy(psi, mask) - rank(mask)));
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "1024 graphs x 15 splits, max |entropy - cutrank| %.2e", worst);
    detail = buf;
    return worst < 1e-9;
}

bool rule_soundness(std::string& detail) {
    std::mt19937_64 eng(3003);
    double worst = 1.0;
    int checks = 0;
    for (int i = 0; i < 200; ++i) {
        const Graph g = random_connected_graph(eng, 2 + static_cast<int>(eng() % 7));
        for (int a = 0; a < g.n(); ++a)
            for (Basis basis : {Basis::Y, Basis::Z})
                for (int outcome : {+1, -1}) {
                    worst = std::min(worst, verify_rule(g, a, basis, outcome).fidelity);
                    ++checks;
                }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d measurements, min fidelity %.12f", checks, worst);
    detail = buf;
    return std::abs(worst - 1.0) < 1e-9;
}

bool paths_and_trees(std::string& detail) {
    for (int m = 2; m <= 10; ++m)
        if (rank_width(lattice({LatticeKind::Path, {m}}), WidthMethod::SubsetDP, {kThreads}).value != 1.0) {
            detail = "path P" + std::to_string(m) + " width != 1";
            return false;
        }
    std::mt19937_64 eng(4004);
    for (int i = 0; i < 50; ++i) {
        const Graph t = random_tree(eng, 2 + static_cast<int>(eng() % 8));
        if (rank_width(t, WidthMethod::SubsetDP, {kThreads}).value != 1.0) {
            detail = "random tree width != 1";
            return false;
        }
    }
    detail = "paths P2..P10 and 50 random trees all have width exactly 1";
    return true;
}

bool grid_width_and_bound(std::string& detail) {
    const WidthResult g33 = rank_width(lattice({LatticeKind::Grid, {3, 3}}),
                                       WidthMethod::SubsetDP, {kThreads});
    if (g33.value != 2.0) {
        detail = "rank_width(grid(3,3)) != 2";
        return false;
    }
    if (!(g33.value >= grid_lower_bound(3))) {
        detail = "grid lower bound violated";
        return false;
    }
    std::mt19937_64 eng(5005);
    for (int i = 0; i < 500; ++i) {
        const Graph g = random_connected_graph(eng, 3 + static_cast<int>(eng() % 5));
        const double dp = rank_width(g, WidthMethod::SubsetDP, {kThreads}).value;
        const double en = rank_width(g, WidthMethod::Enumerate).value;
        if (dp != en) {
            detail = "method disagreement on a random graph";
            return false;
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "rank_width(grid(3,3)) = 2 >= %.4f; DP == enumeration on 500 graphs",
                  grid_lower_bound(3));
    detail = buf;
    return true;
}

bool locc_monotonicity(std::string& detail) {
    std::mt19937_64 eng(6006);
    int checks = 0;
    for (int i = 0; i < 200; ++i) {
        const Graph g = random_graph(eng, 2 + static_cast<int>(eng() % 6));
        const double before = rank_width(g, WidthMethod::SubsetDP, {kThreads}).value;
        for (int a = 0; a < g.n(); ++a)
            for (Basis basis : {Basis::Y, Basis::Z}) {
                const Graph after = measure_pauli(g, a, basis, +1).graph;
                if (after.n() < 1) continue;
                ++checks;
                if (rank_width(after, WidthMethod::SubsetDP, {kThreads}).value > before) {
                    detail = "width increased under a measurement";
                    return false;
                }
            }
    }
    detail = std::to_string(checks) + " single measurements, width never increased";
    return true;
}

bool theorem2_certificates(std::string& detail) {
    int passed = 0;
    for (LatticeKind kind : {LatticeKind::Hexagonal, LatticeKind::Triangular, LatticeKind::Kagome}) {
        for (int k : {2, 3}) {
            const std::string path =
                std::string(MBQC_PATTERN_DIR) + "/" + pattern_asset_filename(kind, k);
            PatternAsset asset;
            try {
                asset = load_pattern_asset(path);
            } catch (const input_error& e) {
                detail = std::string("missing asset: ") + e.what();
                return false;
            }
            const ReductionCertificate cert = certify_asset(asset);
            if (!cert.pass) {
                detail = path + " does not certify";
                return false;
            }
            if (!replay_certificate(cert)) {
                detail = path + " replay failed";
                return false;
            }
            if (cert.to_json() != certify_asset(asset).to_json()) {
                detail = path + " not byte-stable";
                return false;
            }
            ++passed;
        }
    }
    detail = std::to_string(passed) + " lattice certificates pass and replay byte-identically";
    return passed == 6;
}

bool localizable_entanglement(std::string& detail) {
    const NleResult nle = n_le(lattice({LatticeKind::Grid, {2, 2}}), kThreads);
    if (nle.size != 4) {
        detail = "n_le(grid(2,2)) != 4";
        return false;
    }
    long pairs = 0;
    for (int n = 2; n <= 6; ++n) {
        const int bits = n * (n - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
            std::vector<std::pair<int, int>> e;
            int bit = 0;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v, ++bit)
                    if (mask >> bit & 1) e.emplace_back(u, v);
            const Graph g(n, e);
            if (!mbqc::testing::is_connected(g)) continue;
            for (auto [a, b] : g.edges()) {
                ++pairs;
                if (pauli_le_pair(g, a, b, kThreads).value < 1.0 - 1e-9) {
                    detail = "an adjacent pair fell below unit localizable entanglement";
                    return false;
                }
            }
        }
    }
    detail = "n_le(grid(2,2)) = 4; " + std::to_string(pairs) +
             " adjacent pairs across all connected graphs n <= 6 at unit value";
    return true;
}

bool defect_probability_exact(std::string& detail) {
    const std::vector<Graph> graphs = {make_graph(2, std::vector<std::pair<int, int>>{{0, 1}}),
                                       lattice({LatticeKind::Path, {3}}),
                                       lattice({LatticeKind::Grid, {2, 2}}),
                                       lattice({LatticeKind::Grid, {2, 3}})};
    double worst = 0.0;
    for (const Graph& g : graphs)
        for (double lambda : {0.5, 0.9, 0.98}) {
            const FilterDistribution dist = filter_distribution_exact(g, lambda);
            const double expect = defect_probability(lambda);
            for (int site = 0; site < g.n(); ++site)
                worst = std::max(worst, std::abs(dist.marginal_defect(site) - expect));
        }
    char buf[160];
    std::snprintf(buf, sizeof buf, "4 graphs x 3 lambdas, max marginal deviation %.2e", worst);
    detail = buf;
    return worst < 1e-9;
}

bool percolation_behavior(std::string& detail) {
    const std::vector<int> ks = {64};
    const std::vector<double> sweep = {1.0, 0.99, 0.98, 0.95, 0.9, 0.85, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3};
    const auto results = percolation_scan(ks, sweep, 200, 2026, kThreads);

    double at98 = -1.0;
    for (const PercResult& r : results)
        if (r.lambda == 0.98) at98 = r.crossing_freq;
    if (at98 < 0.99) {
        detail = "crossing frequency at lambda=0.98 below 0.99";
        return false;
    }
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].crossing_freq > results[i - 1].crossing_freq + 1e-12) {
            detail = "crossing frequency not monotone across the paired-seed sweep";
            return false;
        }
    const double threshold = estimate_occupation_threshold(64, 2000, 2026, kThreads);
    if (std::abs(threshold - 0.593) > 0.015) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "threshold estimate %.4f outside 0.593 +- 0.015 (external calibration constant)", threshold);
        detail = buf;
        return false;
    }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "crossing(lambda=0.98, k=64) = %.3f; sweep monotone; threshold %.4f within "
                  "0.593 +- 0.015 (external calibration constant, not a derived value)",
                  at98, threshold);
    detail = buf;
    return true;
}

bool entropy_width_equals_rank_width(std::string& detail) {
    std::mt19937_64 eng(1111);
    for (int i = 0; i < 50; ++i) {
        const Graph g = random_connected_graph(eng, 3 + static_cast<int>(eng() % 4));
        const StateVector psi = graph_state(g);
        const WidthFn entropy_fn = [&](std::uint64_t mask) {
            return entanglement_entropy(psi, mask);
        };
        const WidthResult via_entropy =
            exact_width(entropy_fn, g.n(), WidthMethod::SubsetDP, {kThreads});
        const WidthResult via_rank = rank_width(g, WidthMethod::SubsetDP, {kThreads});
        if (std::abs(via_entropy.value - via_rank.value) > 1e-6 ||
            std::llround(via_entropy.value) != std::llround(via_rank.value)) {
            detail = "entanglement width and rank width disagree";
            return false;
        }
    }
    detail = "entropy-width == rank width (exact integers) on 50 random connected graphs";
    return true;
}

bool tree_count_formula(std::string& detail) {
    const std::vector<std::pair<int, std::uint64_t>> expect = {
        {4, 3}, {5, 15}, {6, 105}, {7, 945}, {8, 10395}};
    for (auto [m, want] : expect) {
        std::uint64_t count = 0;
        enumerate_subcubic_trees(m, [&](const SubcubicTree&) { ++count; });
        if (count != want) {
            detail = "count mismatch at m=" + std::to_string(m);
            return false;
        }
    }
    detail = "(2m-5)!! tree counts match for m = 4..8";
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "stabilizer identity on lattices and random graphs", stabilizer_identity},
        {2, "cut-rank equals entanglement entropy on all 5-vertex graphs", cutrank_equals_entropy},
        {3, "Y/Z rewrite rules sound against the oracle", rule_soundness},
        {4, "paths and trees have width 1", paths_and_trees},
        {5, "grid(3,3) width, lower bound, method agreement", grid_width_and_bound},
        {6, "width is monotone under local measurements", locc_monotonicity},
        {7, "hexagonal/triangular/kagome reduction certificates", theorem2_certificates},
        {8, "localizable entanglement: n_le and adjacent pairs", localizable_entanglement},
        {9, "filter defect marginals match the closed form", defect_probability_exact},
        {10, "percolation crossing, monotone sweep, threshold calibration", percolation_behavior},
        {11, "entanglement width equals rank width on graph states", entropy_width_equals_rank_width},
        {12, "subcubic tree enumeration counts", tree_count_formula},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s  criterion %2d: %s (%s) [%.1fs]\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    detail.c_str(), secs);
        std::fflush(stdout);
        if (!ok) ++failures;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
