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

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/graph.hpp"

namespace mbqc {

/// Unrooted tree with maximum degree 3 whose leaves are bijectively labeled
/// by qubits 0..m-1. Every edge splits the leaves into a bipartition; a tree
/// witnesses the width value it attains.
struct SubcubicTree {
    int nodes = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<int> leaf_of;  // per node: qubit index, or -1 for internal nodes

    int leaf_count() const;
    std::string to_json() const;
    static SubcubicTree from_json(const std::string& text);
    std::string to_dot() const;
};

/// Symmetric set function scored on qubit subsets, given as a bit mask.
/// Must be pure and thread-safe: the search evaluates it from worker threads.
using WidthFn = std::function<double(std::uint64_t)>;

struct WidthResult {
    double value = 0.0;
    SubcubicTree witness;
    std::uint64_t evaluations = 0;  // width-function evaluations performed
};

enum class WidthMethod { Enumerate, SubsetDP };

struct WidthOptions {
    int threads = 1;
    int dp_cap = 16;      // subset-DP table is 2^m entries
    int enum_cap = 9;     // (2m-5)!! trees
};

/// GF(2) rank of the adjacency submatrix with rows A and columns V\A. Equals
/// the graph state's bipartite entanglement entropy across (A, V\A) in bits.
int cut_rank(const Graph& g, std::span<const int> subset);

/// Zero-allocation cut-rank evaluator over subset bit masks (n <= 64), used
/// as the width function of the rank-width search.
class CutRankFn {
  public:
    explicit CutRankFn(const Graph& g);
    double operator()(std::uint64_t mask) const;

  private:
    std::vector<std::uint64_t> rows_;
    std::uint64_t full_ = 0;
    int n_ = 0;
};

/// Max over the edges of T of w at the induced leaf bipartition. The tree is
/// validated (connected, acyclic, degree <= 3, m labeled leaves).
double tree_width_value(const WidthFn& w, int m, const SubcubicTree& tree);

/// Streams every unrooted binary tree with m labeled leaves exactly once
/// ((2m-5)!! of them for m >= 3). Degree-2 internal nodes induce no new
/// bipartitions, so they are never generated: suppressing a degree-2 node
/// keeps the set of edge-induced bipartitions, hence the min-max, unchanged.
void enumerate_subcubic_trees(int m, const std::function<void(const SubcubicTree&)>& visit);

/// Exact min over subcubic trees of the max edge score. Enumerate is the
/// serial reference; SubsetDP is the production solver (OpenMP parallel over
/// subsets of equal popcount). Both return identical values.
WidthResult exact_width(const WidthFn& w, int m, WidthMethod method, const WidthOptions& opts = {});

/// exact_width with the cut-rank width function: the rank width of g, which
/// equals the entanglement width of the graph state of g.
WidthResult rank_width(const Graph& g, WidthMethod method = WidthMethod::SubsetDP,
                       const WidthOptions& opts = {});

/// log2(k+2) - 1: lower bound on the rank width of the k x k grid, valid for
/// k >= 3 (clique width k+1 and rwd >= log2(cwd+1) - 1).
double grid_lower_bound(int k);

/// 4 * 2^(twd-1) + 1: width bound for graphs of tree width twd >= 1.
double treewidth_upper_bound(int twd);

}  // namespace mbqc
