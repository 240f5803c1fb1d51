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

#include "mbqc/width.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "mbqc/errors.hpp"

namespace mbqc {

int SubcubicTree::leaf_count() const {
    int m = 0;
    for (int q : leaf_of)
        if (q >= 0) ++m;
    return m;
}

std::string SubcubicTree::to_json() const {
    nlohmann::ordered_json j;
    j["nodes"] = nodes;
    auto es = nlohmann::ordered_json::array();
    for (auto [a, b] : edges) es.push_back({a, b});
    j["edges"] = std::move(es);
    nlohmann::ordered_json lm = nlohmann::ordered_json::object();
    for (int v = 0; v < nodes; ++v)
        if (leaf_of[static_cast<std::size_t>(v)] >= 0)
            lm[std::to_string(v)] = leaf_of[static_cast<std::size_t>(v)];
    j["leaf_map"] = std::move(lm);
    return j.dump();
}

SubcubicTree SubcubicTree::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("tree JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
    }
    SubcubicTree t;
    try {
        t.nodes = j.at("nodes").get<int>();
        for (const auto& e : j.at("edges"))
            t.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        t.leaf_of.assign(static_cast<std::size_t>(t.nodes), -1);
        for (const auto& [k, v] : j.at("leaf_map").items())
            t.leaf_of.at(static_cast<std::size_t>(std::stoi(k))) = v.get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("tree JSON: ") + e.what());
    }
    return t;
}

std::string SubcubicTree::to_dot() const {
    std::ostringstream os;
    os << "graph T {\n";
    for (int v = 0; v < nodes; ++v) {
        if (leaf_of[static_cast<std::size_t>(v)] >= 0)
            os << "  " << v << " [shape=box, label=\"q" << leaf_of[static_cast<std::size_t>(v)]
               << "\"];\n";
        else
            os << "  " << v << " [shape=point];\n";
    }
    for (auto [a, b] : edges) os << "  " << a << " -- " << b << ";\n";
    os << "}\n";
    return os.str();
}

int cut_rank(const Graph& g, std::span<const int> subset) {
    std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
    for (int v : subset) {
        if (v < 0 || v >= g.n()) throw input_error("cut_rank: vertex out of range");
        if (in[static_cast<std::size_t>(v)]) throw input_error("cut_rank: duplicate vertex");
        in[static_cast<std::size_t>(v)] = 1;
    }
    std::vector<std::size_t> rows, cols;
    for (int v = 0; v < g.n(); ++v)
        (in[static_cast<std::size_t>(v)] ? rows : cols).push_back(static_cast<std::size_t>(v));
    return static_cast<int>(g.adjacency().submatrix(rows, cols).rank());
}

CutRankFn::CutRankFn(const Graph& g) : n_(g.n()) {
    if (n_ > 64) throw resource_error("CutRankFn: supports at most 64 vertices");
    full_ = n_ == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n_) - 1);
    rows_.reserve(static_cast<std::size_t>(n_));
    for (int v = 0; v < n_; ++v) rows_.push_back(g.adjacency().row_words(static_cast<std::size_t>(v))[0]);
}

double CutRankFn::operator()(std::uint64_t mask) const {
    // rows from the subset, columns restricted to the complement
    std::uint64_t work[64];
    std::size_t nrows = 0;
    const std::uint64_t keep = full_ & ~mask;
    std::uint64_t rest = mask;
    while (rest) {
        const int v = std::countr_zero(rest);
        rest &= rest - 1;
        work[nrows++] = rows_[static_cast<std::size_t>(v)] & keep;
    }
    return static_cast<double>(gf2_rank_inplace(work, nrows, static_cast<std::size_t>(n_), 1));
}

namespace {

std::vector<std::vector<int>> tree_adjacency(const SubcubicTree& t) {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(t.nodes));
    for (auto [a, b] : t.edges) {
        if (a < 0 || b < 0 || a >= t.nodes || b >= t.nodes || a == b)
            throw input_error("subcubic tree: bad edge");
        adj[static_cast<std::size_t>(a)].push_back(b);
        adj[static_cast<std::size_t>(b)].push_back(a);
    }
    return adj;
}

void validate_tree(const SubcubicTree& t, int m, const std::vector<std::vector<int>>& adj) {
    if (t.nodes <= 0 || static_cast<int>(t.leaf_of.size()) != t.nodes)
        throw input_error("subcubic tree: leaf_of size mismatch");
    if (static_cast<int>(t.edges.size()) != t.nodes - 1)
        throw input_error("subcubic tree: wrong edge count for a tree");
    std::vector<char> seen_leaf(static_cast<std::size_t>(m), 0);
    int leaves = 0;
    for (int v = 0; v < t.nodes; ++v) {
        const std::size_t deg = adj[static_cast<std::size_t>(v)].size();
        if (deg > 3) throw input_error("subcubic tree: node degree exceeds 3");
        const int q = t.leaf_of[static_cast<std::size_t>(v)];
        if (q >= 0) {
            if (q >= m) throw input_error("subcubic tree: leaf label out of range");
            if (seen_leaf[static_cast<std::size_t>(q)])
                throw input_error("subcubic tree: duplicate leaf label");
            if (t.nodes > 1 && deg != 1)
                throw input_error("subcubic tree: labeled leaf must have degree 1");
            seen_leaf[static_cast<std::size_t>(q)] = 1;
            ++leaves;
        }
    }
    if (leaves != m) throw input_error("subcubic tree: leaf labels must cover all qubits");
    // connectivity (edge count already matches a tree)
    std::vector<char> vis(static_cast<std::size_t>(t.nodes), 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : adj[static_cast<std::size_t>(v)])
            if (!vis[static_cast<std::size_t>(u)]) {
                vis[static_cast<std::size_t>(u)] = 1;
                ++count;
                stack.push_back(u);
            }
    }
    if (count != t.nodes) throw input_error("subcubic tree: not connected");
}

/// Leaf mask on the `from` side of edge (from, to).
std::uint64_t side_mask(const SubcubicTree& t, const std::vector<std::vector<int>>& adj, int from,
                        int to) {
    std::uint64_t mask = 0;
    std::vector<int> stack = {from};
    std::vector<char> vis(static_cast<std::size_t>(t.nodes), 0);
    vis[static_cast<std::size_t>(from)] = 1;
    vis[static_cast<std::size_t>(to)] = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        const int q = t.leaf_of[static_cast<std::size_t>(v)];
        if (q >= 0) mask |= std::uint64_t{1} << q;
        for (int u : adj[static_cast<std::size_t>(v)])
            if (!vis[static_cast<std::size_t>(u)]) {
                vis[static_cast<std::size_t>(u)] = 1;
                stack.push_back(u);
            }
    }
    return mask;
}

}  // namespace

double tree_width_value(const WidthFn& w, int m, const SubcubicTree& tree) {
    const auto adj = tree_adjacency(tree);
    validate_tree(tree, m, adj);
    double value = 0.0;
    for (auto [a, b] : tree.edges) value = std::max(value, w(side_mask(tree, adj, a, b)));
    return value;
}

void enumerate_subcubic_trees(int m, const std::function<void(const SubcubicTree&)>& visit) {
    if (m < 2) throw input_error("enumerate_subcubic_trees: need at least 2 leaves");

    SubcubicTree t;
    if (m == 2) {
        t.nodes = 2;
        t.edges = {{0, 1}};
        t.leaf_of = {0, 1};
        visit(t);
        return;
    }

    t.nodes = m + 1;
    t.edges = {{0, m}, {1, m}, {2, m}};
    t.leaf_of.assign(static_cast<std::size_t>(2 * m - 2), -1);
    for (int q = 0; q < m; ++q) t.leaf_of[static_cast<std::size_t>(q)] = q;

    // Insert leaf `next` onto every edge of every partial tree. Each final
    // tree is produced exactly once, giving the (2m-5)!! count.
    auto rec = [&](auto&& self, int next) -> void {
        if (next == m) {
            visit(t);
            return;
        }
        const std::size_t limit = t.edges.size();
        const int mid = t.nodes;  // fresh internal node subdividing the edge
        for (std::size_t i = 0; i < limit; ++i) {
            const auto [u, v] = t.edges[static_cast<std::size_t>(i)];
            t.edges[i] = {u, mid};
            t.edges.push_back({mid, v});
            t.edges.push_back({mid, next});
            t.nodes += 1;
            self(self, next + 1);
            t.nodes -= 1;
            t.edges.pop_back();
            t.edges.pop_back();
            t.edges[i] = {u, v};
        }
    };
    rec(rec, 3);
}

namespace {

/// Canonical relabeling: orient at leaf 0, order children by the smallest
/// leaf below them, number internal nodes in preorder. The flattened edge
/// list doubles as a total order on witness trees.
struct CanonicalTree {
    std::vector<int> encoding;
    SubcubicTree tree;
};

CanonicalTree canonicalize(const SubcubicTree& t, int m) {
    CanonicalTree out;
    if (t.nodes == 1) {
        out.tree = t;
        return out;
    }
    const auto adj = tree_adjacency(t);

    int leaf0 = -1;
    for (int v = 0; v < t.nodes; ++v)
        if (t.leaf_of[static_cast<std::size_t>(v)] == 0) leaf0 = v;

    // min leaf label reachable from v when entered from parent
    auto min_leaf = [&](auto&& self, int v, int parent) -> int {
        const int q = t.leaf_of[static_cast<std::size_t>(v)];
        if (q >= 0) return q;
        int best = m;
        for (int u : adj[static_cast<std::size_t>(v)])
            if (u != parent) best = std::min(best, self(self, u, v));
        return best;
    };

    SubcubicTree& ct = out.tree;
    ct.nodes = t.nodes;
    ct.leaf_of.assign(static_cast<std::size_t>(t.nodes), -1);
    for (int q = 0; q < m; ++q) ct.leaf_of[static_cast<std::size_t>(q)] = q;
    int next_internal = m;

    auto assign = [&](auto&& self, int v, int parent) -> int {
        const int q = t.leaf_of[static_cast<std::size_t>(v)];
        if (q >= 0) return q;
        const int id = next_internal++;
        std::vector<std::pair<int, int>> kids;  // (min leaf, node)
        for (int u : adj[static_cast<std::size_t>(v)])
            if (u != parent) kids.emplace_back(min_leaf(min_leaf, u, v), u);
        std::sort(kids.begin(), kids.end());
        for (auto [_, u] : kids) {
            const int cid = self(self, u, v);
            ct.edges.emplace_back(id, cid);
            out.encoding.push_back(id);
            out.encoding.push_back(cid);
        }
        return id;
    };

    const int root_old = adj[static_cast<std::size_t>(leaf0)][0];
    const int root_new = assign(assign, root_old, leaf0);
    ct.edges.emplace_back(0, root_new);
    out.encoding.push_back(0);
    out.encoding.push_back(root_new);
    return out;
}

SubcubicTree degenerate_tree(int m) {
    SubcubicTree t;
    if (m == 1) {
        t.nodes = 1;
        t.leaf_of = {0};
    } else {
        t.nodes = 2;
        t.edges = {{0, 1}};
        t.leaf_of = {0, 1};
    }
    return t;
}

WidthResult width_by_enumeration(const WidthFn& w, int m, const WidthOptions& opts) {
    if (m > opts.enum_cap)
        throw resource_error("exact_width: enumerate cap of " + std::to_string(opts.enum_cap) +
                             " leaves exceeded (requested " + std::to_string(m) + ")");
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;

    std::unordered_map<std::uint64_t, double> memo;
    std::uint64_t evaluations = 0;
    auto score = [&](std::uint64_t mask) {
        const std::uint64_t key = std::min(mask, full & ~mask);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        ++evaluations;
        const double v = w(mask);
        memo.emplace(key, v);
        return v;
    };

    double best = -1.0;
    std::vector<int> best_enc;
    SubcubicTree best_tree;

    enumerate_subcubic_trees(m, [&](const SubcubicTree& t) {
        const auto adj = tree_adjacency(t);
        double alpha = 0.0;
        for (auto [a, b] : t.edges) {
            alpha = std::max(alpha, score(side_mask(t, adj, a, b)));
            if (best >= 0.0 && alpha > best) return;  // cannot improve or tie
        }
        if (best < 0.0 || alpha < best) {
            best = alpha;
            CanonicalTree c = canonicalize(t, m);
            best_enc = std::move(c.encoding);
            best_tree = std::move(c.tree);
        } else if (alpha == best) {
            CanonicalTree c = canonicalize(t, m);
            if (c.encoding < best_enc) {
                best_enc = std::move(c.encoding);
                best_tree = std::move(c.tree);
            }
        }
    });

    return {best, std::move(best_tree), evaluations};
}

WidthResult width_by_subset_dp(const WidthFn& w, int m, const WidthOptions& opts) {
    if (m > opts.dp_cap)
        throw resource_error("exact_width: subset_dp cap of " + std::to_string(opts.dp_cap) +
                             " qubits exceeded (requested " + std::to_string(m) + ")");
    if (m == 2) {
        SubcubicTree t = degenerate_tree(2);
        return {w(1), std::move(t), 1};
    }

    // Root the search at leaf 0: every unrooted binary tree, seen from leaf
    // 0, is a rooted binary tree over V\{0} whose root edge carries the cut
    // w(V\{0}) = w({0}). DP over subsets S of V\{0}:
    //   g(S) = max(w(S), min over splits S = T + (S\T) of max(g(T), g(S\T)))
    // and the answer is g(V\{0}).
    const std::uint64_t full = (std::uint64_t{1} << m) - 1;
    const std::uint64_t universe = full & ~std::uint64_t{1};
    const std::size_t size = std::size_t{1} << m;

    std::vector<double> score(size, 0.0);
    std::vector<double> g(size, 0.0);
    std::vector<std::uint64_t> choice(size, 0);

    // score every nonempty S ⊆ V\{0} first, in parallel; the DP then only
    // reads the table, which keeps it deterministic for any thread count
    std::uint64_t evaluations = 0;
#pragma omp parallel for schedule(dynamic, 256) num_threads(opts.threads) if (opts.threads > 1) \
    reduction(+ : evaluations)
    for (std::int64_t s = 2; s < static_cast<std::int64_t>(size); s += 2) {
        const auto mask = static_cast<std::uint64_t>(s);
        score[static_cast<std::size_t>(s)] = w(mask);
        ++evaluations;
    }

    std::vector<std::vector<std::uint64_t>> by_popcount(static_cast<std::size_t>(m));
    for (std::uint64_t s = 2; s <= universe; s += 2) {
        if ((s & ~universe) != 0) continue;
        by_popcount[static_cast<std::size_t>(std::popcount(s) - 1)].push_back(s);
    }

    for (std::uint64_t s : by_popcount[0]) g[static_cast<std::size_t>(s)] = score[static_cast<std::size_t>(s)];

    for (int layer = 1; layer < m - 1; ++layer) {
        const auto& masks = by_popcount[static_cast<std::size_t>(layer)];
#pragma omp parallel for schedule(dynamic, 16) num_threads(opts.threads) if (opts.threads > 1)
        for (std::int64_t idx = 0; idx < static_cast<std::int64_t>(masks.size()); ++idx) {
            const std::uint64_t s = masks[static_cast<std::size_t>(idx)];
            const std::uint64_t low = s & (~s + 1);  // canonical: keep the lowest leaf on one side
            double best = -1.0;
            std::uint64_t best_sub = 0;
            for (std::uint64_t sub = (s - 1) & s; sub > 0; sub = (sub - 1) & s) {
                if (!(sub & low)) continue;
                if (sub == s) continue;
                const double cand =
                    std::max(g[static_cast<std::size_t>(sub)], g[static_cast<std::size_t>(s ^ sub)]);
                if (best < 0.0 || cand < best) {
                    best = cand;
                    best_sub = sub;
                }
            }
            g[static_cast<std::size_t>(s)] = std::max(score[static_cast<std::size_t>(s)], best);
            choice[static_cast<std::size_t>(s)] = best_sub;
        }
    }

    // rebuild the witness from the recorded splits
    SubcubicTree t;
    t.nodes = 2 * m - 2;
    t.leaf_of.assign(static_cast<std::size_t>(t.nodes), -1);
    for (int q = 0; q < m; ++q) t.leaf_of[static_cast<std::size_t>(q)] = q;
    int next_internal = m;
    auto build = [&](auto&& self, std::uint64_t s) -> int {
        if (std::popcount(s) == 1) return std::countr_zero(s);
        const int id = next_internal++;
        const std::uint64_t sub = choice[static_cast<std::size_t>(s)];
        t.edges.emplace_back(id, self(self, sub));
        t.edges.emplace_back(id, self(self, s ^ sub));
        return id;
    };
    const int root = build(build, universe);
    t.edges.emplace_back(0, root);

    CanonicalTree canon = canonicalize(t, m);
    return {g[static_cast<std::size_t>(universe)], std::move(canon.tree), evaluations};
}

}  // namespace

WidthResult exact_width(const WidthFn& w, int m, WidthMethod method, const WidthOptions& opts) {
    if (m < 1) throw input_error("exact_width: need at least one qubit");
    if (m == 1) return {0.0, degenerate_tree(1), 0};
    if (method == WidthMethod::Enumerate) return width_by_enumeration(w, m, opts);
    return width_by_subset_dp(w, m, opts);
}

WidthResult rank_width(const Graph& g, WidthMethod method, const WidthOptions& opts) {
    if (g.n() < 1) throw input_error("rank_width: graph must have at least one vertex");
    if (g.n() == 1) return {0.0, SubcubicTree{1, {}, {0}}, 0};
    const CutRankFn fn(g);
    return exact_width([&fn](std::uint64_t mask) { return fn(mask); }, g.n(), method, opts);
}

double grid_lower_bound(int k) {
    if (k < 3) throw input_error("grid_lower_bound: requires k >= 3");
    return std::log2(double(k) + 2.0) - 1.0;
}

double treewidth_upper_bound(int twd) {
    if (twd < 1) throw input_error("treewidth_upper_bound: requires twd >= 1");
    return 4.0 * std::pow(2.0, double(twd - 1)) + 1.0;
}

}  // namespace mbqc
