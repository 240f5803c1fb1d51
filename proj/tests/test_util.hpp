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

#include <random>
#include <utility>
#include <vector>

#include "mbqc/graph.hpp"

namespace mbqc::testing {

inline Graph random_graph(std::mt19937_64& eng, int n, double p = 0.5) {
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (static_cast<double>(eng() >> 11) * 0x1.0p-53 < p) edges.emplace_back(u, v);
    return Graph(n, edges);
}

inline bool is_connected(const Graph& g) {
    if (g.n() == 0) return true;
    std::vector<char> vis(static_cast<std::size_t>(g.n()), 0);
    std::vector<int> stack = {0};
    vis[0] = 1;
    int seen = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if (!vis[static_cast<std::size_t>(u)]) {
                vis[static_cast<std::size_t>(u)] = 1;
                ++seen;
                stack.push_back(u);
            }
    }
    return seen == g.n();
}

inline Graph random_connected_graph(std::mt19937_64& eng, int n, double p = 0.5) {
    for (;;) {
        Graph g = random_graph(eng, n, p);
        if (is_connected(g)) return g;
    }
}

/// Uniform-ish random tree: each new vertex attaches to a random earlier one.
inline Graph random_tree(std::mt19937_64& eng, int n) {
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(eng() % static_cast<std::uint64_t>(v)), v);
    return Graph(n, edges);
}

}  // namespace mbqc::testing
