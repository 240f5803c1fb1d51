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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mbqc/bitmatrix.hpp"

namespace mbqc {

/// Planar position attached to a lattice vertex. All generators emit
/// quarter-integer coordinates, so positions are exact in doubles.
struct Coord {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Coord&) const = default;
};

/// Simple undirected graph: symmetric GF(2) adjacency with zero diagonal,
/// optional per-vertex coordinates and labels. Immutable after construction;
/// every rewrite produces a new value.
class Graph {
  public:
    Graph() = default;

    /// Vertex count n with the given edge set (duplicates collapsed).
    /// Self-loops and out-of-range endpoints raise input_error.
    Graph(int n, std::span<const std::pair<int, int>> edges);
    Graph(int n, std::span<const std::pair<int, int>> edges, std::vector<Coord> coords,
          std::vector<std::string> labels = {});

    int n() const { return n_; }
    bool has_edge(int u, int v) const { return adj_.get(static_cast<std::size_t>(u), static_cast<std::size_t>(v)); }
    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
    /// Edges as sorted (u, v) pairs with u < v.
    std::vector<std::pair<int, int>> edges() const;
    std::size_t edge_count() const;

    const BitMatrix& adjacency() const { return adj_; }
    const std::optional<std::vector<Coord>>& coords() const { return coords_; }
    const std::optional<std::vector<std::string>>& labels() const { return labels_; }

    /// Equality of vertex count and adjacency only (attributes ignored).
    bool same_topology(const Graph& other) const { return n_ == other.n_ && adj_ == other.adj_; }
    bool operator==(const Graph& other) const = default;

    std::string to_json() const;              // compact single-line document
    static Graph from_json(const std::string& text);
    std::string to_dot() const;

  private:
    int n_ = 0;
    BitMatrix adj_;
    std::optional<std::vector<Coord>> coords_;
    std::optional<std::vector<std::string>> labels_;
};

/// Convenience factory mirroring the (n, edges) construction.
Graph make_graph(int n, std::span<const std::pair<int, int>> edges);

enum class LatticeKind { Path, Cycle, Star, Grid, Hexagonal, Triangular, Kagome };

const char* lattice_kind_name(LatticeKind kind);
std::optional<LatticeKind> parse_lattice_kind(const std::string& name);

/// Family + dimensions. Path/cycle/star take one dimension (total vertex
/// count), the planar lattices take (rows, cols).
struct LatticeSpec {
    LatticeKind kind = LatticeKind::Path;
    std::vector<int> dims;
};

/// Generates the lattice with planar coordinates attached. All lattices are
/// open patches (no periodic wraparound). Vertex indexing is row-major by
/// coordinates:
///   grid(r, c):       vertex = r * cols + c, position (c, r)
///   hexagonal(r, c):  brick-wall; same indexing as grid, vertical bonds
///                     present where (row + col) is even
///   triangular(r, c): vertex = r * cols + c, position (c + r/2, r); edges to
///                     (r, c+1), (r+1, c), (r+1, c-1)
///   kagome(r, c):     one vertex per edge of triangular(r, c), placed at the
///                     edge midpoint, in increasing order of the parent edge
///                     list; midpoints of each bounded triangular face are
///                     pairwise joined
Graph lattice(const LatticeSpec& spec);

/// Vertex bijection pi with H.has_edge(pi[u], pi[v]) == G.has_edge(u, v), or
/// nullopt. Degree-partition refinement plus backtracking; deterministic.
std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h);

}  // namespace mbqc
