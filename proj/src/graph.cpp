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

#include "mbqc/graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mbqc/errors.hpp"

namespace mbqc {

namespace {

void validate_edges(int n, std::span<const std::pair<int, int>> edges) {
    if (n < 0) throw input_error("graph: negative vertex count");
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw input_error("graph: edge endpoint out of range");
        if (u == v) throw input_error("graph: self-loop forbidden");
    }
}

}  // namespace

Graph::Graph(int n, std::span<const std::pair<int, int>> edges) {
    validate_edges(n, edges);
    n_ = n;
    adj_ = BitMatrix(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (auto [u, v] : edges) {
        adj_.set(static_cast<std::size_t>(u), static_cast<std::size_t>(v), true);
        adj_.set(static_cast<std::size_t>(v), static_cast<std::size_t>(u), true);
    }
}

Graph::Graph(int n, std::span<const std::pair<int, int>> edges, std::vector<Coord> coords,
             std::vector<std::string> labels)
    : Graph(n, edges) {
    if (!coords.empty()) {
        if (static_cast<int>(coords.size()) != n)
            throw input_error("graph: coords length must equal vertex count");
        coords_ = std::move(coords);
    }
    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != n)
            throw input_error("graph: labels length must equal vertex count");
        labels_ = std::move(labels);
    }
}

int Graph::degree(int v) const {
    if (v < 0 || v >= n_) throw input_error("degree: vertex out of range");
    int d = 0;
    for (std::uint64_t w : adj_.row_words(static_cast<std::size_t>(v))) d += std::popcount(w);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    if (v < 0 || v >= n_) throw input_error("neighbors: vertex out of range");
    std::vector<int> out;
    for (int u = 0; u < n_; ++u)
        if (has_edge(v, u)) out.push_back(u);
    return out;
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    for (int u = 0; u < n_; ++u)
        for (int v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

std::size_t Graph::edge_count() const {
    std::size_t total = 0;
    for (int v = 0; v < n_; ++v) total += static_cast<std::size_t>(degree(v));
    return total / 2;
}

std::string Graph::to_json() const {
    nlohmann::ordered_json j;
    j["n"] = n_;
    auto es = nlohmann::ordered_json::array();
    for (auto [u, v] : edges()) es.push_back({u, v});
    j["edges"] = std::move(es);
    if (coords_) {
        auto cs = nlohmann::ordered_json::array();
        for (const Coord& c : *coords_) cs.push_back({c.x, c.y});
        j["coords"] = std::move(cs);
    }
    if (labels_) j["labels"] = *labels_;
    return j.dump();
}

Graph Graph::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("graph JSON parse error at byte ") + std::to_string(e.byte) +
                          ": " + e.what());
    }
    try {
        if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
            throw input_error("graph JSON: expected object with \"n\" and \"edges\"");
        const int n = j.at("n").get<int>();
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2)
                throw input_error("graph JSON: edge must be a pair");
            edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
        }
        std::vector<Coord> coords;
        if (j.contains("coords")) {
            for (const auto& c : j.at("coords")) {
                if (!c.is_array() || c.size() != 2)
                    throw input_error("graph JSON: coord must be a pair");
                coords.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
            }
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return Graph(n, edges, std::move(coords), std::move(labels));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("graph JSON: ") + e.what());
    }
}

std::string Graph::to_dot() const {
    std::ostringstream os;
    os << "graph G {\n";
    os << "  node [shape=circle];\n";
    for (int v = 0; v < n_; ++v) {
        os << "  " << v;
        bool attr = false;
        if (labels_) {
            os << " [label=\"" << v << ":" << (*labels_)[v] << "\"";
            attr = true;
        }
        if (coords_) {
            os << (attr ? ", " : " [") << "pos=\"" << (*coords_)[v].x << "," << (*coords_)[v].y
               << "!\"";
            attr = true;
        }
        if (attr) os << "]";
        os << ";\n";
    }
    for (auto [u, v] : edges()) os << "  " << u << " -- " << v << ";\n";
    os << "}\n";
    return os.str();
}

Graph make_graph(int n, std::span<const std::pair<int, int>> edges) { return Graph(n, edges); }

const char* lattice_kind_name(LatticeKind kind) {
    switch (kind) {
        case LatticeKind::Path: return "path";
        case LatticeKind::Cycle: return "cycle";
        case LatticeKind::Star: return "star";
        case LatticeKind::Grid: return "grid";
        case LatticeKind::Hexagonal: return "hexagonal";
        case LatticeKind::Triangular: return "triangular";
        case LatticeKind::Kagome: return "kagome";
    }
    return "?";
}

std::optional<LatticeKind> parse_lattice_kind(const std::string& name) {
    if (name == "path") return LatticeKind::Path;
    if (name == "cycle") return LatticeKind::Cycle;
    if (name == "star") return LatticeKind::Star;
    if (name == "grid") return LatticeKind::Grid;
    if (name == "hexagonal" || name == "hex") return LatticeKind::Hexagonal;
    if (name == "triangular" || name == "tri") return LatticeKind::Triangular;
    if (name == "kagome") return LatticeKind::Kagome;
    return std::nullopt;
}

namespace {

Graph make_path(int n) {
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    for (int i = 0; i < n; ++i) coords.push_back({double(i), 0.0});
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    return Graph(n, edges, std::move(coords));
}

Graph make_cycle(int n) {
    if (n < 3) throw input_error("lattice: cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    for (int i = 0; i < n; ++i) coords.push_back({double(i), 0.0});
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    edges.emplace_back(n - 1, 0);
    return Graph(n, edges, std::move(coords));
}

Graph make_star(int n) {
    // vertex 0 is the center, 1..n-1 the leaves
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    coords.push_back({0.0, 0.0});
    for (int i = 1; i < n; ++i) {
        edges.emplace_back(0, i);
        coords.push_back({double(i), 1.0});
    }
    return Graph(n, edges, std::move(coords));
}

Graph make_grid(int rows, int cols) {
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) coords.push_back({double(c), double(r)});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, edges, std::move(coords));
}

// Brick-wall embedding of the honeycomb: full horizontal rows, vertical bonds
// where (row + col) is even. Interior vertices have degree 3.
Graph make_hexagonal(int rows, int cols) {
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) coords.push_back({double(c), double(r)});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows && (r + c) % 2 == 0) edges.emplace_back(id(r, c), id(r + 1, c));
        }
    return Graph(rows * cols, edges, std::move(coords));
}

Graph make_triangular(int rows, int cols) {
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    std::vector<Coord> coords;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) coords.push_back({c + 0.5 * r, double(r)});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
            if (r + 1 < rows && c - 1 >= 0) edges.emplace_back(id(r, c), id(r + 1, c - 1));
        }
    return Graph(rows * cols, edges, std::move(coords));
}

// Medial construction: one kagome vertex per edge of triangular(rows, cols),
// midpoints of each bounded triangular face pairwise joined.
Graph make_kagome(int rows, int cols) {
    const Graph tri = make_triangular(rows, cols);
    const auto tri_edges = tri.edges();
    const auto& tri_coords = *tri.coords();

    std::map<std::pair<int, int>, int> edge_id;
    std::vector<Coord> coords;
    for (std::size_t i = 0; i < tri_edges.size(); ++i) {
        edge_id[tri_edges[i]] = static_cast<int>(i);
        const Coord a = tri_coords[static_cast<std::size_t>(tri_edges[i].first)];
        const Coord b = tri_coords[static_cast<std::size_t>(tri_edges[i].second)];
        coords.push_back({(a.x + b.x) / 2.0, (a.y + b.y) / 2.0});
    }
    auto mid = [&](int u, int v) { return edge_id.at({std::min(u, v), std::max(u, v)}); };

    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    auto add_face = [&](int a, int b, int c) {
        const int ab = mid(a, b), bc = mid(b, c), ca = mid(c, a);
        edges.emplace_back(ab, bc);
        edges.emplace_back(bc, ca);
        edges.emplace_back(ca, ab);
    };
    for (int r = 0; r + 1 < rows; ++r)
        for (int c = 0; c + 1 < cols; ++c) {
            add_face(id(r, c), id(r, c + 1), id(r + 1, c));              // up triangle
            add_face(id(r, c + 1), id(r + 1, c), id(r + 1, c + 1));      // down triangle
        }
    return Graph(static_cast<int>(tri_edges.size()), edges, std::move(coords));
}

}  // namespace

Graph lattice(const LatticeSpec& spec) {
    const bool planar = spec.kind == LatticeKind::Grid || spec.kind == LatticeKind::Hexagonal ||
                        spec.kind == LatticeKind::Triangular || spec.kind == LatticeKind::Kagome;
    const std::size_t want = planar ? 2 : 1;
    if (spec.dims.size() != want)
        throw input_error(std::string("lattice: ") + lattice_kind_name(spec.kind) + " takes " +
                          std::to_string(want) + " dimension(s)");
    for (int d : spec.dims)
        if (d < 1) throw input_error("lattice: dimensions must be positive");

    switch (spec.kind) {
        case LatticeKind::Path: return make_path(spec.dims[0]);
        case LatticeKind::Cycle: return make_cycle(spec.dims[0]);
        case LatticeKind::Star: return make_star(spec.dims[0]);
        case LatticeKind::Grid: return make_grid(spec.dims[0], spec.dims[1]);
        case LatticeKind::Hexagonal: return make_hexagonal(spec.dims[0], spec.dims[1]);
        case LatticeKind::Triangular: return make_triangular(spec.dims[0], spec.dims[1]);
        case LatticeKind::Kagome: return make_kagome(spec.dims[0], spec.dims[1]);
    }
    throw input_error("lattice: unknown kind");
}

namespace {

// 1-WL style color refinement: start from degrees, refine by sorted
// multisets of neighbor colors until stable. Used both as an isomorphism
// filter and to order the backtracking.
std::vector<int> refine_colors(const Graph& g) {
    const int n = g.n();
    std::vector<int> color(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) color[static_cast<std::size_t>(v)] = g.degree(v);
    for (int round = 0; round < n; ++round) {
        std::vector<std::pair<int, std::vector<int>>> sig(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) {
            std::vector<int> nb;
            for (int u : g.neighbors(v)) nb.push_back(color[static_cast<std::size_t>(u)]);
            std::sort(nb.begin(), nb.end());
            sig[static_cast<std::size_t>(v)] = {color[static_cast<std::size_t>(v)], std::move(nb)};
        }
        std::map<std::pair<int, std::vector<int>>, int> remap;
        for (const auto& s : sig)
            remap.emplace(s, static_cast<int>(remap.size()));
        std::vector<int> next(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) next[static_cast<std::size_t>(v)] = remap.at(sig[static_cast<std::size_t>(v)]);
        if (next == color) break;
        color = std::move(next);
    }
    return color;
}

bool extend_mapping(const Graph& g, const Graph& h, const std::vector<int>& order,
                    const std::vector<std::vector<int>>& h_by_color, const std::vector<int>& gcol,
                    std::size_t pos, std::vector<int>& pi, std::vector<char>& used) {
    if (pos == order.size()) return true;
    const int v = order[pos];
    for (int cand : h_by_color[static_cast<std::size_t>(gcol[static_cast<std::size_t>(v)])]) {
        if (used[static_cast<std::size_t>(cand)]) continue;
        bool ok = true;
        for (std::size_t p = 0; p < pos; ++p) {
            const int u = order[p];
            if (g.has_edge(u, v) != h.has_edge(pi[static_cast<std::size_t>(u)], cand)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        pi[static_cast<std::size_t>(v)] = cand;
        used[static_cast<std::size_t>(cand)] = 1;
        if (extend_mapping(g, h, order, h_by_color, gcol, pos + 1, pi, used)) return true;
        used[static_cast<std::size_t>(cand)] = 0;
    }
    return false;
}

}  // namespace

std::optional<std::vector<int>> is_isomorphic(const Graph& g, const Graph& h) {
    if (g.n() != h.n()) return std::nullopt;
    if (g.n() == 0) return std::vector<int>{};
    if (g.edge_count() != h.edge_count()) return std::nullopt;

    std::vector<int> gcol = refine_colors(g);
    std::vector<int> hcol = refine_colors(h);
    {
        std::vector<int> a = gcol, b = hcol;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    const int ncolors = 1 + *std::max_element(gcol.begin(), gcol.end());
    std::vector<std::vector<int>> h_by_color(static_cast<std::size_t>(ncolors));
    for (int v = 0; v < h.n(); ++v) h_by_color[static_cast<std::size_t>(hcol[static_cast<std::size_t>(v)])].push_back(v);

    // Match rare colors first; ties broken by vertex index for determinism.
    std::vector<int> order(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) order[static_cast<std::size_t>(v)] = v;
    std::vector<int> color_size(static_cast<std::size_t>(ncolors), 0);
    for (int c : gcol) ++color_size[static_cast<std::size_t>(c)];
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return color_size[static_cast<std::size_t>(gcol[static_cast<std::size_t>(a)])] <
               color_size[static_cast<std::size_t>(gcol[static_cast<std::size_t>(b)])];
    });

    std::vector<int> pi(static_cast<std::size_t>(g.n()), -1);
    std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
    if (extend_mapping(g, h, order, h_by_color, gcol, 0, pi, used)) return pi;
    return std::nullopt;
}

}  // namespace mbqc
