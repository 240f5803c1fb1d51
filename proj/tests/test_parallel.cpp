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

// The OpenMP kernels must be bit-identical to their serial runs: same width
// values and witnesses, same Monte Carlo statistics, same search results.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mbqc/localizable.hpp"
#include "mbqc/percolation.hpp"
#include "mbqc/reduction.hpp"
#include "mbqc/width.hpp"
#include "test_util.hpp"

using namespace mbqc;

TEST_CASE("subset DP is thread-count independent and matches enumeration") {
    std::mt19937_64 eng(2468);
    for (int iter = 0; iter < 10; ++iter) {
        const int n = 4 + static_cast<int>(eng() % 5);
        const Graph g = mbqc::testing::random_connected_graph(eng, n);

        WidthOptions serial, parallel;
        serial.threads = 1;
        parallel.threads = 4;
        const WidthResult a = rank_width(g, WidthMethod::SubsetDP, serial);
        const WidthResult b = rank_width(g, WidthMethod::SubsetDP, parallel);
        CHECK(a.value == b.value);
        CHECK(a.witness.to_json() == b.witness.to_json());
        CHECK(a.evaluations == b.evaluations);

        const WidthResult ref = rank_width(g, WidthMethod::Enumerate, serial);
        CHECK(ref.value == a.value);
    }
}

TEST_CASE("percolation scan is thread-count independent") {
    const std::vector<int> ks = {16, 24};
    const std::vector<double> lambdas = {0.98, 0.9, 0.75};
    const auto serial = percolation_scan(ks, lambdas, 40, 7, 1);
    const auto parallel = percolation_scan(ks, lambdas, 40, 7, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].crossing_freq == parallel[i].crossing_freq);
        CHECK(serial[i].largest_frac == parallel[i].largest_frac);
        CHECK(serial[i].csv_row() == parallel[i].csv_row());
    }
}

TEST_CASE("threshold estimate is thread-count independent") {
    const double a = estimate_occupation_threshold(16, 60, 11, 1);
    const double b = estimate_occupation_threshold(16, 60, 11, 4);
    CHECK(a == b);
}

TEST_CASE("localizable entanglement is thread-count independent") {
    std::mt19937_64 eng(135);
    for (int iter = 0; iter < 6; ++iter) {
        const int n = 4 + static_cast<int>(eng() % 3);
        const Graph g = mbqc::testing::random_connected_graph(eng, n);
        const LePairResult a = pauli_le_pair(g, 0, n - 1, 1);
        const LePairResult b = pauli_le_pair(g, 0, n - 1, 4);
        CHECK(a.value == b.value);
        CHECK(a.witness == b.witness);
    }
    const NleResult s = n_le(lattice({LatticeKind::Grid, {2, 2}}), 1);
    const NleResult p = n_le(lattice({LatticeKind::Grid, {2, 2}}), 4);
    CHECK(s.subset == p.subset);
}

TEST_CASE("pattern search is thread-count independent") {
    const Graph hex = lattice({LatticeKind::Hexagonal, {2, 4}});
    SearchOptions one, four;
    one.threads = 1;
    four.threads = 4;
    const auto a = search_pattern(hex, 2, one);
    const auto b = search_pattern(hex, 2, four);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(a->to_json() == b->to_json());
}
