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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "mbqc/errors.hpp"
#include "mbqc/percolation.hpp"

using namespace mbqc;
using Edges = std::vector<std::pair<int, int>>;

TEST_CASE("defect probability formula") {
    CHECK(defect_probability(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(defect_probability(0.98) == doctest::Approx(0.0396 / 1.9604).epsilon(1e-12));
    CHECK(defect_probability(0.5) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK_THROWS_AS(defect_probability(0.0), input_error);
    CHECK_THROWS_AS(defect_probability(1.0001), input_error);
}

TEST_CASE("defect probability strictly decreases in lambda") {
    double prev = 1.1;
    for (double l = 0.05; l <= 1.0; l += 0.05) {
        const double p = defect_probability(l);
        CHECK(p < prev);
        prev = p;
    }
}

TEST_CASE("exact filter distribution on small graphs") {
    const Graph k2 = make_graph(2, Edges{{0, 1}});
    const FilterDistribution at_one = filter_distribution_exact(k2, 1.0);
    CHECK(at_one.probability[0] == doctest::Approx(1.0).epsilon(1e-12));

    const Graph single = make_graph(1, Edges{});
    const FilterDistribution lone = filter_distribution_exact(single, 0.5);
    CHECK(lone.marginal_defect(0) == doctest::Approx(0.6).epsilon(1e-12));

    const Graph g22 = lattice({LatticeKind::Grid, {2, 2}});
    const FilterDistribution grid = filter_distribution_exact(g22, 0.9);
    const double expect = (1.0 - 0.81) / (1.0 + 0.81);
    for (int site = 0; site < 4; ++site)
        CHECK(grid.marginal_defect(site) == doctest::Approx(expect).epsilon(1e-9));

    double sum = 0.0;
    for (double p : grid.probability) sum += p;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("per-site marginals are size-independent") {
    const std::vector<Graph> graphs = {make_graph(2, Edges{{0, 1}}),
                                       make_graph(3, Edges{{0, 1}, {1, 2}}),
                                       lattice({LatticeKind::Grid, {2, 2}}),
                                       lattice({LatticeKind::Grid, {2, 3}})};
    for (double lambda : {0.5, 0.9, 0.98}) {
        const double expect = defect_probability(lambda);
        for (const Graph& g : graphs) {
            const FilterDistribution dist = filter_distribution_exact(g, lambda);
            for (int site = 0; site < g.n(); ++site)
                CHECK(dist.marginal_defect(site) == doctest::Approx(expect).epsilon(1e-9));
        }
    }
}

TEST_CASE("joint distribution is close to, but not exactly, a product") {
    // reported, not asserted as zero: quantifies residual correlations
    const FilterDistribution dist = filter_distribution_exact(lattice({LatticeKind::Grid, {2, 2}}), 0.7);
    CHECK(dist.max_product_deviation() >= 0.0);
    CHECK(dist.max_product_deviation() < 0.2);
}

TEST_CASE("site percolation trials are reproducible") {
    const TrialStats a = site_percolation_trial(16, 0.3, 1234, 7);
    const TrialStats b = site_percolation_trial(16, 0.3, 1234, 7);
    CHECK(a.crossing == b.crossing);
    CHECK(a.largest_component == b.largest_component);
    const TrialStats c = site_percolation_trial(16, 0.3, 1234, 8);
    const TrialStats d = site_percolation_trial(16, 0.3, 4321, 7);
    // different stream: almost surely a different sample (checked loosely)
    CHECK((c.largest_component != a.largest_component || d.largest_component != a.largest_component ||
           c.crossing != a.crossing || d.crossing != a.crossing));
}

TEST_CASE("degenerate occupation levels") {
    const TrialStats full = site_percolation_trial(8, 0.0, 5, 0);
    CHECK(full.crossing);
    CHECK(full.largest_component == 64);
    const TrialStats none = site_percolation_trial(8, 1.0, 5, 0);
    CHECK_FALSE(none.crossing);
    CHECK(none.largest_component == 0);
}

TEST_CASE("scan: no defects at lambda = 1, paired-seed monotone in lambda") {
    const std::vector<int> ks = {16};
    const std::vector<double> lambdas = {1.0, 0.95, 0.9, 0.8, 0.7, 0.6, 0.5};
    const auto results = percolation_scan(ks, lambdas, 60, 99);
    CHECK(results[0].crossing_freq == 1.0);
    // identical streams across lambda make the crossing frequency exactly
    // monotone: each trial's indicator is monotone in p_def
    for (std::size_t i = 1; i < results.size(); ++i)
        CHECK(results[i].crossing_freq <= results[i - 1].crossing_freq);
}

TEST_CASE("csv output shape") {
    CHECK(PercResult::csv_header() == "k,lambda,p_def,trials,crossing_freq,largest_frac,seed");
    PercResult r;
    r.k = 8;
    r.lambda = 0.5;
    r.p_def = 0.6;
    r.trials = 10;
    r.crossing_freq = 0.1;
    r.largest_frac = 0.25;
    r.seed = 42;
    CHECK(r.csv_row() == "8,0.5,0.6,10,0.1,0.25,42");
}

TEST_CASE("occupation threshold estimate lands near the known constant") {
    // small lattice and trial count: loose window around 0.5927
    const double est = estimate_occupation_threshold(32, 300, 2026);
    CHECK(est > 0.55);
    CHECK(est < 0.64);
    CHECK_THROWS_AS(estimate_occupation_threshold(8, 10, 1), input_error);
}
