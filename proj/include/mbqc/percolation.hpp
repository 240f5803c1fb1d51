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
#include <span>
#include <string>
#include <vector>

#include "mbqc/graph.hpp"

namespace mbqc {

/// Probability that the single-site filter {diag(lambda,1), diag(sqrt(1-lambda^2),0)}
/// reports a defect on a deformed cluster site: (1 - lambda^2) / (1 + lambda^2).
double defect_probability(double lambda);

/// Exact joint distribution of the per-site filter outcomes on the deformed
/// graph state of g. Index bit i set means a defect at site i.
struct FilterDistribution {
    int n = 0;
    std::vector<double> probability;  // 2^n entries, indexed by defect mask

    double marginal_defect(int site) const;
    /// Largest absolute deviation of any joint probability from the product
    /// of its site marginals (reported, not asserted: quantifies how far
    /// defects are from independent).
    double max_product_deviation() const;
};

FilterDistribution filter_distribution_exact(const Graph& g, double lambda, int cap = 14);

/// One k x k site-percolation sample: defects i.i.d. with probability p_def,
/// crossing = left-to-right 4-connected path of non-defect sites.
struct TrialStats {
    bool crossing = false;
    int largest_component = 0;
};

TrialStats site_percolation_trial(int k, double p_def, std::uint64_t seed, std::uint64_t trial);

struct PercResult {
    int k = 0;
    double lambda = 0.0;
    double p_def = 0.0;
    int trials = 0;
    double crossing_freq = 0.0;
    double largest_frac = 0.0;
    std::uint64_t seed = 0;

    static std::string csv_header();
    std::string csv_row() const;
};

/// Monte Carlo scan over lattice sizes and deformation strengths. Trials use
/// one RNG stream per trial index, so results are reproducible bit-for-bit
/// for a fixed seed, for any thread count, and are seed-paired across lambda.
std::vector<PercResult> percolation_scan(std::span<const int> ks, std::span<const double> lambdas,
                                         int trials, std::uint64_t seed, int threads = 1);

/// Bisection over the site-occupation probability for crossing frequency 1/2.
/// Calibration aid: the large-k limit is the literature square-lattice site
/// threshold ~0.5927 (an external constant, not a value this toolkit derives).
double estimate_occupation_threshold(int k, int trials, std::uint64_t seed, int threads = 1);

}  // namespace mbqc
