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

#include "mbqc/percolation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "mbqc/errors.hpp"
#include "mbqc/rng.hpp"
#include "mbqc/statevec.hpp"

namespace mbqc {

double defect_probability(double lambda) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw input_error("defect_probability: lambda must lie in (0, 1]");
    return (1.0 - lambda * lambda) / (1.0 + lambda * lambda);
}

double FilterDistribution::marginal_defect(int site) const {
    if (site < 0 || site >= n) throw input_error("marginal_defect: site out of range");
    double p = 0.0;
    for (std::size_t mask = 0; mask < probability.size(); ++mask)
        if (mask & (std::size_t{1} << site)) p += probability[mask];
    return p;
}

double FilterDistribution::max_product_deviation() const {
    std::vector<double> marg(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) marg[static_cast<std::size_t>(s)] = marginal_defect(s);
    double dev = 0.0;
    for (std::size_t mask = 0; mask < probability.size(); ++mask) {
        double prod = 1.0;
        for (int s = 0; s < n; ++s)
            prod *= (mask & (std::size_t{1} << s)) ? marg[static_cast<std::size_t>(s)]
                                                   : 1.0 - marg[static_cast<std::size_t>(s)];
        dev = std::max(dev, std::abs(probability[mask] - prod));
    }
    return dev;
}

FilterDistribution filter_distribution_exact(const Graph& g, double lambda, int cap) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw input_error("filter_distribution_exact: lambda must lie in (0, 1]");
    const StateVector psi = deformed_state(g, lambda, cap);
    const int n = g.n();

    // Both filter operators are diagonal: success diag(lambda, 1) keeps each
    // component, defect diag(sqrt(1-lambda^2), 0) keeps only |0>. The joint
    // probability of a defect mask is therefore a weighted sum of |amp|^2.
    const double s0 = lambda, s1 = 1.0;                  // success diag entries
    const double d0 = std::sqrt(1.0 - lambda * lambda);  // defect diag entries (d1 = 0)

    FilterDistribution dist;
    dist.n = n;
    dist.probability.assign(std::size_t{1} << n, 0.0);
    for (std::size_t defects = 0; defects < dist.probability.size(); ++defects) {
        double total = 0.0;
        for (std::size_t x = 0; x < psi.dim(); ++x) {
            double weight = 1.0;
            for (int q = 0; q < n; ++q) {
                const bool one = x & (std::size_t{1} << q);
                if (defects & (std::size_t{1} << q))
                    weight *= one ? 0.0 : d0 * d0;
                else
                    weight *= one ? s1 * s1 : s0 * s0;
                if (weight == 0.0) break;
            }
            total += weight * std::norm(psi[x]);
        }
        dist.probability[defects] = total;
    }
    return dist;
}

TrialStats site_percolation_trial(int k, double p_def, std::uint64_t seed, std::uint64_t trial) {
    if (k < 1) throw input_error("site_percolation_trial: k must be positive");
    std::mt19937_64 engine = stream_engine(seed, trial);

    const int sites = k * k;
    std::vector<char> open(static_cast<std::size_t>(sites));
    for (int i = 0; i < sites; ++i)
        open[static_cast<std::size_t>(i)] = uniform01(engine) >= p_def ? 1 : 0;

    // flood fill over open sites; crossing = component touching both the
    // leftmost and rightmost column
    TrialStats stats;
    std::vector<int> comp(static_cast<std::size_t>(sites), -1);
    std::vector<int> stack;
    int ncomp = 0;
    for (int start = 0; start < sites; ++start) {
        if (!open[static_cast<std::size_t>(start)] || comp[static_cast<std::size_t>(start)] >= 0)
            continue;
        const int id = ncomp++;
        int size = 0;
        bool left = false, right = false;
        stack.push_back(start);
        comp[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            const int v = stack.back();
            stack.pop_back();
            ++size;
            const int r = v / k, c = v % k;
            if (c == 0) left = true;
            if (c == k - 1) right = true;
            const int nbr[4] = {c > 0 ? v - 1 : -1, c < k - 1 ? v + 1 : -1,
                                r > 0 ? v - k : -1, r < k - 1 ? v + k : -1};
            for (int u : nbr) {
                if (u < 0 || !open[static_cast<std::size_t>(u)] ||
                    comp[static_cast<std::size_t>(u)] >= 0)
                    continue;
                comp[static_cast<std::size_t>(u)] = id;
                stack.push_back(u);
            }
        }
        stats.largest_component = std::max(stats.largest_component, size);
        if (left && right) stats.crossing = true;
    }
    return stats;
}

std::string PercResult::csv_header() { return "k,lambda,p_def,trials,crossing_freq,largest_frac,seed"; }

std::string PercResult::csv_row() const {
    std::ostringstream os;
    os.precision(10);
    os << k << ',' << lambda << ',' << p_def << ',' << trials << ',' << crossing_freq << ','
       << largest_frac << ',' << seed;
    return os.str();
}

std::vector<PercResult> percolation_scan(std::span<const int> ks, std::span<const double> lambdas,
                                         int trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw input_error("percolation_scan: trials must be >= 1");
    std::vector<PercResult> out;
    for (int k : ks) {
        for (double lambda : lambdas) {
            const double p_def = defect_probability(lambda);
            std::int64_t crossings = 0;
            double largest_sum = 0.0;
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1) \
    reduction(+ : crossings, largest_sum)
            for (std::int64_t t = 0; t < trials; ++t) {
                const TrialStats s =
                    site_percolation_trial(k, p_def, seed, static_cast<std::uint64_t>(t));
                crossings += s.crossing ? 1 : 0;
                largest_sum += static_cast<double>(s.largest_component) / double(k * k);
            }
            PercResult r;
            r.k = k;
            r.lambda = lambda;
            r.p_def = p_def;
            r.trials = trials;
            r.crossing_freq = static_cast<double>(crossings) / double(trials);
            r.largest_frac = largest_sum / double(trials);
            r.seed = seed;
            out.push_back(r);
        }
    }
    return out;
}

namespace {

double crossing_freq_at_occupation(int k, double occupation, int trials, std::uint64_t seed,
                                   int threads) {
    std::int64_t crossings = 0;
#pragma omp parallel for schedule(static) num_threads(threads) if (threads > 1) \
    reduction(+ : crossings)
    for (std::int64_t t = 0; t < trials; ++t) {
        const TrialStats s =
            site_percolation_trial(k, 1.0 - occupation, seed, static_cast<std::uint64_t>(t));
        crossings += s.crossing ? 1 : 0;
    }
    return static_cast<double>(crossings) / double(trials);
}

}  // namespace

double estimate_occupation_threshold(int k, int trials, std::uint64_t seed, int threads) {
    if (k < 16) throw input_error("estimate_occupation_threshold: requires k >= 16");
    if (trials < 1) throw input_error("estimate_occupation_threshold: trials must be >= 1");

    // Trials reuse the same streams at every probed occupation, so each
    // sample's crossing indicator is monotone in the occupation and the
    // frequency curve is a proper staircase for the bisection.
    double lo = 0.0, hi = 1.0;
    for (int iter = 0; iter < 20 && hi - lo > 5e-4; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double freq = crossing_freq_at_occupation(k, mid, trials, seed, threads);
        if (freq < 0.5)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace mbqc
