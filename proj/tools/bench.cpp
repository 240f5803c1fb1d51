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

// Times the OpenMP kernels against their serial runs and the serial
// reference solvers. Results are checked for equality while timing, so a
// speedup obtained by diverging from the reference would fail loudly.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include <omp.h>

#include "mbqc/graph.hpp"
#include "mbqc/localizable.hpp"
#include "mbqc/percolation.hpp"
#include "mbqc/width.hpp"

using namespace mbqc;

namespace {

double seconds(const std::function<void()>& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    const auto stop = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(stop - start).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3fs   omp(%d) %8.3fs   speedup %.2fx\n", name, serial,
                omp_get_max_threads(), parallel, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    const int threads = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    std::printf("kernel benchmark, %d thread(s)\n", threads);

    {
        const Graph g = lattice({LatticeKind::Grid, {4, 4}});
        WidthOptions serial{1, 16, 9}, parallel{threads, 16, 9};
        double v1 = 0, v2 = 0;
        const double ts = seconds([&] { v1 = rank_width(g, WidthMethod::SubsetDP, serial).value; });
        const double tp = seconds([&] { v2 = rank_width(g, WidthMethod::SubsetDP, parallel).value; });
        if (v1 != v2) {
            std::fprintf(stderr, "rank-width mismatch: %g vs %g\n", v1, v2);
            return 1;
        }
        report("rank-width subset DP, grid(4,4)", ts, tp);

        const Graph small = lattice({LatticeKind::Grid, {3, 3}});
        double vr = 0, vd = 0;
        const double tr = seconds([&] { vr = rank_width(small, WidthMethod::Enumerate).value; });
        const double td = seconds([&] { vd = rank_width(small, WidthMethod::SubsetDP, parallel).value; });
        if (vr != vd) {
            std::fprintf(stderr, "reference mismatch: %g vs %g\n", vr, vd);
            return 1;
        }
        report("grid(3,3): enumeration reference", tr, td);
    }

    {
        const std::vector<int> ks = {64};
        const std::vector<double> lambdas = {0.98, 0.95, 0.9, 0.85, 0.8};
        std::vector<PercResult> a, b;
        const double ts = seconds([&] { a = percolation_scan(ks, lambdas, 400, 7, 1); });
        const double tp = seconds([&] { b = percolation_scan(ks, lambdas, 400, 7, threads); });
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].csv_row() != b[i].csv_row()) {
                std::fprintf(stderr, "percolation mismatch at row %zu\n", i);
                return 1;
            }
        report("percolation scan, k=64 x 5 points", ts, tp);
    }

    {
        const Graph g = lattice({LatticeKind::Grid, {3, 3}});
        LePairResult a, b;
        const double ts = seconds([&] { a = pauli_le_pair(g, 0, 8, 1); });
        const double tp = seconds([&] { b = pauli_le_pair(g, 0, 8, threads); });
        if (a.value != b.value) {
            std::fprintf(stderr, "LE mismatch: %g vs %g\n", a.value, b.value);
            return 1;
        }
        report("Pauli LE, grid(3,3) corner pair", ts, tp);
    }

    return 0;
}
