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

#include "mbqc/localizable.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mbqc/errors.hpp"

namespace mbqc {

const char* pauli_basis_name(PauliBasis b) {
    switch (b) {
        case PauliBasis::X: return "X";
        case PauliBasis::Y: return "Y";
        case PauliBasis::Z: return "Z";
    }
    return "?";
}

double concurrence_pure(cplx a00, cplx a01, cplx a10, cplx a11) {
    const double norm =
        std::norm(a00) + std::norm(a01) + std::norm(a10) + std::norm(a11);
    if (std::abs(norm - 1.0) > 1e-9)
        throw input_error("concurrence_pure: state is not normalized");
    return 2.0 * std::abs(a00 * a11 - a01 * a10);
}

namespace {

// basis-change unitaries mapping the Pauli eigenbasis onto the computational
// basis, so every strategy reduces to computational readout
Mat2 rotation_for(PauliBasis b) {
    const double r = 1.0 / std::sqrt(2.0);
    switch (b) {
        case PauliBasis::Z:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
        case PauliBasis::X:  // H
            return {cplx{r, 0}, cplx{r, 0}, cplx{r, 0}, cplx{-r, 0}};
        case PauliBasis::Y:  // H S^dag
            return {cplx{r, 0}, cplx{0, -r}, cplx{r, 0}, cplx{0, r}};
    }
    return {};
}

/// Outcome-probability-weighted average concurrence of the residual (a, b)
/// state for one strategy. With unnormalized branch amplitudes v the scaled
/// determinant identity Sum_s p_s C_s = Sum_s 2|v00 v11 - v01 v10| applies,
/// so a single pass over the rotated state suffices.
double strategy_value(const StateVector& rotated, int n, int a, int b) {
    const int others = n - 2;
    const std::size_t groups = std::size_t{1} << others;
    std::vector<std::array<cplx, 4>> residual(groups, {cplx{}, cplx{}, cplx{}, cplx{}});

    const std::size_t bit_a = std::size_t{1} << a;
    const std::size_t bit_b = std::size_t{1} << b;
    for (std::size_t i = 0; i < rotated.dim(); ++i) {
        const std::size_t pos = ((i & bit_a) ? 2u : 0u) | ((i & bit_b) ? 1u : 0u);
        std::size_t group = 0;
        std::size_t out_bit = 0;
        for (int q = 0; q < n; ++q) {
            if (q == a || q == b) continue;
            if (i & (std::size_t{1} << q)) group |= std::size_t{1} << out_bit;
            ++out_bit;
        }
        residual[group][pos] += rotated[i];
    }

    double total = 0.0;
    for (const auto& amps : residual)
        total += 2.0 * std::abs(amps[0] * amps[3] - amps[1] * amps[2]);
    return total;
}

}  // namespace

LePairResult pauli_le_pair(const Graph& g, int a, int b, int threads, int cap) {
    const int n = g.n();
    if (a == b || a < 0 || b < 0 || a >= n || b >= n)
        throw input_error("pauli_le_pair: need two distinct vertices in range");
    if (n > cap)
        throw resource_error("pauli_le_pair: strategy-enumeration cap of " + std::to_string(cap) +
                             " qubits exceeded (requested " + std::to_string(n) + ")");

    LePairResult result;
    result.a = a;
    result.b = b;

    std::vector<int> others;
    for (int q = 0; q < n; ++q)
        if (q != a && q != b) others.push_back(q);

    const StateVector psi = graph_state(g, cap);
    if (others.empty()) {
        double v = strategy_value(psi, n, a, b);
        result.value = v;
        if (v >= kUnitLeThreshold) result.witness = std::vector<std::pair<int, PauliBasis>>{};
        return result;
    }

    std::uint64_t total = 1;
    for (std::size_t i = 0; i < others.size(); ++i) total *= 3;

    auto bases_of = [&](std::uint64_t strategy) {
        // first listed qubit is the most significant base-3 digit
        std::vector<PauliBasis> bases(others.size());
        for (std::size_t i = others.size(); i-- > 0;) {
            bases[i] = static_cast<PauliBasis>(strategy % 3);
            strategy /= 3;
        }
        return bases;
    };

    auto evaluate = [&](std::uint64_t strategy) {
        StateVector rotated = psi;
        const auto bases = bases_of(strategy);
        for (std::size_t i = 0; i < others.size(); ++i)
            if (bases[i] != PauliBasis::Z)
                rotated.apply_single_qubit(others[i], rotation_for(bases[i]));
        return strategy_value(rotated, n, a, b);
    };

    double best = -1.0;
    std::uint64_t best_idx = 0;

    // strategies are scanned in blocks so the unit-value early exit stays
    // deterministic for any thread count
    const std::uint64_t block = 1024;
    for (std::uint64_t start = 0; start < total; start += block) {
        const std::uint64_t end = std::min(total, start + block);
        double block_best = -1.0;
        std::uint64_t block_idx = 0;
#pragma omp parallel num_threads(threads) if (threads > 1)
        {
            double local_best = -1.0;
            std::uint64_t local_idx = 0;
#pragma omp for schedule(static)
            for (std::int64_t s = static_cast<std::int64_t>(start); s < static_cast<std::int64_t>(end); ++s) {
                const double v = evaluate(static_cast<std::uint64_t>(s));
                if (v > local_best ||
                    (v == local_best && static_cast<std::uint64_t>(s) < local_idx)) {
                    local_best = v;
                    local_idx = static_cast<std::uint64_t>(s);
                }
            }
#pragma omp critical
            {
                if (local_best > block_best || (local_best == block_best && local_idx < block_idx)) {
                    block_best = local_best;
                    block_idx = local_idx;
                }
            }
        }
        if (block_best > best || (block_best == best && block_idx < best_idx)) {
            best = block_best;
            best_idx = block_idx;
        }
        if (best >= kUnitLeThreshold) break;  // concurrence cannot exceed 1
    }

    result.value = best;
    if (best >= kUnitLeThreshold) {
        std::vector<std::pair<int, PauliBasis>> witness;
        const auto bases = bases_of(best_idx);
        for (std::size_t i = 0; i < others.size(); ++i) witness.emplace_back(others[i], bases[i]);
        result.witness = std::move(witness);
    }
    return result;
}

NleResult n_le(const Graph& g, int threads, int cap) {
    const int n = g.n();
    if (n > cap)
        throw resource_error("n_le: strategy-enumeration cap of " + std::to_string(cap) +
                             " qubits exceeded (requested " + std::to_string(n) + ")");
    NleResult result;
    if (n == 0) return result;
    if (n == 1) {
        result.subset = {0};
        result.size = 1;
        return result;
    }

    std::vector<std::uint64_t> unit_mask(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const LePairResult r = pauli_le_pair(g, a, b, threads, cap);
            if (r.value >= kUnitLeThreshold) {
                unit_mask[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
                unit_mask[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
            }
        }

    // exact maximum clique by subset scan; smallest mask wins ties
    std::uint64_t best_mask = 1;
    int best_size = 1;
    const std::uint64_t limit = std::uint64_t{1} << n;
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
        const int size = std::popcount(mask);
        if (size <= best_size) continue;
        bool clique = true;
        for (std::uint64_t rest = mask; rest && clique; rest &= rest - 1) {
            const int v = std::countr_zero(rest);
            const std::uint64_t need = mask & ~(std::uint64_t{1} << v);
            clique = (unit_mask[static_cast<std::size_t>(v)] & need) == need;
        }
        if (clique) {
            best_mask = mask;
            best_size = size;
        }
    }

    for (int v = 0; v < n; ++v)
        if (best_mask & (std::uint64_t{1} << v)) result.subset.push_back(v);
    result.size = best_size;
    return result;
}

}  // namespace mbqc
