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
#include <random>

#include "mbqc/errors.hpp"
#include "mbqc/statevec.hpp"
#include "mbqc/width.hpp"
#include "test_util.hpp"

using namespace mbqc;
using Edges = std::vector<std::pair<int, int>>;

namespace {

/// Deviation of psi from being a +1 eigenstate of X_a (x) Z_N(a).
double stabilizer_deviation(const Graph& g, const StateVector& psi, int a) {
    StateVector phi = psi;
    const Mat2 x = {cplx{0, 0}, cplx{1, 0}, cplx{1, 0}, cplx{0, 0}};
    const Mat2 z = {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
    phi.apply_single_qubit(a, x);
    for (int b : g.neighbors(a)) phi.apply_single_qubit(b, z);
    double dev = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i) dev = std::max(dev, std::abs(phi[i] - psi[i]));
    return dev;
}

}  // namespace

TEST_CASE("graph_state on tiny graphs") {
    const StateVector empty2 = graph_state(make_graph(2, Edges{}));
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(empty2[i] - cplx{0.5, 0}) < 1e-15);

    const StateVector k2 = graph_state(make_graph(2, Edges{{0, 1}}));
    CHECK(std::abs(k2[0] - cplx{0.5, 0}) < 1e-15);
    CHECK(std::abs(k2[1] - cplx{0.5, 0}) < 1e-15);
    CHECK(std::abs(k2[2] - cplx{0.5, 0}) < 1e-15);
    CHECK(std::abs(k2[3] - cplx{-0.5, 0}) < 1e-15);

    const Graph p3 = make_graph(3, Edges{{0, 1}, {1, 2}});
    const StateVector psi = graph_state(p3);
    for (int a = 0; a < 3; ++a) CHECK(stabilizer_deviation(p3, psi, a) < 1e-12);
}

TEST_CASE("stabilizer fixed point on random graphs") {
    std::mt19937_64 eng(11);
    for (int iter = 0; iter < 30; ++iter) {
        const int n = 2 + static_cast<int>(eng() % 9);
        const Graph g = mbqc::testing::random_graph(eng, n);
        const StateVector psi = graph_state(g);
        for (int a = 0; a < n; ++a) CHECK(stabilizer_deviation(g, psi, a) < 1e-12);
    }
}

TEST_CASE("graph_state cap") {
    CHECK_THROWS_AS(graph_state(lattice({LatticeKind::Grid, {4, 4}}), 14), resource_error);
}

TEST_CASE("deformed_state") {
    const Graph p3 = make_graph(3, Edges{{0, 1}, {1, 2}});
    CHECK(fidelity(deformed_state(p3, 1.0), graph_state(p3)) == doctest::Approx(1.0).epsilon(1e-12));

    // single-site reduced state of the deformed cluster has eigenvalues
    // (1, lambda^2) / (1 + lambda^2); check via the entropy of one site
    const double lambda = 0.5;
    const StateVector psi = deformed_state(p3, lambda);
    const double p = 1.0 / (1.0 + lambda * lambda);
    const double expect = -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
    for (int q = 0; q < 3; ++q)
        CHECK(entanglement_entropy(psi, std::uint64_t{1} << q) ==
              doctest::Approx(expect).epsilon(1e-9));

    CHECK_THROWS_AS(deformed_state(p3, 0.0), input_error);
    CHECK_THROWS_AS(deformed_state(p3, 1.5), input_error);
}

TEST_CASE("measure: projective and POVM branches") {
    StateVector plus(1);
    plus[0] = plus[1] = 1.0 / std::sqrt(2.0);

    const Mat2 p0 = pauli_projector('Z', +1), p1 = pauli_projector('Z', -1);
    const std::vector<Mat2> zops = {p0, p1};
    const auto branches = measure(plus, 0, zops);
    CHECK(branches[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(branches[1].probability == doctest::Approx(0.5).epsilon(1e-12));

    // filter POVM on a deformed single-site cluster: defect branch (1-l^2)/(1+l^2)
    const double l = 0.5;
    const StateVector site = deformed_state(make_graph(1, Edges{}), l);
    const std::vector<Mat2> povm = {
        Mat2{cplx{l, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}},
        Mat2{cplx{std::sqrt(1 - l * l), 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0}}};
    const auto filt = measure(site, 0, povm);
    CHECK(filt[1].probability == doctest::Approx((1 - l * l) / (1 + l * l)).epsilon(1e-12));
    CHECK(filt[0].probability + filt[1].probability == doctest::Approx(1.0).epsilon(1e-10));

    // Y measurement on a K2 graph state: both outcomes equally likely
    const StateVector k2 = graph_state(make_graph(2, Edges{{0, 1}}));
    const std::vector<Mat2> yops = {pauli_projector('Y', +1), pauli_projector('Y', -1)};
    const auto ybr = measure(k2, 0, yops);
    CHECK(ybr[0].probability == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(ybr[1].probability == doctest::Approx(0.5).epsilon(1e-12));

    // incomplete operator set rejected
    const std::vector<Mat2> bad = {p0};
    CHECK_THROWS_AS((void)measure(plus, 0, bad), input_error);
}

TEST_CASE("entanglement entropy basics") {
    const StateVector prod = graph_state(make_graph(3, Edges{}));
    CHECK(entanglement_entropy(prod, 0b001) == doctest::Approx(0.0).epsilon(1e-12));

    const StateVector bell = graph_state(make_graph(2, Edges{{0, 1}}));
    CHECK(entanglement_entropy(bell, 0b01) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS((void)entanglement_entropy(bell, 0b00), input_error);
    CHECK_THROWS_AS((void)entanglement_entropy(bell, 0b11), input_error);
}

TEST_CASE("entropy equals cut rank across every bipartition of grid(2,2)") {
    const Graph g = lattice({LatticeKind::Grid, {2, 2}});
    const StateVector psi = graph_state(g);
    const CutRankFn cr(g);
    for (std::uint64_t mask = 1; mask < 15; ++mask)
        CHECK(entanglement_entropy(psi, mask) == doctest::Approx(cr(mask)).epsilon(1e-9));
}

TEST_CASE("entropy symmetry and local-unitary invariance") {
    std::mt19937_64 eng(23);
    const Graph g = mbqc::testing::random_connected_graph(eng, 5);
    const StateVector psi = graph_state(g);
    const std::uint64_t full = 31;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
        const double e = entanglement_entropy(psi, mask);
        CHECK(e >= -1e-12);
        CHECK(e == doctest::Approx(entanglement_entropy(psi, full & ~mask)).epsilon(1e-9));
    }
    // random single-qubit rotations leave every cut entropy unchanged
    StateVector rotated = psi;
    for (int q = 0; q < 5; ++q) {
        const double a = static_cast<double>(eng() % 1000) / 500.0;
        const double b = static_cast<double>(eng() % 1000) / 500.0;
        const Mat2 u = {cplx{std::cos(a), 0}, cplx{std::sin(a) * std::cos(b), std::sin(a) * std::sin(b)},
                        cplx{-std::sin(a) * std::cos(b), std::sin(a) * std::sin(b)}, cplx{std::cos(a), 0}};
        rotated.apply_single_qubit(q, u);
    }
    for (std::uint64_t mask : {1ull, 5ull, 11ull})
        CHECK(entanglement_entropy(rotated, mask) ==
              doctest::Approx(entanglement_entropy(psi, mask)).epsilon(1e-9));
}

TEST_CASE("fidelity") {
    const StateVector a = graph_state(make_graph(2, Edges{{0, 1}}));
    CHECK(fidelity(a, a) == doctest::Approx(1.0).epsilon(1e-12));

    StateVector zero(1), one(1), plus(1);
    zero[0] = 1;
    one[1] = 1;
    plus[0] = plus[1] = 1.0 / std::sqrt(2.0);
    CHECK(fidelity(zero, one) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fidelity(plus, zero) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK_THROWS_AS((void)fidelity(a, zero), input_error);
}

TEST_CASE("verify_rule on the named cases") {
    const Graph p3 = make_graph(3, Edges{{0, 1}, {1, 2}});
    CHECK(verify_rule(p3, 1, Basis::Z, +1).pass);
    CHECK(verify_rule(p3, 1, Basis::Y, +1).pass);
    CHECK(verify_rule(p3, 1, Basis::Y, -1).pass);

    const Graph g23 = lattice({LatticeKind::Grid, {2, 3}});
    for (int v = 0; v < g23.n(); ++v)
        for (int out : {+1, -1}) CHECK(verify_rule(g23, v, Basis::Y, out).pass);
}

TEST_CASE("verify_pattern replays multi-step rewrites") {
    const Graph p5 = lattice({LatticeKind::Path, {5}});
    MeasurementPattern p;
    p.steps = {{1, Basis::Y, +1}, {3, Basis::Y, -1}};
    CHECK(verify_pattern(p5, p) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unitarity of the correction matrices") {
    for (CorrectionOp op : {CorrectionOp::Identity, CorrectionOp::Z, CorrectionOp::SqrtPlusIZ,
                            CorrectionOp::SqrtMinusIZ}) {
        const Mat2 m = correction_matrix(op);
        // columns orthonormal
        CHECK(std::abs(std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2] - cplx{1, 0}) < 1e-12);
        CHECK(std::abs(std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3] - cplx{1, 0}) < 1e-12);
        CHECK(std::abs(std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3]) < 1e-12);
    }
}
