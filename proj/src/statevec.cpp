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

#include "mbqc/statevec.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mbqc/errors.hpp"

namespace mbqc {

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::normalize() {
    const double n = std::sqrt(norm_sq());
    if (n == 0.0) throw input_error("statevector: cannot normalize the zero vector");
    for (cplx& a : amps_) a /= n;
}

void StateVector::apply_single_qubit(int qubit, const Mat2& op) {
    if (qubit < 0 || qubit >= m_) throw input_error("apply_single_qubit: qubit out of range");
    const std::size_t bit = std::size_t{1} << qubit;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if (i & bit) continue;
        const cplx a0 = amps_[i];
        const cplx a1 = amps_[i | bit];
        amps_[i] = op[0] * a0 + op[1] * a1;
        amps_[i | bit] = op[2] * a0 + op[3] * a1;
    }
}

void StateVector::apply_cz(int a, int b) {
    if (a == b || a < 0 || b < 0 || a >= m_ || b >= m_)
        throw input_error("apply_cz: bad qubit pair");
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i)
        if ((i & mask) == mask) amps_[i] = -amps_[i];
}

StateVector graph_state(const Graph& g, int cap) {
    if (g.n() > cap)
        throw resource_error("graph_state: state-vector cap of " + std::to_string(cap) +
                             " qubits exceeded (requested " + std::to_string(g.n()) + ")");
    StateVector psi(g.n());
    const double amp = 1.0 / std::sqrt(double(psi.dim()));
    for (std::size_t i = 0; i < psi.dim(); ++i) psi[i] = amp;
    for (auto [u, v] : g.edges()) psi.apply_cz(u, v);
    return psi;
}

StateVector deformed_state(const Graph& g, double lambda, int cap) {
    if (!(lambda > 0.0 && lambda <= 1.0))
        throw input_error("deformed_state: lambda must lie in (0, 1]");
    StateVector psi = graph_state(g, cap);
    const Mat2 deform = {cplx{1.0, 0.0}, cplx{0.0, 0.0}, cplx{0.0, 0.0}, cplx{lambda, 0.0}};
    for (int q = 0; q < g.n(); ++q) psi.apply_single_qubit(q, deform);
    psi.normalize();
    return psi;
}

std::vector<MeasurementBranch> measure(const StateVector& psi, int qubit,
                                       std::span<const Mat2> operators) {
    if (qubit < 0 || qubit >= psi.qubits()) throw input_error("measure: qubit out of range");
    // completeness: sum M^dag M = I
    Mat2 sum = {cplx{0, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0, 0}};
    for (const Mat2& m : operators) {
        sum[0] += std::conj(m[0]) * m[0] + std::conj(m[2]) * m[2];
        sum[1] += std::conj(m[0]) * m[1] + std::conj(m[2]) * m[3];
        sum[2] += std::conj(m[1]) * m[0] + std::conj(m[3]) * m[2];
        sum[3] += std::conj(m[1]) * m[1] + std::conj(m[3]) * m[3];
    }
    const double dev = std::abs(sum[0] - cplx{1, 0}) + std::abs(sum[1]) + std::abs(sum[2]) +
                       std::abs(sum[3] - cplx{1, 0});
    if (dev > 1e-10) throw input_error("measure: operator set is not complete");

    std::vector<MeasurementBranch> out;
    for (const Mat2& m : operators) {
        StateVector branch = psi;
        branch.apply_single_qubit(qubit, m);
        MeasurementBranch b;
        b.probability = branch.norm_sq();
        if (b.probability > 1e-300) branch.normalize();
        b.state = std::move(branch);
        out.push_back(std::move(b));
    }
    return out;
}

double entanglement_entropy(const StateVector& psi, std::uint64_t subset_mask) {
    const int m = psi.qubits();
    const std::uint64_t full = (m == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << m) - 1);
    if (subset_mask == 0 || (subset_mask & ~full) != 0 || subset_mask == full)
        throw input_error("entanglement_entropy: subset must be proper and nonempty");

    // work with the smaller side; entropy is symmetric under complement
    std::uint64_t amask = subset_mask;
    if (std::popcount(amask) > m / 2) amask = full & ~amask;
    const int ka = std::popcount(amask);
    const int kb = m - ka;

    std::vector<int> abits, bbits;
    for (int q = 0; q < m; ++q)
        ((amask >> q) & 1 ? abits : bbits).push_back(q);

    // reduced density matrix on A via the Gram matrix of the reshaped state
    const std::size_t da = std::size_t{1} << ka;
    const std::size_t db = std::size_t{1} << kb;
    Eigen::MatrixXcd mat(static_cast<Eigen::Index>(da), static_cast<Eigen::Index>(db));
    for (std::size_t ia = 0; ia < da; ++ia)
        for (std::size_t ib = 0; ib < db; ++ib) {
            std::size_t idx = 0;
            for (int k = 0; k < ka; ++k)
                if ((ia >> k) & 1) idx |= std::size_t{1} << abits[static_cast<std::size_t>(k)];
            for (int k = 0; k < kb; ++k)
                if ((ib >> k) & 1) idx |= std::size_t{1} << bbits[static_cast<std::size_t>(k)];
            mat(static_cast<Eigen::Index>(ia), static_cast<Eigen::Index>(ib)) = psi[idx];
        }

    Eigen::MatrixXcd rho = mat * mat.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double p = solver.eigenvalues()(i);
        if (p > 1e-12) entropy -= p * std::log2(p);
    }
    return entropy;
}

double entanglement_entropy(const StateVector& psi, std::span<const int> subset) {
    std::uint64_t mask = 0;
    for (int q : subset) {
        if (q < 0 || q >= psi.qubits())
            throw input_error("entanglement_entropy: qubit out of range");
        mask |= std::uint64_t{1} << q;
    }
    return entanglement_entropy(psi, mask);
}

double fidelity(const StateVector& a, const StateVector& b) {
    if (a.qubits() != b.qubits()) throw input_error("fidelity: qubit count mismatch");
    cplx ip{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) ip += std::conj(a[i]) * b[i];
    return std::abs(ip);
}

Mat2 pauli_projector(char pauli, int outcome) {
    if (outcome != 1 && outcome != -1) throw input_error("pauli_projector: outcome must be +-1");
    const double s = outcome;
    switch (pauli) {
        case 'X':
            return {cplx{0.5, 0}, cplx{0.5 * s, 0}, cplx{0.5 * s, 0}, cplx{0.5, 0}};
        case 'Y':
            return {cplx{0.5, 0}, cplx{0, -0.5 * s}, cplx{0, 0.5 * s}, cplx{0.5, 0}};
        case 'Z':
            return {cplx{0.5 + 0.5 * s, 0}, cplx{0, 0}, cplx{0, 0}, cplx{0.5 - 0.5 * s, 0}};
        default:
            throw input_error("pauli_projector: pauli must be X, Y or Z");
    }
}

Mat2 correction_matrix(CorrectionOp op) {
    const double r = std::numbers::sqrt2 / 2.0;
    switch (op) {
        case CorrectionOp::Identity:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{1, 0}};
        case CorrectionOp::Z:
            return {cplx{1, 0}, cplx{0, 0}, cplx{0, 0}, cplx{-1, 0}};
        case CorrectionOp::SqrtMinusIZ:
            // diag(e^{-i pi/4}, e^{+i pi/4})
            return {cplx{r, -r}, cplx{0, 0}, cplx{0, 0}, cplx{r, r}};
        case CorrectionOp::SqrtPlusIZ:
            return {cplx{r, r}, cplx{0, 0}, cplx{0, 0}, cplx{r, -r}};
    }
    throw input_error("correction_matrix: unknown op");
}

namespace {

Mat2 adjoint(const Mat2& m) {
    return {std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])};
}

/// Removes qubit `a`, which must be unentangled, by slicing on the branch of
/// larger weight. The result keeps the remaining qubits in order.
StateVector factor_out_qubit(const StateVector& psi, int a) {
    const std::size_t bit = std::size_t{1} << a;
    double w0 = 0.0, w1 = 0.0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
        ((i & bit) ? w1 : w0) += std::norm(psi[i]);
    const bool take1 = w1 > w0;

    StateVector out(psi.qubits() - 1);
    const std::size_t low = bit - 1;
    for (std::size_t i = 0; i < psi.dim(); ++i) {
        if (((i & bit) != 0) != take1) continue;
        const std::size_t j = (i & low) | ((i >> 1) & ~low);
        out[j] = psi[i];
    }
    out.normalize();
    return out;
}

}  // namespace

RuleReport verify_rule(const Graph& g, int a, Basis basis, int outcome, double tol, int cap) {
    StateVector psi = graph_state(g, cap);
    psi.apply_single_qubit(a, pauli_projector(basis == Basis::Y ? 'Y' : 'Z', outcome));

    RuleReport report;
    report.outcome_probability = psi.norm_sq();
    if (report.outcome_probability < 1e-12) return report;  // branch does not occur
    psi.normalize();

    MeasureResult predicted = measure_pauli(g, a, basis, outcome);
    StateVector rest = factor_out_qubit(psi, a);
    for (auto [v, op] : predicted.record.corrections) {
        const int nv = predicted.old_to_new[static_cast<std::size_t>(v)];
        rest.apply_single_qubit(nv, adjoint(correction_matrix(op)));
    }

    report.fidelity = fidelity(rest, graph_state(predicted.graph, cap));
    report.pass = std::abs(report.fidelity - 1.0) <= tol;
    return report;
}

double verify_pattern(const Graph& g, const MeasurementPattern& pattern, int cap) {
    pattern.validate(g.n());
    Graph cur = g;
    std::vector<int> orig_to_cur(static_cast<std::size_t>(g.n()));
    for (int v = 0; v < g.n(); ++v) orig_to_cur[static_cast<std::size_t>(v)] = v;

    double min_fid = 1.0;
    for (const PatternStep& step : pattern.steps) {
        const int cur_v = orig_to_cur[static_cast<std::size_t>(step.v)];
        if (cur_v < 0) throw input_error("verify_pattern: measured vertex no longer present");
        const RuleReport rep = verify_rule(cur, cur_v, step.basis, step.outcome, 1e-9, cap);
        min_fid = std::min(min_fid, rep.fidelity);

        MeasureResult res = measure_pauli(cur, cur_v, step.basis, step.outcome);
        for (int v = 0; v < g.n(); ++v) {
            int& m = orig_to_cur[static_cast<std::size_t>(v)];
            if (m >= 0) m = res.old_to_new[static_cast<std::size_t>(m)];
        }
        cur = std::move(res.graph);
    }
    return min_fid;
}

}  // namespace mbqc
