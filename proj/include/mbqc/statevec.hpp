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

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix: {m00, m01, m10, m11}.
using Mat2 = std::array<cplx, 4>;

inline constexpr int kDefaultQubitCap = 14;

/// Dense amplitude vector over m qubits. Qubit 0 is the lowest-order bit of
/// the amplitude index. Deliberately formalism-free: this is the independent
/// ground truth the graph rewrite rules are checked against.
class StateVector {
  public:
    StateVector() = default;
    explicit StateVector(int m) : m_(m), amps_(std::size_t{1} << m, cplx{0.0, 0.0}) {}

    int qubits() const { return m_; }
    std::size_t dim() const { return amps_.size(); }
    cplx& operator[](std::size_t i) { return amps_[i]; }
    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    std::span<const cplx> amplitudes() const { return amps_; }

    double norm_sq() const;
    void normalize();

    /// In-place left multiplication of `op` on one qubit.
    void apply_single_qubit(int qubit, const Mat2& op);
    /// In-place controlled-Z between two qubits.
    void apply_cz(int a, int b);

  private:
    int m_ = 0;
    std::vector<cplx> amps_;
};

/// |+>^n followed by a controlled-Z per edge; fixed point of every
/// correlation operator X_a (x) Z_N(a).
StateVector graph_state(const Graph& g, int cap = kDefaultQubitCap);

/// diag(1, lambda) applied at every qubit of graph_state(g), renormalized.
StateVector deformed_state(const Graph& g, double lambda, int cap = kDefaultQubitCap);

struct MeasurementBranch {
    double probability = 0.0;
    StateVector state;  // normalized when probability > 0
};

/// Generalized single-qubit measurement. The operator set must satisfy
/// sum M^dag M = I within 1e-10.
std::vector<MeasurementBranch> measure(const StateVector& psi, int qubit,
                                       std::span<const Mat2> operators);

/// Bipartite entanglement entropy in bits across (A, complement). A is given
/// as a bit mask over qubits and must be a proper nonempty subset.
double entanglement_entropy(const StateVector& psi, std::uint64_t subset_mask);
double entanglement_entropy(const StateVector& psi, std::span<const int> subset);

/// |<a|b>|, in [0, 1]; 1 iff equal up to global phase.
double fidelity(const StateVector& a, const StateVector& b);

/// Matrices of the named Pauli measurement projectors (I +- P)/2 and the
/// byproduct corrections used by verify_rule.
Mat2 pauli_projector(char pauli, int outcome);
Mat2 correction_matrix(CorrectionOp op);

struct RuleReport {
    double outcome_probability = 0.0;
    double fidelity = 0.0;
    bool pass = false;
};

/// Measures qubit a of |G> projectively, undoes the corrections predicted by
/// measure_pauli, and compares against the graph state of the rewritten
/// graph. pass iff the fidelity is 1 within tol.
RuleReport verify_rule(const Graph& g, int a, Basis basis, int outcome, double tol = 1e-9,
                       int cap = kDefaultQubitCap);

/// Applies a whole pattern in the oracle, checking the rewrite prediction
/// after every step. Returns the minimum per-step fidelity.
double verify_pattern(const Graph& g, const MeasurementPattern& pattern,
                      int cap = kDefaultQubitCap);

}  // namespace mbqc
