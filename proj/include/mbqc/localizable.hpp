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

#include <optional>
#include <utility>
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/statevec.hpp"

namespace mbqc {

/// Measurement bases available to localization strategies. The declaration
/// order X, Y, Z is also the per-qubit enumeration order; the witness of a
/// unit pair is the lexicographically first strategy under this order.
enum class PauliBasis { X = 0, Y = 1, Z = 2 };

const char* pauli_basis_name(PauliBasis b);

inline constexpr int kDefaultLeCap = 10;       // 3^(n-2) strategies are enumerated
inline constexpr double kUnitLeThreshold = 1.0 - 1e-9;

/// Concurrence of a normalized two-qubit pure state: 2|a00 a11 - a01 a10|.
double concurrence_pure(cplx a00, cplx a01, cplx a10, cplx a11);

struct LePairResult {
    int a = 0;
    int b = 0;
    /// Best outcome-averaged concurrence over single-round Pauli strategies
    /// on the other n-2 qubits. A lower bound on the LOCC-optimal value.
    double value = 0.0;
    /// Strategy attaining value 1 (within the unit threshold), else absent.
    std::optional<std::vector<std::pair<int, PauliBasis>>> witness;
};

LePairResult pauli_le_pair(const Graph& g, int a, int b, int threads = 1, int cap = kDefaultLeCap);

struct NleResult {
    std::vector<int> subset;
    int size = 0;
};

/// Largest qubit subset whose pairs all have unit Pauli-localizable
/// entanglement: exact maximum clique of the unit-LE pair relation.
NleResult n_le(const Graph& g, int threads = 1, int cap = kDefaultLeCap);

}  // namespace mbqc
