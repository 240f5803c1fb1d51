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
#include <string>
#include <utility>
#include <vector>

#include "mbqc/graph.hpp"

namespace mbqc {

/// Measurement bases handled by the graph rewrite calculus. Z deletes the
/// vertex; Y locally complements at the vertex and then deletes it.
enum class Basis { Y, Z };

const char* basis_name(Basis b);

/// Local Clifford byproduct left on a neighbor after a measurement.
enum class CorrectionOp { Identity, Z, SqrtPlusIZ, SqrtMinusIZ };

const char* correction_name(CorrectionOp op);

/// Byproduct bookkeeping for one measurement: which vertex was measured, the
/// outcome sign, and the correction tag per surviving neighbor.
struct CorrectionRecord {
    int vertex = 0;
    Basis basis = Basis::Z;
    int outcome = +1;
    std::vector<std::pair<int, CorrectionOp>> corrections;
};

struct PatternStep {
    int v = 0;
    Basis basis = Basis::Z;
    int outcome = +1;
};

/// Ordered list of single-qubit Pauli measurements. Vertices refer to the
/// graph the pattern is applied to; each may appear at most once.
struct MeasurementPattern {
    std::vector<PatternStep> steps;

    std::string to_json() const;
    static MeasurementPattern from_json(const std::string& text);
    /// Raises input_error on out-of-range or repeated vertices.
    void validate(int n) const;
};

/// Complements the subgraph induced by N(a); everything else is unchanged.
Graph local_complement(const Graph& g, int a);

struct VertexDeletion {
    Graph graph;
    /// old index -> new index, -1 for the deleted vertex. Surviving vertices
    /// are compacted in order.
    std::vector<int> old_to_new;
};

VertexDeletion delete_vertex(const Graph& g, int a);

struct MeasureResult {
    Graph graph;
    CorrectionRecord record;          // correction vertices use the input graph's labels
    std::vector<int> old_to_new;
};

/// Graph update for a single sigma_y / sigma_z measurement. The output graph
/// is outcome-independent; only the correction tags depend on the sign.
MeasureResult measure_pauli(const Graph& g, int a, Basis basis, int outcome = +1);

struct PatternResult {
    Graph graph;
    std::vector<CorrectionRecord> log;  // per step, vertices in the original labeling
    std::vector<int> old_to_new;        // original -> final index, -1 if measured
};

/// Applies the steps in order. Pattern vertices refer to the original graph.
PatternResult apply_pattern(const Graph& g, const MeasurementPattern& pattern);

}  // namespace mbqc
