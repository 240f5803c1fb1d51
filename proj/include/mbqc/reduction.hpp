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
#include <vector>

#include "mbqc/graph.hpp"
#include "mbqc/rewrite.hpp"

namespace mbqc {

struct StepLog {
    int v = 0;
    Basis basis = Basis::Z;
    int outcome = +1;
    std::vector<std::pair<int, CorrectionOp>> corrections;
    int n_after = 0;
    int edges_after = 0;
};

/// Pure-data witness that measuring `pattern` on `source` yields a graph
/// isomorphic to the k x k grid. Verifying one needs only the graph core and
/// the rewrite calculus; `replay_certificate` re-runs every step.
struct ReductionCertificate {
    std::string source_kind = "custom";  // lattice kind, or "custom"
    std::vector<int> source_dims;        // empty for custom sources
    Graph source;
    MeasurementPattern pattern;
    int k = 0;
    Graph result;
    std::optional<std::vector<int>> isomorphism;  // result vertex -> grid vertex
    std::vector<StepLog> log;
    bool pass = false;

    std::string to_json() const;
    static ReductionCertificate from_json(const std::string& text);
};

/// Applies the pattern (outcome +1 branch), tests isomorphism against
/// grid(k, k) and returns the full certificate. Deterministic.
ReductionCertificate verify_reduction(const Graph& source, const MeasurementPattern& pattern,
                                      int k, const std::string& source_kind = "custom",
                                      std::vector<int> source_dims = {});

/// Re-runs the rewrite log step by step and revalidates the isomorphism.
/// True iff every recorded step and the final graph reproduce exactly.
bool replay_certificate(const ReductionCertificate& cert);

struct SearchOptions {
    /// Vertex classes are residues of the (quantized) coordinates modulo
    /// these periods, in lattice coordinate units.
    double period_x = 2.0;
    double period_y = 2.0;
    bool allow_y = true;   // bases available to measured classes
    bool allow_z = true;
    double max_measured_fraction = 1.0;
    int threads = 1;
    int max_classes = 20;
};

/// First class-periodic pattern (deterministic exploration order) whose
/// verify_reduction against grid(k, k) passes, or nullopt once the space is
/// exhausted. The source must carry coordinates.
std::optional<MeasurementPattern> search_pattern(const Graph& source, int k,
                                                 const SearchOptions& opts = {});

/// Same search against an arbitrary target graph.
std::optional<MeasurementPattern> search_pattern_to(const Graph& source, const Graph& target,
                                                    const SearchOptions& opts = {});

/// Shipped reduction pattern: a lattice patch, a target, and the pattern
/// taking one to the other. Produced by search_pattern, stored as JSON under
/// the versioned data directory.
struct PatternAsset {
    LatticeSpec patch;
    LatticeSpec target;
    MeasurementPattern pattern;

    std::string to_json() const;
    static PatternAsset from_json(const std::string& text);
};

/// "hexagonal_k3.json" style name for grid-targeted assets.
std::string pattern_asset_filename(LatticeKind kind, int k);

PatternAsset load_pattern_asset(const std::string& path);

/// Runs a grid-targeted asset end to end.
ReductionCertificate certify_asset(const PatternAsset& asset);

/// The staged route: hexagonal -> triangular -> kagome -> grid(k, k), using
/// the *_to_* assets in `pattern_dir` and matching each intermediate graph
/// to the next patch by isomorphism. Reported alongside the direct
/// certificates; the direct ones are the normative check.
struct ChainReport {
    bool attempted = false;
    bool pass = false;
    std::vector<std::string> stages;  // human-readable per-stage outcome

    std::string to_json() const;
};

ChainReport attempt_chain(const std::string& pattern_dir, int k);

}  // namespace mbqc
