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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mbqc {

/// Row echelon elimination over GF(2) on raw row words. Rows are mutated in
/// place; returns the rank. `words_per_row` words per row, `ncols` significant
/// bits. This is the one elimination kernel in the project; BitMatrix::rank
/// and the cut-rank inner loop of the width search both run through it.
std::size_t gf2_rank_inplace(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                             std::size_t words_per_row);

/// Dense matrix over GF(2), row-major bit-packed (64 entries per word).
/// Values are immutable by convention once built: every operation returns a
/// fresh matrix and never mutates its input.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64), words_(rows * words_per_row_, 0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& w = words_[r * words_per_row_ + (c >> 6)];
        const std::uint64_t bit = std::uint64_t{1} << (c & 63);
        w = v ? (w | bit) : (w & ~bit);
    }
    void toggle(std::size_t r, std::size_t c) {
        words_[r * words_per_row_ + (c >> 6)] ^= std::uint64_t{1} << (c & 63);
    }

    std::span<const std::uint64_t> row_words(std::size_t r) const {
        return {words_.data() + r * words_per_row_, words_per_row_};
    }
    std::size_t words_per_row() const { return words_per_row_; }

    /// GF(2) rank. Works on a copy; the matrix itself is never mutated.
    std::size_t rank() const;

    /// Rows/columns selected in the given order. Out-of-range or duplicate
    /// indices raise input_error.
    BitMatrix submatrix(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

    BitMatrix transposed() const;

    bool operator==(const BitMatrix& other) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace mbqc
