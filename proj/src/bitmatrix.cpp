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

#include "mbqc/bitmatrix.hpp"

#include <algorithm>
#include <unordered_set>

#include "mbqc/errors.hpp"

namespace mbqc {

std::size_t gf2_rank_inplace(std::uint64_t* rows, std::size_t nrows, std::size_t ncols,
                             std::size_t words_per_row) {
    std::size_t rank = 0;
    for (std::size_t col = 0; col < ncols && rank < nrows; ++col) {
        const std::size_t w = col >> 6;
        const std::uint64_t bit = std::uint64_t{1} << (col & 63);
        std::size_t pivot = rank;
        while (pivot < nrows && !(rows[pivot * words_per_row + w] & bit)) ++pivot;
        if (pivot == nrows) continue;
        if (pivot != rank) {
            for (std::size_t k = 0; k < words_per_row; ++k)
                std::swap(rows[pivot * words_per_row + k], rows[rank * words_per_row + k]);
        }
        for (std::size_t r = rank + 1; r < nrows; ++r) {
            if (rows[r * words_per_row + w] & bit) {
                for (std::size_t k = 0; k < words_per_row; ++k)
                    rows[r * words_per_row + k] ^= rows[rank * words_per_row + k];
            }
        }
        ++rank;
    }
    return rank;
}

std::size_t BitMatrix::rank() const {
    if (rows_ == 0 || cols_ == 0) return 0;
    std::vector<std::uint64_t> scratch(words_);
    return gf2_rank_inplace(scratch.data(), rows_, cols_, words_per_row_);
}

BitMatrix BitMatrix::submatrix(std::span<const std::size_t> row_idx,
                               std::span<const std::size_t> col_idx) const {
    auto check = [](std::span<const std::size_t> idx, std::size_t bound, const char* what) {
        std::unordered_set<std::size_t> seen;
        for (std::size_t i : idx) {
            if (i >= bound) throw input_error(std::string("submatrix: ") + what + " index out of range");
            if (!seen.insert(i).second)
                throw input_error(std::string("submatrix: duplicate ") + what + " index");
        }
    };
    check(row_idx, rows_, "row");
    check(col_idx, cols_, "column");

    BitMatrix out(row_idx.size(), col_idx.size());
    for (std::size_t r = 0; r < row_idx.size(); ++r)
        for (std::size_t c = 0; c < col_idx.size(); ++c)
            if (get(row_idx[r], col_idx[c])) out.set(r, c, true);
    return out;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            if (get(r, c)) out.set(c, r, true);
    return out;
}

}  // namespace mbqc
