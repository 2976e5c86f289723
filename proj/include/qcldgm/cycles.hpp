/*
   Copyright 2026 The qcldgm authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "gf2_poly.hpp"

namespace qcldgm {

/// Directed circular distances (e_j - e_i) mod n over all ordered pairs of
/// distinct support exponents, with multiplicities. A circulant block is
/// free of length-4 cycles exactly when no distance repeats, because a
/// rectangle of ones is two rows agreeing on two columns, i.e. one
/// distance realized twice.
struct DistanceMultiset {
    std::uint32_t n = 0;
    std::map<std::uint32_t, std::uint32_t> counts;

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& [d, c] : counts) t += c;
        return t;
    }
};

inline DistanceMultiset distance_multiset(const SparsePoly& a) {
    DistanceMultiset out;
    out.n = a.ring_size();
    const auto& sup = a.support();
    for (std::size_t i = 0; i < sup.size(); ++i) {
        for (std::size_t j = 0; j < sup.size(); ++j) {
            if (i == j) continue;
            const std::uint32_t d = (sup[j] + out.n - sup[i]) % out.n;
            ++out.counts[d];
        }
    }
    return out;
}

namespace detail {

/// Sorted distance values (ignoring multiplicity); flags internal repeats.
inline std::vector<std::uint32_t> distance_values(const SparsePoly& a, bool& repeated) {
    const std::uint32_t n = a.ring_size();
    const auto& sup = a.support();
    std::vector<std::uint32_t> dist;
    dist.reserve(sup.size() * (sup.size() - (sup.empty() ? 0 : 1)));
    for (std::size_t i = 0; i < sup.size(); ++i)
        for (std::size_t j = 0; j < sup.size(); ++j)
            if (i != j) dist.push_back((sup[j] + n - sup[i]) % n);
    std::sort(dist.begin(), dist.end());
    repeated = false;
    for (std::size_t i = 1; i < dist.size(); ++i) repeated = repeated || (dist[i] == dist[i - 1]);
    dist.erase(std::unique(dist.begin(), dist.end()), dist.end());
    return dist;
}

}  // namespace detail

/// True when some circular distance has multiplicity >= 2, which is
/// exactly when the circulant contains a rectangle of four ones.
inline bool has_length4_cycle(const SparsePoly& a) {
    bool repeated = false;
    (void)detail::distance_values(a, repeated);
    return repeated;
}

/// Two circulant blocks side by side close a rectangle iff they share a
/// distance value: two rows then agree on one column inside each block.
inline bool cross_block_cycle(const SparsePoly& a, const SparsePoly& b) {
    detail::require_same_ring(a, b);
    bool ra = false, rb = false;
    const auto da = detail::distance_values(a, ra);
    const auto db = detail::distance_values(b, rb);
    std::size_t i = 0, j = 0;
    while (i < da.size() && j < db.size()) {
        if (da[i] == db[j]) return true;
        if (da[i] < db[j])
            ++i;
        else
            ++j;
    }
    return false;
}

/// Girth >= 6 for a parity-check row of circulant blocks: no block may
/// repeat a distance internally and no two blocks may share one.
inline bool matrix_girth_ok(std::span<const SparsePoly> blocks) {
    std::vector<std::vector<std::uint32_t>> values;
    values.reserve(blocks.size());
    for (const auto& blk : blocks) {
        if (blk.ring_size() != blocks.front().ring_size())
            throw std::invalid_argument("matrix_girth_ok: blocks must share ring size");
        bool repeated = false;
        values.push_back(detail::distance_values(blk, repeated));
        if (repeated) return false;
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = i + 1; j < values.size(); ++j) {
            std::size_t x = 0, y = 0;
            while (x < values[i].size() && y < values[j].size()) {
                if (values[i][x] == values[j][y]) return false;
                if (values[i][x] < values[j][y])
                    ++x;
                else
                    ++y;
            }
        }
    }
    return true;
}

inline bool matrix_girth_ok(const std::vector<SparsePoly>& blocks) {
    return matrix_girth_ok(std::span<const SparsePoly>(blocks.data(), blocks.size()));
}

}  // namespace qcldgm
