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
#include <stdexcept>
#include <vector>

#include "cycles.hpp"
#include "qc_ldgm.hpp"
#include "rng.hpp"
#include "xi_design.hpp"

namespace qcldgm {

struct DesignExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Draws a full parity-check row: the last block is either a cycle-free
/// psi-unitary design of the requested weight (n must factor as
/// 2^(m+2) * s for weight 2m+3) or the identity; the other blocks are
/// random supports of weight `block_weight`, redrawn until the whole row
/// is free of length-4 cycles within and across blocks.
inline QcLdgmCode design_random_code(std::uint32_t nb, std::uint32_t n, std::uint32_t block_weight,
                                     bool identity_last, Rng& rng, std::uint32_t max_tries = 20000,
                                     std::string id = {}) {
    if (nb < 2) throw std::invalid_argument("design_random_code: need at least two blocks");
    if (block_weight == 0) throw std::invalid_argument("design_random_code: weight must be positive");

    SparsePoly last = SparsePoly::one(n);
    if (!identity_last) {
        if (block_weight < 3 || block_weight % 2 == 0)
            throw std::invalid_argument("design_random_code: psi-unitary last block needs odd weight >= 3");
        const std::uint32_t m = (block_weight - 3) / 2;
        const std::uint32_t div = std::uint32_t{1} << (m + 2);
        if (n % div != 0) throw std::invalid_argument("design_random_code: n must be divisible by 2^(m+2)");
        auto drawn = sample_cycle_free(m, n / div, rng, max_tries);
        if (!drawn) throw DesignExhausted("design_random_code: no cycle-free psi-unitary block found");
        last = *drawn;
    }

    // greedy placement can corner itself when the distance budget is tight,
    // so an exhausted row is thrown away and redrawn from scratch
    const std::uint32_t row_restarts = 32;
    const std::uint32_t tries_per_block = std::max<std::uint32_t>(1, max_tries / row_restarts);
    for (std::uint32_t restart = 0; restart < row_restarts; ++restart) {
        std::vector<SparsePoly> blocks;
        blocks.reserve(nb);
        bool row_ok = true;
        for (std::uint32_t b = 0; b + 1 < nb && row_ok; ++b) {
            bool placed = false;
            for (std::uint32_t attempt = 0; attempt < tries_per_block && !placed; ++attempt) {
                std::vector<std::uint32_t> support;
                while (support.size() < block_weight) {
                    const auto e = static_cast<std::uint32_t>(rng.below(n));
                    bool dup = false;
                    for (auto s : support) dup = dup || (s == e);
                    if (!dup) support.push_back(e);
                }
                SparsePoly cand(n, std::move(support));
                auto trial = blocks;
                trial.push_back(cand);
                trial.push_back(last);
                if (matrix_girth_ok(trial)) {
                    blocks.push_back(std::move(cand));
                    placed = true;
                }
            }
            row_ok = placed;
        }
        if (row_ok) {
            blocks.push_back(std::move(last));
            return build_code(std::move(blocks), std::move(id));
        }
    }
    throw DesignExhausted("design_random_code: could not place a girth-compatible block");
}

}  // namespace qcldgm
