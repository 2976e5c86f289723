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
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bitvec.hpp"
#include "cycles.hpp"
#include "gf2_poly.hpp"
#include "psi.hpp"

namespace qcldgm {

struct SingularBlockError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Systematic quasi-cyclic LDGM code whose parity-check matrix is one row
/// of circulant blocks [H_0 | ... | H_{Nb-1}]. The generator is
/// [I | column of (H_last^{-1} H_i)^T], so the code is fully described by
/// the block polynomials plus the cached inverse of the last block.
///
/// Bit layout: variable i*n + j is coefficient j of block i; information
/// occupies blocks 0..Nb-2, parity is the last block.
struct QcLdgmCode {
    std::vector<SparsePoly> blocks;
    SparsePoly last_inverse = SparsePoly::zero(1);
    std::vector<SparsePoly> gen_blocks;      // h_last^{-1} * h_i
    std::vector<SparsePoly> gen_transpose;   // transposed gen blocks, used by the encoder
    std::uint32_t n = 0;                     // circulant size
    std::uint32_t block_count = 0;           // Nb
    std::string id;

    std::uint32_t length() const { return n * block_count; }          // N
    std::uint32_t dimension() const { return n * (block_count - 1); }  // K
    double rate() const { return double(block_count - 1) / double(block_count); }
};

/// Assembles the code: inverts the last block (squaring chain when it is
/// psi-unitary over its odd-part ring, Euclid otherwise), forms the
/// generator blocks and verifies H G^T == 0 through the per-block identity
/// h_i + h_last * (h_last^{-1} h_i) == 0.
inline QcLdgmCode build_code(std::vector<SparsePoly> blocks, std::string id = {}) {
    if (blocks.size() < 2) throw std::invalid_argument("build_code: need at least two blocks");
    const std::uint32_t n = blocks.front().ring_size();
    for (const auto& b : blocks)
        if (b.ring_size() != n) throw std::invalid_argument("build_code: blocks must share ring size");

    QcLdgmCode code;
    code.blocks = std::move(blocks);
    code.n = n;
    code.block_count = static_cast<std::uint32_t>(code.blocks.size());
    code.id = std::move(id);

    const SparsePoly& last = code.blocks.back();
    const auto [q, s_odd] = factor_pow2(n);
    bool inverted = false;
    if (q >= 1 && is_psi_unitary(last, PsiParams{s_odd, q, 0})) {
        // last^(2^q) == 1, so last^{-1} = prod_{i=0}^{q-1} last^(2^i)
        SparsePoly inv = last;
        for (std::uint32_t i = 1; i < q; ++i) inv = mul(inv, pow2k(last, i));
        if (!mul(last, inv).is_one()) throw std::logic_error("build_code: squaring-chain inverse failed");
        code.last_inverse = inv;
        inverted = true;
    }
    if (!inverted) {
        auto inv = euclid_inverse(last);
        if (!inv) throw SingularBlockError("build_code: last block is singular");
        code.last_inverse = *inv;
    }

    code.gen_blocks.reserve(code.block_count - 1);
    code.gen_transpose.reserve(code.block_count - 1);
    for (std::uint32_t i = 0; i + 1 < code.block_count; ++i) {
        auto g = mul(code.last_inverse, code.blocks[i]);
        if (!add(code.blocks[i], mul(code.blocks.back(), g)).is_zero())
            throw std::logic_error("build_code: H G^T != 0");
        code.gen_transpose.push_back(transpose(g));
        code.gen_blocks.push_back(std::move(g));
    }
    return code;
}

/// Systematic encoding: the codeword is the information blocks followed by
/// the parity block p with p = sum_i u_i * gen_blocks[i]^T, realized as
/// rotate-xor passes over the information bits.
inline std::vector<BitVec> encode(const QcLdgmCode& code, const std::vector<BitVec>& info) {
    if (info.size() != code.block_count - 1) throw std::invalid_argument("encode: wrong number of info blocks");
    std::vector<BitVec> cw;
    cw.reserve(code.block_count);
    BitVec parity(code.n);
    for (std::size_t i = 0; i < info.size(); ++i) {
        if (info[i].size() != code.n) throw std::invalid_argument("encode: info block length mismatch");
        for (auto e : code.gen_blocks[i].support()) parity.xor_rotated(info[i], e);
        cw.push_back(info[i]);
    }
    cw.push_back(std::move(parity));
    return cw;
}

/// H c^T over the block layout; the codeword test.
inline BitVec syndrome(const QcLdgmCode& code, const std::vector<BitVec>& codeword) {
    if (codeword.size() != code.block_count) throw std::invalid_argument("syndrome: wrong number of blocks");
    BitVec s(code.n);
    for (std::size_t b = 0; b < codeword.size(); ++b) {
        for (auto e : code.blocks[b].support()) s.xor_rotated(codeword[b], e);
    }
    return s;
}

/// The structural low-weight codeword attached to a block pair: the
/// reversed polynomial of block j placed in position i and vice versa.
/// Its weight is at most W[h_i] + W[h_j]; the syndrome is verified zero.
inline std::vector<BitVec> low_weight_codeword(const QcLdgmCode& code, std::uint32_t i, std::uint32_t j) {
    if (!(i < j && j < code.block_count)) throw std::invalid_argument("low_weight_codeword: need 0 <= i < j < Nb");
    std::vector<BitVec> cw(code.block_count, BitVec(code.n));
    const auto rev_j = transpose(code.blocks[j]);
    const auto rev_i = transpose(code.blocks[i]);
    for (auto e : rev_j.support()) cw[i].set(e);
    for (auto e : rev_i.support()) cw[j].set(e);
    if (!syndrome(code, cw).none()) throw std::logic_error("low_weight_codeword: syndrome not zero");
    return cw;
}

inline std::uint32_t codeword_weight(const std::vector<BitVec>& cw) {
    std::uint32_t w = 0;
    for (const auto& b : cw) w += b.count();
    return w;
}

// ---------------------------------------------------------------------------
// Minimum-distance estimate from block weights

struct DminEstimate {
    std::uint32_t d_bar = 0;   // min over pairs of W_i + W_j
    std::uint32_t patterns = 0;  // P: number of block pairs achieving d_bar
    std::uint64_t multiplicity = 0;  // A ~= n * P
    std::uint32_t w1 = 0, w2 = 0;    // two smallest block weights
    std::uint32_t n1 = 0, n2 = 0;    // their multiplicities (n2 = 0 if all equal)
};

inline DminEstimate dmin_estimate(const QcLdgmCode& code) {
    DminEstimate est;
    est.w1 = 0xffffffff;
    for (const auto& b : code.blocks) est.w1 = std::min(est.w1, b.weight());
    est.w2 = 0xffffffff;
    for (const auto& b : code.blocks) {
        const auto w = b.weight();
        if (w == est.w1)
            ++est.n1;
        else if (w < est.w2)
            est.w2 = w;
    }
    if (est.w2 == 0xffffffff) {
        est.w2 = est.w1;  // all blocks share one weight
        est.n2 = 0;
    } else {
        for (const auto& b : code.blocks) est.n2 += (b.weight() == est.w2);
    }
    est.d_bar = (est.n1 == 1) ? est.w1 + est.w2 : 2 * est.w1;
    est.patterns = (est.n1 == 1) ? est.n2 : est.n1 * (est.n1 - 1) / 2;
    est.multiplicity = std::uint64_t{code.n} * est.patterns;
    return est;
}

/// Block pairs (i, j) whose combined weight achieves the estimate; these
/// are the predicted supports of minimum-weight codewords.
inline std::vector<std::pair<std::uint32_t, std::uint32_t>> dmin_pairs(const QcLdgmCode& code) {
    const auto est = dmin_estimate(code);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    for (std::uint32_t i = 0; i < code.block_count; ++i)
        for (std::uint32_t j = i + 1; j < code.block_count; ++j)
            if (code.blocks[i].weight() + code.blocks[j].weight() == est.d_bar) pairs.emplace_back(i, j);
    return pairs;
}

// ---------------------------------------------------------------------------
// Complexity proxies: elementary operations per redundancy bit (encoder)
// and messages per bit per iteration (decoder)

struct Complexity {
    std::uint64_t enc = 0;       // parity-column weight of G, constant across columns
    std::uint64_t dec_num = 0;   // total column weight of H ...
    std::uint32_t dec_den = 1;   // ... divided by Nb
    double dec() const { return static_cast<double>(dec_num) / dec_den; }
};

inline Complexity complexity(const QcLdgmCode& code) {
    Complexity c;
    for (const auto& g : code.gen_blocks) c.enc += g.weight();
    for (const auto& b : code.blocks) c.dec_num += b.weight();
    c.dec_den = code.block_count;
    return c;
}

// ---------------------------------------------------------------------------
// Exact minimum distance by enumeration (test-scale oracle)

namespace detail {

/// Dense generator rows of the code, one bit row per information bit.
inline std::vector<std::vector<std::uint64_t>> dense_generator_rows(const QcLdgmCode& code) {
    const std::uint32_t k_bits = code.dimension(), n_bits = code.length();
    const std::size_t words = (n_bits + 63) / 64;
    std::vector<std::vector<std::uint64_t>> rows(k_bits, std::vector<std::uint64_t>(words, 0));
    for (std::uint32_t i = 0; i + 1 < code.block_count; ++i) {
        for (std::uint32_t j = 0; j < code.n; ++j) {
            auto& row = rows[i * code.n + j];
            const std::uint32_t self = i * code.n + j;
            row[self >> 6] |= std::uint64_t{1} << (self & 63);
            // parity part: row j of the transposed generator block
            for (auto e : code.gen_transpose[i].support()) {
                const std::uint32_t col = (code.block_count - 1) * code.n + (e + j) % code.n;
                row[col >> 6] |= std::uint64_t{1} << (col & 63);
            }
        }
    }
    return rows;
}

}  // namespace detail

/// Exact minimum nonzero codeword weight. Exhaustive (Gray-code walk over
/// all 2^K - 1 information words) when K <= 24; otherwise enumerates
/// information vectors of weight up to max_info_weight, which bounds the
/// true minimum from above.
inline std::uint32_t brute_force_dmin(const QcLdgmCode& code, std::uint32_t max_info_weight = 0) {
    const std::uint32_t k_bits = code.dimension();
    const auto rows = detail::dense_generator_rows(code);
    const std::size_t words = rows.front().size();
    std::vector<std::uint64_t> cw(words, 0);
    std::uint32_t best = 0xffffffff;

    const auto weight_of = [&] {
        std::uint32_t w = 0;
        for (auto v : cw) w += static_cast<std::uint32_t>(__builtin_popcountll(v));
        return w;
    };

    if (k_bits <= 24) {
        // Gray code: step t flips information bit ctz(t)
        const std::uint64_t total = std::uint64_t{1} << k_bits;
        for (std::uint64_t t = 1; t < total; ++t) {
            const int bit = __builtin_ctzll(t);
            for (std::size_t w = 0; w < words; ++w) cw[w] ^= rows[static_cast<std::size_t>(bit)][w];
            best = std::min(best, weight_of());
        }
        return best;
    }

    if (max_info_weight == 0)
        throw std::invalid_argument("brute_force_dmin: K > 24 needs an information-weight cap");

    // enumerate every information support of size 1..cap; any codeword of
    // weight w has information weight at most w (systematic layout), so a
    // cap of d covers all codewords of weight up to d
    std::vector<std::uint32_t> idx;
    const auto recurse = [&](auto&& self, std::uint32_t start, std::uint32_t remaining) -> void {
        for (std::uint32_t i = start; i < k_bits; ++i) {
            for (std::size_t w = 0; w < words; ++w) cw[w] ^= rows[i][w];
            best = std::min(best, weight_of());
            if (remaining > 1) self(self, i + 1, remaining - 1);
            for (std::size_t w = 0; w < words; ++w) cw[w] ^= rows[i][w];
        }
    };
    recurse(recurse, 0, max_info_weight);
    return best;
}

// ---------------------------------------------------------------------------
// Code definition file: a header plus one polynomial line per block.
//
//   id <name>          (optional)
//   Nb <blocks>
//   n <ring size>
//   block <n>:(e;...)  repeated Nb times
//
// '#' starts a comment line. The writer emits the canonical form, which
// re-reads byte-identically.

inline void write_code_file(std::ostream& os, const QcLdgmCode& code) {
    if (!code.id.empty()) os << "id " << code.id << "\n";
    os << "Nb " << code.block_count << "\n";
    os << "n " << code.n << "\n";
    for (const auto& b : code.blocks) os << "block " << to_string(b) << "\n";
}

inline QcLdgmCode read_code_file(std::istream& is) {
    std::string id;
    std::int64_t nb = -1, n = -1;
    std::vector<SparsePoly> blocks;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        const auto fail = [&](const std::string& why) {
            throw std::invalid_argument("code file line " + std::to_string(lineno) + ": " + why);
        };
        if (key == "id") {
            ls >> id;
        } else if (key == "Nb") {
            if (!(ls >> nb) || nb < 2) fail("bad block count");
        } else if (key == "n") {
            if (!(ls >> n) || n < 1) fail("bad ring size");
        } else if (key == "block") {
            std::string poly;
            ls >> poly;
            if (poly.empty()) fail("missing polynomial");
            blocks.push_back(parse_poly(poly));
            if (n > 0 && blocks.back().ring_size() != static_cast<std::uint32_t>(n))
                fail("block ring size disagrees with header");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (nb < 2 || n < 1) throw std::invalid_argument("code file: missing Nb or n header");
    if (blocks.size() != static_cast<std::size_t>(nb))
        throw std::invalid_argument("code file: expected " + std::to_string(nb) + " blocks, got " +
                                    std::to_string(blocks.size()));
    return build_code(std::move(blocks), std::move(id));
}

}  // namespace qcldgm
