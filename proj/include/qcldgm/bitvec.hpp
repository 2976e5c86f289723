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

#include "rng.hpp"

namespace qcldgm {

/// Fixed-length GF(2) vector packed into 64-bit words. The cyclic rotation
/// is the workhorse: multiplying a bit block by a sparse circulant reduces
/// to a handful of rotate-and-xor passes.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::uint32_t n) : n_(n), w_((n + 63) / 64, 0) {}

    std::uint32_t size() const { return n_; }

    bool test(std::uint32_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    void set(std::uint32_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void clear(std::uint32_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void assign(std::uint32_t i, bool v) { v ? set(i) : clear(i); }
    void flip(std::uint32_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void reset() {
        for (auto& w : w_) w = 0;
    }

    std::uint32_t count() const {
        std::uint32_t c = 0;
        for (auto w : w_) c += static_cast<std::uint32_t>(__builtin_popcountll(w));
        return c;
    }

    bool none() const {
        for (auto w : w_) {
            if (w) return false;
        }
        return true;
    }

    BitVec& operator^=(const BitVec& other) {
        if (other.n_ != n_) throw std::invalid_argument("BitVec: length mismatch");
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= other.w_[i];
        return *this;
    }

    friend bool operator==(const BitVec& a, const BitVec& b) { return a.n_ == b.n_ && a.w_ == b.w_; }
    friend bool operator!=(const BitVec& a, const BitVec& b) { return !(a == b); }

    /// Cyclic index shift: out[j] = in[(j + e) mod n].
    BitVec rotated(std::uint32_t e) const {
        e %= n_;
        BitVec out(n_);
        if (e == 0) {
            out.w_ = w_;
            return out;
        }
        // bits e..n-1 land at 0..n-1-e, bits 0..e-1 wrap to n-e..n-1
        shifted_down_into(out, e);
        shifted_up_into(out, n_ - e, e);
        out.trim();
        return out;
    }

    /// this ^= src.rotated(e), without allocating.
    void xor_rotated(const BitVec& src, std::uint32_t e) {
        if (src.n_ != n_) throw std::invalid_argument("BitVec: length mismatch");
        e %= n_;
        if (e == 0) {
            *this ^= src;
            return;
        }
        src.xor_shifted_down_into(*this, e);
        src.xor_shifted_up_into(*this, n_ - e, e);
        trim();
    }

    static BitVec random(std::uint32_t n, Rng& rng) {
        BitVec out(n);
        for (auto& w : out.w_) w = rng.u64();
        out.trim();
        return out;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

private:
    void trim() {
        const std::uint32_t tail = n_ & 63;
        if (tail) w_.back() &= (std::uint64_t{1} << tail) - 1;
    }

    // out ^= (this >> e), i.e. bit (i - e) of out receives bit i, for i >= e
    void xor_shifted_down_into(BitVec& out, std::uint32_t e) const {
        const std::uint32_t wq = e >> 6, r = e & 63;
        const std::size_t nw = w_.size();
        if (r == 0) {
            for (std::size_t j = wq; j < nw; ++j) out.w_[j - wq] ^= w_[j];
        } else {
            for (std::size_t j = wq; j < nw; ++j) {
                out.w_[j - wq] ^= w_[j] >> r;
                if (j + 1 < nw) out.w_[j - wq] ^= w_[j + 1] << (64 - r);
            }
        }
    }
    void shifted_down_into(BitVec& out, std::uint32_t e) const { xor_shifted_down_into(out, e); }

    // out ^= (low `count` bits of this) << t; t + count == n here, so no
    // set bit ever lands beyond the last word
    void xor_shifted_up_into(BitVec& out, std::uint32_t t, std::uint32_t count) const {
        const std::uint32_t wq = t >> 6, r = t & 63;
        const std::size_t src_words = (count + 63) / 64;
        for (std::size_t j = 0; j < src_words; ++j) {
            std::uint64_t v = w_[j];
            if (j == src_words - 1) {
                const std::uint32_t tail = count & 63;
                if (tail) v &= (std::uint64_t{1} << tail) - 1;
            }
            if (r == 0) {
                out.w_[j + wq] ^= v;
            } else {
                out.w_[j + wq] ^= v << r;
                if (j + wq + 1 < out.w_.size()) out.w_[j + wq + 1] ^= v >> (64 - r);
            }
        }
    }
    void shifted_up_into(BitVec& out, std::uint32_t t, std::uint32_t count) const {
        xor_shifted_up_into(out, t, count);
    }

    std::uint32_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace qcldgm
