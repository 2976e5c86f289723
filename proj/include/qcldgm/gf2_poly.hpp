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

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcldgm {

/// Element of R_n = GF(2)[x]/(x^n - 1), stored as the sorted list of
/// exponents with non-zero coefficient. An n x n binary circulant matrix
/// whose first row has ones at those positions maps to exactly this
/// polynomial, so everything done on circulants is done here instead.
///
/// Values are immutable after construction; all operations below are pure
/// functions and safe to share across threads.
class SparsePoly {
public:
    /// Zero polynomial of R_n.
    explicit SparsePoly(std::uint32_t n) : n_(n) {
        if (n == 0) throw std::invalid_argument("SparsePoly: ring size must be positive");
    }

    /// From explicit support. Exponents may arrive unsorted; duplicates and
    /// out-of-range values are rejected, not folded.
    SparsePoly(std::uint32_t n, std::vector<std::uint32_t> support) : n_(n), support_(std::move(support)) {
        if (n == 0) throw std::invalid_argument("SparsePoly: ring size must be positive");
        std::sort(support_.begin(), support_.end());
        for (std::size_t i = 0; i < support_.size(); ++i) {
            if (support_[i] >= n_) throw std::invalid_argument("SparsePoly: exponent out of range");
            if (i > 0 && support_[i] == support_[i - 1])
                throw std::invalid_argument("SparsePoly: duplicate exponent");
        }
    }

    static SparsePoly zero(std::uint32_t n) { return SparsePoly(n); }
    static SparsePoly one(std::uint32_t n) { return SparsePoly(n, {0}); }
    static SparsePoly monomial(std::uint32_t n, std::uint64_t e) {
        SparsePoly p(n);
        p.support_.push_back(static_cast<std::uint32_t>(e % n));
        return p;
    }

    /// Builds from a term multiset: exponents are reduced mod n and pairs
    /// cancel (GF(2) coefficient parity).
    static SparsePoly from_terms(std::uint32_t n, std::vector<std::uint64_t> terms) {
        if (n == 0) throw std::invalid_argument("SparsePoly: ring size must be positive");
        for (auto& t : terms) t %= n;
        std::sort(terms.begin(), terms.end());
        SparsePoly p(n);
        std::size_t i = 0;
        while (i < terms.size()) {
            std::size_t j = i;
            while (j < terms.size() && terms[j] == terms[i]) ++j;
            if ((j - i) & 1) p.support_.push_back(static_cast<std::uint32_t>(terms[i]));
            i = j;
        }
        return p;
    }

    std::uint32_t ring_size() const { return n_; }
    std::uint32_t weight() const { return static_cast<std::uint32_t>(support_.size()); }
    const std::vector<std::uint32_t>& support() const { return support_; }

    bool is_zero() const { return support_.empty(); }
    bool is_one() const { return support_.size() == 1 && support_[0] == 0; }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.n_ == b.n_ && a.support_ == b.support_;
    }
    friend bool operator!=(const SparsePoly& a, const SparsePoly& b) { return !(a == b); }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> support_;
};

namespace detail {

inline void require_same_ring(const SparsePoly& a, const SparsePoly& b) {
    if (a.ring_size() != b.ring_size())
        throw std::invalid_argument("ring size mismatch: " + std::to_string(a.ring_size()) + " vs " +
                                    std::to_string(b.ring_size()));
}

/// Scratch for term accumulation inside the arithmetic below; per thread so
/// the ring operations stay safe to call concurrently.
inline std::vector<std::uint64_t>& term_scratch() {
    thread_local std::vector<std::uint64_t> scratch;
    return scratch;
}

/// Reduces an exponent multiset mod n with GF(2) parity cancellation into a
/// fresh polynomial; the scratch is consumed.
inline SparsePoly reduce_terms(std::uint32_t n, std::vector<std::uint64_t>& terms) {
    for (auto& t : terms) t %= n;
    std::sort(terms.begin(), terms.end());
    std::vector<std::uint32_t> support;
    std::size_t i = 0;
    while (i < terms.size()) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1) support.push_back(static_cast<std::uint32_t>(terms[i]));
        i = j;
    }
    return SparsePoly(n, std::move(support));
}

/// Dense GF(2)[x] polynomial used only inside the extended Euclidean
/// inverse; bit i of word i/64 is the coefficient of x^i. Buffers are
/// reused across calls (thread-local scratch), so no allocation happens on
/// the hot path once warm.
struct DenseGf2 {
    std::vector<std::uint64_t> w;

    void reset(std::size_t bit_capacity) {
        w.assign((bit_capacity + 63) / 64, 0);
    }

    void set(std::size_t i) { w[i >> 6] ^= std::uint64_t{1} << (i & 63); }
    bool get(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1; }

    /// Highest set bit at or below the hint, -1 if none.
    int degree_below(int hint) const {
        if (hint < 0) return -1;
        for (std::size_t j = static_cast<std::size_t>(hint) / 64 + 1; j-- > 0;) {
            if (w[j]) return static_cast<int>(j * 64 + 63 - __builtin_clzll(w[j]));
        }
        return -1;
    }

    /// this ^= other << k
    void xor_shifted(const DenseGf2& other, std::uint32_t k, int other_deg) {
        const std::uint32_t word = k >> 6, bit = k & 63;
        const std::size_t last = static_cast<std::size_t>(other_deg) / 64;
        if (bit == 0) {
            for (std::size_t j = 0; j <= last; ++j) w[j + word] ^= other.w[j];
        } else {
            std::uint64_t carry = 0;
            for (std::size_t j = 0; j <= last; ++j) {
                const std::uint64_t v = other.w[j];
                w[j + word] ^= (v << bit) | carry;
                carry = v >> (64 - bit);
            }
            if (carry) w[last + 1 + word] ^= carry;
        }
    }
};

}  // namespace detail

/// GF(2) addition: symmetric difference of the supports.
inline SparsePoly add(const SparsePoly& a, const SparsePoly& b) {
    detail::require_same_ring(a, b);
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(a.weight() + b.weight());
    for (auto e : a.support()) terms.push_back(e);
    for (auto e : b.support()) terms.push_back(e);
    return detail::reduce_terms(a.ring_size(), terms);
}

inline SparsePoly operator+(const SparsePoly& a, const SparsePoly& b) { return add(a, b); }

/// Cyclic convolution: all pairwise exponent sums mod n, coefficients
/// reduced mod 2. Cost W[a]*W[b], independent of n.
inline SparsePoly mul(const SparsePoly& a, const SparsePoly& b) {
    detail::require_same_ring(a, b);
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(static_cast<std::size_t>(a.weight()) * b.weight());
    for (auto ea : a.support())
        for (auto eb : b.support()) terms.push_back(std::uint64_t{ea} + eb);
    return detail::reduce_terms(a.ring_size(), terms);
}

inline SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) { return mul(a, b); }

/// Frobenius square: over GF(2), a(x)^2 = a(x^2), so the support maps
/// exponent-wise e -> 2e mod n (with parity cancellation on collisions).
inline SparsePoly square(const SparsePoly& a) {
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(a.weight());
    for (auto e : a.support()) terms.push_back(std::uint64_t{e} * 2);
    return detail::reduce_terms(a.ring_size(), terms);
}

/// a^(2^k) by k Frobenius squarings: exponents scale by 2^k mod n.
inline SparsePoly pow2k(const SparsePoly& a, std::uint32_t k) {
    std::uint64_t f = 1;
    for (std::uint32_t i = 0; i < k; ++i) f = (f * 2) % a.ring_size();
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(a.weight());
    for (auto e : a.support()) terms.push_back((static_cast<std::uint64_t>(e) * f) % a.ring_size());
    return detail::reduce_terms(a.ring_size(), terms);
}

/// Square-and-multiply exponentiation; pow(a, 0) = 1.
inline SparsePoly pow(const SparsePoly& a, std::uint64_t e) {
    SparsePoly result = SparsePoly::one(a.ring_size());
    SparsePoly base = a;
    while (e) {
        if (e & 1) result = mul(result, base);
        base = square(base);
        e >>= 1;
    }
    return result;
}

/// Multiplication by x^j: translate every exponent by j mod n.
inline SparsePoly shift(const SparsePoly& a, std::int64_t j) {
    const std::int64_t n = a.ring_size();
    std::int64_t r = j % n;
    if (r < 0) r += n;
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(a.weight());
    for (auto e : a.support()) terms.push_back(static_cast<std::uint64_t>(e) + static_cast<std::uint64_t>(r));
    return detail::reduce_terms(a.ring_size(), terms);
}

/// a(x^-1): exponent negation mod n. This is the polynomial of the
/// transposed circulant.
inline SparsePoly transpose(const SparsePoly& a) {
    const std::uint32_t n = a.ring_size();
    auto& terms = detail::term_scratch();
    terms.clear();
    terms.reserve(a.weight());
    for (auto e : a.support()) terms.push_back((n - e) % n);
    return detail::reduce_terms(n, terms);
}

/// Extended Euclidean inverse in GF(2)[x]/(x^n - 1), done on a transient
/// dense representation. Returns nullopt when gcd(a, x^n + 1) != 1, i.e.
/// the circulant is singular.
inline std::optional<SparsePoly> euclid_inverse(const SparsePoly& a) {
    const std::uint32_t n = a.ring_size();
    if (a.is_zero()) return std::nullopt;
    if (a.is_one()) return SparsePoly::one(n);

    // r0 = x^n + 1, r1 = a; maintain t_i with t_i * a == r_i (mod x^n + 1).
    thread_local detail::DenseGf2 r0, r1, t0, t1;
    r0.reset(n + 1);
    r1.reset(n + 1);
    t0.reset(2 * n + 64);
    t1.reset(2 * n + 64);
    r0.set(0);
    r0.set(n);
    for (auto e : a.support()) r1.set(e);
    t1.set(0);

    // remainder degrees are exact; cofactor degrees are safe upper bounds
    // (a cancelled leading bit only costs a few extra zero words)
    int d0 = static_cast<int>(n), d1 = r1.degree_below(static_cast<int>(n));
    int e0 = -1, e1 = 0;
    while (d1 >= 0) {
        if (d0 < d1) {
            std::swap(r0, r1);
            std::swap(t0, t1);
            std::swap(d0, d1);
            std::swap(e0, e1);
            continue;
        }
        const std::uint32_t k = static_cast<std::uint32_t>(d0 - d1);
        r0.xor_shifted(r1, k, d1);
        if (e1 >= 0) t0.xor_shifted(t1, k, e1);
        e0 = std::max(e0, e1 + static_cast<int>(k));
        d0 = r0.degree_below(d0 - 1);
    }
    // gcd is in r0 with cofactor t0
    if (d0 != 0) return std::nullopt;  // gcd != 1

    // t0 has degree < n here, so its bits are already the reduced support
    std::vector<std::uint32_t> support;
    const int dt = t0.degree_below(e0);
    std::uint32_t bits = 0;
    for (int j = 0; j <= dt / 64; ++j) bits += static_cast<std::uint32_t>(__builtin_popcountll(t0.w[j]));
    support.reserve(bits);
    for (int j = 0; j <= dt / 64; ++j) {
        std::uint64_t word = t0.w[static_cast<std::size_t>(j)];
        while (word) {
            support.push_back(static_cast<std::uint32_t>(j * 64 + __builtin_ctzll(word)));
            word &= word - 1;
        }
    }
    return SparsePoly(n, std::move(support));
}

/// Text form mirroring positional notation: "56:(0;1;3;8;17)"; the zero
/// polynomial prints as "n:()".
inline std::string to_string(const SparsePoly& a) {
    std::string out = std::to_string(a.ring_size()) + ":(";
    for (std::size_t i = 0; i < a.support().size(); ++i) {
        if (i) out += ';';
        out += std::to_string(a.support()[i]);
    }
    out += ')';
    return out;
}

/// Parses the "n:(e1;e2;...)" form. Rejects out-of-range and duplicate
/// exponents; accepts unsorted input and surrounding whitespace.
inline SparsePoly parse_poly(const std::string& text) {
    std::size_t pos = 0;
    const auto skip_ws = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    };
    const auto read_uint = [&]() -> std::uint64_t {
        skip_ws();
        if (pos >= text.size() || text[pos] < '0' || text[pos] > '9')
            throw std::invalid_argument("parse_poly: expected integer in '" + text + "'");
        std::uint64_t v = 0;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
            if (v > 0xffffffffULL) throw std::invalid_argument("parse_poly: value too large");
            ++pos;
        }
        return v;
    };
    const auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw std::invalid_argument(std::string("parse_poly: expected '") + c + "' in '" + text + "'");
        ++pos;
    };

    const std::uint64_t n = read_uint();
    if (n == 0) throw std::invalid_argument("parse_poly: ring size must be positive");
    expect(':');
    expect('(');
    std::vector<std::uint32_t> support;
    skip_ws();
    if (pos < text.size() && text[pos] != ')') {
        for (;;) {
            const std::uint64_t e = read_uint();
            if (e >= n) throw std::invalid_argument("parse_poly: exponent out of range in '" + text + "'");
            support.push_back(static_cast<std::uint32_t>(e));
            skip_ws();
            if (pos < text.size() && text[pos] == ';') {
                ++pos;
                continue;
            }
            break;
        }
    }
    expect(')');
    skip_ws();
    if (pos != text.size()) throw std::invalid_argument("parse_poly: trailing characters in '" + text + "'");
    return SparsePoly(static_cast<std::uint32_t>(n), std::move(support));  // ctor rejects duplicates
}

}  // namespace qcldgm
