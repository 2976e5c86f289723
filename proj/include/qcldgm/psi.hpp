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
#include <utility>
#include <vector>

#include "gf2_poly.hpp"
#include "rng.hpp"

namespace qcldgm {

/// Parameters of the folding homomorphism psi from R_{2^q s} onto
/// R_{2^r s}: coefficients at exponents congruent mod 2^r*s are summed
/// over GF(2). Its kernel is the ideal generated by (x^{2^r s} - 1).
struct PsiParams {
    std::uint32_t s = 1;  // base size (n = 2^q * s); need not be odd
    std::uint32_t q = 0;  // source exponent
    std::uint32_t r = 0;  // target exponent, r <= q

    std::uint32_t source_size() const { return (std::uint32_t{1} << q) * s; }
    std::uint32_t target_size() const { return (std::uint32_t{1} << r) * s; }

    void validate() const {
        if (s == 0) throw std::invalid_argument("PsiParams: s must be positive");
        if (r > q) throw std::invalid_argument("PsiParams: r must not exceed q");
        if (q >= 32 || (std::uint64_t{s} << q) > 0xffffffffULL)
            throw std::invalid_argument("PsiParams: ring size overflow");
    }
};

namespace detail {

inline void require_source_ring(const SparsePoly& a, const PsiParams& params) {
    params.validate();
    if (a.ring_size() != params.source_size())
        throw std::invalid_argument("psi: polynomial ring size does not match params");
}

}  // namespace detail

/// n = 2^q * s with s odd.
inline std::pair<std::uint32_t, std::uint32_t> factor_pow2(std::uint32_t n) {
    std::uint32_t q = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++q;
    }
    return {q, n};
}

/// Applies psi by folding each support exponent to e mod 2^r*s with GF(2)
/// parity accumulation. Equivalent to iterating the elementary index-2
/// fold (q - r) times, but done in one pass over the sparse support.
inline SparsePoly psi_map(const SparsePoly& a, const PsiParams& params) {
    detail::require_source_ring(a, params);
    const std::uint32_t target = params.target_size();
    std::vector<std::uint64_t> terms;
    terms.reserve(a.weight());
    for (auto e : a.support()) terms.push_back(e % target);
    return SparsePoly::from_terms(target, std::move(terms));
}

/// Membership in Ker(psi) = <x^{2^r s} - 1>: every residue class mod
/// 2^r*s must hold an even number of support exponents.
inline bool ideal_member(const SparsePoly& w, const PsiParams& params) {
    return psi_map(w, params).is_zero();
}

/// A circulant is psi-unitary when its polynomial folds to the unit of
/// the target ring.
inline bool is_psi_unitary(const SparsePoly& a, const PsiParams& params) {
    return psi_map(a, params).is_one();
}

/// Cross-checks the equivalence  a^(2^r) == 1  <=>  fold of a onto
/// R_{2^(q-r) s} == 1, computing both sides independently (squaring chain
/// vs. exponent folding). Always true; exercised as a property test.
inline bool check_unit_power_equivalence(const SparsePoly& a, const PsiParams& params) {
    detail::require_source_ring(a, params);
    if (params.r == 0) throw std::invalid_argument("check_unit_power_equivalence: r must be positive");
    const bool lhs = pow2k(a, params.r).is_one();
    const PsiParams fold{params.s, params.q, params.q - params.r};
    const bool rhs = psi_map(a, fold).is_one();
    return lhs == rhs;
}

/// Uniform draw from the coset a0 + Ker(psi): adds b(x) * (x^{2^r s} - 1)
/// for a random b with independent Bernoulli(1/2) coefficients. The map
/// b -> b * (x^M - 1) is injective for deg b < n - M, so the draw is
/// uniform over the ideal.
inline SparsePoly coset_sample(const SparsePoly& a0, const PsiParams& params, Rng& rng) {
    detail::require_source_ring(a0, params);
    const std::uint32_t n = params.source_size();
    const std::uint32_t m = params.target_size();
    std::vector<std::uint64_t> terms;
    for (auto e : a0.support()) terms.push_back(e);
    for (std::uint32_t j = 0; j + m < n; ++j) {
        if (rng.bit()) {
            terms.push_back(j);
            terms.push_back(j + m);
        }
    }
    return SparsePoly::from_terms(n, std::move(terms));
}

}  // namespace qcldgm
