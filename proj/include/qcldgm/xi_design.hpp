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
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cycles.hpp"
#include "gf2_poly.hpp"
#include "psi.hpp"
#include "rng.hpp"

namespace qcldgm {

/// Parameters of the structured psi-unitary family over R_n, n = 2^(m+2)*s.
/// The polynomial carries one anchor term c_{-1}*s plus, per level i, the
/// pair k_i (+ c_i*2^(i+1)*s) and k_i + 2^i*s (+ d_i*2^(i+1)*s); the pair
/// collapses under folding mod s, which is what makes every member fold to
/// the ring unit of R_s. Weight is 2m+3 unless terms collide.
struct XiParams {
    std::uint32_t m = 0;
    std::uint32_t s = 2;
    std::vector<std::uint32_t> k;  // size m+1, 0 < k[i] < 2^i * s, all distinct
    std::uint32_t c_minus1 = 0;    // in [0, 4)
    std::vector<std::uint32_t> c;  // size m+1, c[i] in [0, 2^(m+1-i))
    std::vector<std::uint32_t> d;  // same bounds as c

    std::uint32_t n() const { return (std::uint32_t{1} << (m + 2)) * s; }
    std::uint32_t weight_nominal() const { return 2 * m + 3; }

    void validate() const {
        if (s == 0) throw std::invalid_argument("XiParams: s must be positive");
        if (m + 2 >= 32 || (std::uint64_t{s} << (m + 2)) > 0xffffffffULL)
            throw std::invalid_argument("XiParams: ring size overflow");
        if (k.size() != m + 1 || c.size() != m + 1 || d.size() != m + 1)
            throw std::invalid_argument("XiParams: k, c, d must each have m+1 entries");
        if (c_minus1 >= 4) throw std::invalid_argument("XiParams: c_minus1 out of range");
        for (std::uint32_t i = 0; i <= m; ++i) {
            const std::uint64_t k_bound = std::uint64_t{s} << i;
            if (k[i] == 0 || k[i] >= k_bound) throw std::invalid_argument("XiParams: k[i] out of range");
            const std::uint32_t cd_bound = std::uint32_t{1} << (m + 1 - i);
            if (c[i] >= cd_bound || d[i] >= cd_bound) throw std::invalid_argument("XiParams: c or d out of range");
            for (std::uint32_t j = 0; j < i; ++j)
                if (k[i] == k[j]) throw std::invalid_argument("XiParams: k values must be distinct");
        }
    }
};

namespace detail {

inline std::vector<std::uint64_t> xi_terms(const XiParams& p) {
    const std::uint64_t s = p.s;
    std::vector<std::uint64_t> terms;
    terms.reserve(p.weight_nominal());
    terms.push_back(std::uint64_t{p.c_minus1} * s);
    for (std::uint32_t i = 0; i <= p.m; ++i) {
        const std::uint64_t stride = s << (i + 1);  // 2^(i+1) * s
        terms.push_back(p.k[i] + p.c[i] * stride);
        terms.push_back(p.k[i] + (s << i) + p.d[i] * stride);
    }
    return terms;
}

}  // namespace detail

/// Nullopt when term collisions drop the weight below 2m+3.
inline std::optional<SparsePoly> try_xi_poly(const XiParams& params) {
    params.validate();
    auto poly = SparsePoly::from_terms(params.n(), detail::xi_terms(params));
    if (poly.weight() != params.weight_nominal()) return std::nullopt;
    return poly;
}

/// Builds the family polynomial. Throws on parameter-bound violations and
/// on degenerate term collisions; the result always folds to the unit of
/// R_s, which is asserted.
inline SparsePoly xi_poly(const XiParams& params) {
    auto poly = try_xi_poly(params);
    if (!poly) throw std::invalid_argument("xi_poly: term collision, weight below 2m+3");
    if (!is_psi_unitary(*poly, PsiParams{params.s, params.m + 2, 0}))
        throw std::logic_error("xi_poly: result does not fold to the ring unit");
    return *poly;
}

/// True when the sufficient conditions k_{i+1} > 2k_i and s > 2k_m hold,
/// under which the explicit design below is provably cycle-free.
inline bool goodmat_guarantee(std::uint32_t s, const std::vector<std::uint32_t>& k) {
    for (std::size_t i = 0; i + 1 < k.size(); ++i)
        if (k[i + 1] <= 2 * k[i]) return false;
    return s > 2 * k.back();
}

/// The explicit cycle-free design: support
/// (0; k_0; ...; k_m; k_0 + s; k_1 + 2s; ...; k_m + 2^m s) in R_{2^(m+2)s}.
/// Requires a strictly increasing k list; violations of the guarantee
/// conditions are allowed (callers re-check cycle-freeness themselves),
/// but when the guarantee holds the absence of cycles is asserted.
inline SparsePoly goodmat(std::uint32_t m, std::uint32_t s, const std::vector<std::uint32_t>& k) {
    if (s == 0) throw std::invalid_argument("goodmat: s must be positive");
    if (k.size() != m + 1) throw std::invalid_argument("goodmat: need exactly m+1 values of k");
    if (m + 2 >= 32 || (std::uint64_t{s} << (m + 2)) > 0xffffffffULL)
        throw std::invalid_argument("goodmat: ring size overflow");
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (k[i] == 0 || (i > 0 && k[i] <= k[i - 1]))
            throw std::invalid_argument("goodmat: k must be strictly increasing and positive");
    }
    const std::uint32_t n = (std::uint32_t{1} << (m + 2)) * s;
    std::vector<std::uint64_t> terms;
    terms.push_back(0);
    for (std::uint32_t i = 0; i <= m; ++i) terms.push_back(k[i]);
    for (std::uint32_t i = 0; i <= m; ++i) terms.push_back(k[i] + (std::uint64_t{s} << i));
    auto poly = SparsePoly::from_terms(n, std::move(terms));
    if (poly.weight() != 2 * m + 3) throw std::invalid_argument("goodmat: degenerate k, terms collide");
    if (goodmat_guarantee(s, k) && has_length4_cycle(poly))
        throw std::logic_error("goodmat: guarantee conditions held but a cycle was found");
    return poly;
}

/// Draws k uniformly under 0 < k_0 < ... < k_m and s > 2k_m, builds the
/// explicit design and keeps it when cycle-free. strict additionally
/// imposes k_{i+1} > 2k_i on the draw. Nullopt when max_tries draws are
/// spent or the constraint set is empty.
inline std::optional<SparsePoly> sample_cycle_free(std::uint32_t m, std::uint32_t s, Rng& rng,
                                                   std::uint32_t max_tries = 1000, bool strict = false) {
    if (s <= 2) throw std::invalid_argument("sample_cycle_free: s must exceed 2");
    const std::uint32_t cap = (s - 1) / 2;  // s > 2k requires k <= (s-1)/2
    if (cap < m + 1) return std::nullopt;

    std::vector<std::uint32_t> k(m + 1);
    for (std::uint32_t attempt = 0; attempt < max_tries; ++attempt) {
        for (std::uint32_t i = 0; i <= m; ++i) {
            for (;;) {
                k[i] = static_cast<std::uint32_t>(rng.range(1, cap));
                bool dup = false;
                for (std::uint32_t j = 0; j < i; ++j) dup = dup || (k[j] == k[i]);
                if (!dup) break;
            }
        }
        std::sort(k.begin(), k.end());
        if (strict) {
            bool chain = true;
            for (std::uint32_t i = 0; i + 1 <= m; ++i) chain = chain && (k[i + 1] > 2 * k[i]);
            if (!chain) continue;
        }
        auto poly = goodmat(m, s, k);
        if (!has_length4_cycle(poly)) return poly;
    }
    return std::nullopt;
}

/// Representative of the shift class: for m = 0, members that differ by a
/// cyclic shift of s = n/4 positions (or a multiple) describe the same
/// design, so the lexicographically smallest of the four shifts is
/// returned. No classes are defined for m > 0; the input passes through.
inline SparsePoly canonical_rep(const SparsePoly& a, std::uint32_t m, std::uint32_t s) {
    if (a.ring_size() != (std::uint32_t{1} << (m + 2)) * s)
        throw std::invalid_argument("canonical_rep: ring size does not match m, s");
    if (m > 0) return a;
    SparsePoly best = a;
    for (std::uint32_t j = 1; j < 4; ++j) {
        auto candidate = shift(a, static_cast<std::int64_t>(j) * s);
        if (candidate.support() < best.support()) best = candidate;
    }
    return best;
}

namespace detail {

inline bool assign_xi_levels(const std::vector<std::uint32_t>& remaining, std::uint32_t level, XiParams& p) {
    const std::uint64_t s = p.s;
    if (level > p.m) return remaining.empty();
    const std::uint64_t half = s << level;        // 2^i * s
    const std::uint64_t stride = s << (level + 1);  // 2^(i+1) * s
    for (std::size_t x = 0; x < remaining.size(); ++x) {
        const std::uint64_t rx = remaining[x] % stride;
        if (rx == 0 || rx >= half) continue;  // must read as k_i + c_i * stride
        const std::uint32_t k = static_cast<std::uint32_t>(rx);
        for (std::size_t y = 0; y < remaining.size(); ++y) {
            if (y == x) continue;
            if (remaining[y] % stride != (k + half) % stride) continue;
            XiParams trial = p;
            trial.k[level] = k;
            trial.c[level] = static_cast<std::uint32_t>(remaining[x] / stride);
            trial.d[level] = static_cast<std::uint32_t>(remaining[y] / stride);
            std::vector<std::uint32_t> rest;
            for (std::size_t t = 0; t < remaining.size(); ++t)
                if (t != x && t != y) rest.push_back(remaining[t]);
            if (assign_xi_levels(rest, level + 1, trial)) {
                p = trial;
                return true;
            }
        }
    }
    return false;
}

}  // namespace detail

/// Attempts to read a polynomial back as family parameters: one anchor
/// term c_{-1}*s plus a (k_i, k_i + 2^i s) pair per level, modulo the
/// level strides. Returns the parameter set whose xi_poly reproduces the
/// input exactly, or nullopt when the support does not have the shape.
inline std::optional<XiParams> recognize_xi(const SparsePoly& a) {
    const std::uint32_t w = a.weight();
    if (w < 3 || w % 2 == 0) return std::nullopt;
    const std::uint32_t m = (w - 3) / 2;
    if (m + 2 >= 32) return std::nullopt;
    const std::uint32_t div = std::uint32_t{1} << (m + 2);
    if (a.ring_size() % div != 0) return std::nullopt;
    const std::uint32_t s = a.ring_size() / div;

    for (std::uint32_t cm = 0; cm < 4; ++cm) {
        const std::uint32_t anchor = static_cast<std::uint32_t>((std::uint64_t{cm} * s) % a.ring_size());
        std::vector<std::uint32_t> remaining;
        bool anchor_found = false;
        for (auto e : a.support()) {
            if (!anchor_found && e == anchor)
                anchor_found = true;
            else
                remaining.push_back(e);
        }
        if (!anchor_found) continue;

        XiParams p;
        p.m = m;
        p.s = s;
        p.c_minus1 = cm;
        p.k.assign(m + 1, 0);
        p.c.assign(m + 1, 0);
        p.d.assign(m + 1, 0);
        if (!detail::assign_xi_levels(remaining, 0, p)) continue;
        try {
            if (xi_poly(p) == a) return p;
        } catch (const std::invalid_argument&) {
        }
    }
    return std::nullopt;
}

/// Flat key=value record in the CLI config style.
inline std::string xi_params_to_config(const XiParams& p) {
    const auto list = [](const std::vector<std::uint32_t>& v) {
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(v[i]);
        }
        return out;
    };
    std::string out;
    out += "m=" + std::to_string(p.m) + "\n";
    out += "s=" + std::to_string(p.s) + "\n";
    out += "k=" + list(p.k) + "\n";
    out += "c_minus1=" + std::to_string(p.c_minus1) + "\n";
    out += "c=" + list(p.c) + "\n";
    out += "d=" + list(p.d) + "\n";
    return out;
}

inline XiParams xi_params_from_config(const std::string& text) {
    XiParams p;
    p.k.clear();
    bool got_m = false, got_s = false;
    std::istringstream in(text);
    std::string line;
    const auto parse_list = [](const std::string& value) {
        std::vector<std::uint32_t> out;
        std::istringstream vs(value);
        std::string item;
        while (std::getline(vs, item, ',')) {
            if (item.empty()) throw std::invalid_argument("xi_params_from_config: empty list entry");
            out.push_back(static_cast<std::uint32_t>(std::stoul(item)));
        }
        return out;
    };
    while (std::getline(in, line)) {
        const auto eq = line.find('=');
        if (line.empty() || line[0] == '#') continue;
        if (eq == std::string::npos) throw std::invalid_argument("xi_params_from_config: expected key=value");
        const std::string key = line.substr(0, eq), value = line.substr(eq + 1);
        if (key == "m") {
            p.m = static_cast<std::uint32_t>(std::stoul(value));
            got_m = true;
        } else if (key == "s") {
            p.s = static_cast<std::uint32_t>(std::stoul(value));
            got_s = true;
        } else if (key == "k") {
            p.k = parse_list(value);
        } else if (key == "c_minus1") {
            p.c_minus1 = static_cast<std::uint32_t>(std::stoul(value));
        } else if (key == "c") {
            p.c = parse_list(value);
        } else if (key == "d") {
            p.d = parse_list(value);
        } else {
            throw std::invalid_argument("xi_params_from_config: unknown key '" + key + "'");
        }
    }
    if (!got_m || !got_s || p.k.empty()) throw std::invalid_argument("xi_params_from_config: missing m, s or k");
    if (p.c.empty()) p.c.assign(p.m + 1, 0);
    if (p.d.empty()) p.d.assign(p.m + 1, 0);
    p.validate();
    return p;
}

/// Uniform draw over the whole valid parameter grid (k distinct within
/// their individual bounds, all c, d, c_{-1} free). Term collisions are
/// not screened here; callers that need full weight redraw on collision.
inline XiParams random_xi_params(std::uint32_t m, std::uint32_t s, Rng& rng) {
    if (s < 2) throw std::invalid_argument("random_xi_params: s must be at least 2 so 0 < k_0 < s is non-empty");
    XiParams p;
    p.m = m;
    p.s = s;
    p.k.resize(m + 1);
    p.c.resize(m + 1);
    p.d.resize(m + 1);
    p.c_minus1 = static_cast<std::uint32_t>(rng.below(4));
    for (std::uint32_t i = 0; i <= m; ++i) {
        const std::uint64_t k_bound = std::uint64_t{s} << i;
        for (;;) {
            p.k[i] = static_cast<std::uint32_t>(rng.range(1, k_bound - 1));
            bool dup = false;
            for (std::uint32_t j = 0; j < i; ++j) dup = dup || (p.k[j] == p.k[i]);
            if (!dup) break;
        }
        const std::uint32_t cd_bound = std::uint32_t{1} << (m + 1 - i);
        p.c[i] = static_cast<std::uint32_t>(rng.below(cd_bound));
        p.d[i] = static_cast<std::uint32_t>(rng.below(cd_bound));
    }
    p.validate();
    return p;
}

}  // namespace qcldgm
