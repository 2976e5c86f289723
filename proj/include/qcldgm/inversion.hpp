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

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "gf2_poly.hpp"
#include "parallel.hpp"
#include "psi.hpp"
#include "rng.hpp"
#include "xi_design.hpp"

namespace qcldgm {

enum class InvMethod { fast, euclid };

struct InverseReport {
    SparsePoly a;
    SparsePoly a_inv;
    SparsePoly w;  // zero for the Euclid route
    InvMethod method = InvMethod::fast;
    std::uint32_t weight_inv = 0;
    std::uint64_t bound = 0;
};

/// Weight cap for the inverse of a full-weight family member:
/// 9 at m = 0, 45 at m = 1, then 11 * (2m+3) * prod_{k=2}^{m} (2k+3).
inline std::uint64_t inverse_weight_bound(std::uint32_t m) {
    if (m == 0) return 9;
    if (m == 1) return 45;
    std::uint64_t bound = 11 * (2 * std::uint64_t{m} + 3);
    for (std::uint32_t k = 2; k <= m; ++k) bound *= 2 * std::uint64_t{k} + 3;
    return bound;
}

/// Closed form of the coset offset w with a^{-2^m} = a^{2^m} + w. Only the
/// parity of c_{-1} and the value of k_0 matter; k_1..k_m never appear.
/// The support is a fixed six- or twelve-term pattern in k_0 and s, with
/// every exponent scaled by 2^m, all mod n = 2^(m+2)*s.
inline SparsePoly w_closed_form(std::uint32_t m, std::uint32_t s, std::uint32_t c_minus1, std::uint32_t k0) {
    if (s == 0 || k0 == 0 || k0 >= s) throw std::invalid_argument("w_closed_form: need 0 < k0 < s");
    if (c_minus1 >= 4) throw std::invalid_argument("w_closed_form: c_minus1 out of range");
    if (m + 2 >= 32 || (std::uint64_t{s} << (m + 2)) > 0xffffffffULL)
        throw std::invalid_argument("w_closed_form: ring size overflow");
    const std::uint32_t n = (std::uint32_t{1} << (m + 2)) * s;
    const std::uint64_t K = k0, S = s;
    auto& base = detail::term_scratch();
    base.clear();
    if (c_minus1 % 2 == 0) {
        base = {2 * K, 3 * K, 3 * K + S, 2 * K + 2 * S, 3 * K + 2 * S, 3 * K + 3 * S};
    } else {
        base = {K,         3 * K,         S,     K + S,     2 * K + S, 3 * K + S,
                K + 2 * S, 3 * K + 2 * S, 3 * S, K + 3 * S, 2 * K + 3 * S, 3 * K + 3 * S};
    }
    for (auto& e : base) e <<= m;
    return detail::reduce_terms(n, base);
}

/// One Euclid inversion buys w for a whole coset a0 + <x^{n/2} - 1>:
/// w = a0^{-2^m} + a0^{2^m}, reusable for every member of the coset.
inline SparsePoly coset_w(const SparsePoly& a0, std::uint32_t m, std::uint32_t s) {
    if (a0.ring_size() != (std::uint32_t{1} << (m + 2)) * s)
        throw std::invalid_argument("coset_w: ring size does not match m, s");
    const auto inv = euclid_inverse(a0);
    if (!inv) throw std::invalid_argument("coset_w: polynomial is not invertible");
    return add(pow2k(*inv, m), pow2k(a0, m));
}

namespace detail {

/// The computational path alone: closed-form w, the Frobenius power chain
/// and the final product. No verification; the benchmark times exactly
/// this (and cross-checks the results against Euclid outside the clock).
inline SparsePoly fast_inverse_core(const SparsePoly& a, const XiParams& params, const SparsePoly& w) {
    if (params.m == 0) return add(a, w);
    SparsePoly inv = add(pow2k(a, params.m), w);
    for (std::uint32_t i = 0; i < params.m; ++i) inv = mul(inv, pow2k(a, i));
    return inv;
}

}  // namespace detail

/// Closed-form inversion for family members:
///   a^{-1} = (a^{2^m} + w) * prod_{i=0}^{m-1} a^{2^i},
/// with the powers computed by Frobenius exponent doubling. The defining
/// property a^{2^m} * w == 1 + a^{2^(m+1)} is checked first; if the
/// closed-form w fails it (degenerate parameter collisions), w is
/// recomputed from one Euclid inversion of the coset. The final product
/// is verified to multiply back to the unit.
inline InverseReport fast_inverse_prepared(const SparsePoly& a, const XiParams& params) {
    SparsePoly w = w_closed_form(params.m, params.s, params.c_minus1, params.k[0]);

    // defining relation, rearranged: a^(2^m) w + a^(2^(m+1)) == 1
    const SparsePoly a_2m = pow2k(a, params.m);
    if (!add(mul(a_2m, w), square(a_2m)).is_one()) w = coset_w(a, params.m, params.s);

    SparsePoly inv = detail::fast_inverse_core(a, params, w);
    if (!mul(a, inv).is_one()) throw std::logic_error("fast_inverse: product check failed");
    const std::uint32_t weight = inv.weight();
    return InverseReport{a, std::move(inv), std::move(w), InvMethod::fast, weight, inverse_weight_bound(params.m)};
}

inline InverseReport fast_inverse(const XiParams& params) { return fast_inverse_prepared(xi_poly(params), params); }

// ---------------------------------------------------------------------------
// Inverse-weight statistics

struct WeightHistogram {
    std::uint32_t m = 0;
    std::uint32_t s = 0;
    std::uint64_t samples = 0;
    std::uint64_t collision_redraws = 0;
    std::map<std::uint32_t, std::uint64_t> counts;

    double mean() const {
        double acc = 0;
        for (const auto& [w, c] : counts) acc += static_cast<double>(w) * static_cast<double>(c);
        return samples ? acc / static_cast<double>(samples) : 0.0;
    }
    double percent(std::uint32_t w) const {
        const auto it = counts.find(w);
        if (it == counts.end() || samples == 0) return 0.0;
        return 100.0 * static_cast<double>(it->second) / static_cast<double>(samples);
    }
};

/// Tallies W[a^{-1}] over `samples` parameter draws taken uniformly from
/// the valid grid; draws whose terms collide (weight below 2m+3) are
/// redrawn and counted separately. Deterministic for a fixed seed
/// regardless of worker count (each sample forks its own stream).
inline WeightHistogram weight_distribution(std::uint32_t m, std::uint32_t s, std::uint64_t samples,
                                           std::uint64_t seed, unsigned workers = 0) {
    WeightHistogram out;
    out.m = m;
    out.s = s;
    out.samples = samples;

    std::vector<WeightHistogram> partial(effective_workers(workers));
    parallel_ranges(samples, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        auto& h = partial[w];
        for (std::uint64_t i = begin; i < end; ++i) {
            Rng rng = Rng::fork(seed, i);
            for (;;) {
                const XiParams p = random_xi_params(m, s, rng);
                if (try_xi_poly(p)) {
                    ++h.counts[fast_inverse(p).weight_inv];
                    break;
                }
                ++h.collision_redraws;
            }
        }
    });
    for (const auto& h : partial) {
        out.collision_redraws += h.collision_redraws;
        for (const auto& [w, c] : h.counts) out.counts[w] += c;
    }
    return out;
}

/// Header metadata plus "weight,count,percent" rows.
inline void write_histogram_csv(std::ostream& os, const WeightHistogram& h) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "# m=%u s=%u samples=%llu collision_redraws=%llu distribution=uniform_grid\n",
                  h.m, h.s, static_cast<unsigned long long>(h.samples),
                  static_cast<unsigned long long>(h.collision_redraws));
    os << buf;
    std::snprintf(buf, sizeof(buf), "# mean_inverse_weight=%.4f\n", h.mean());
    os << buf;
    os << "weight,count,percent\n";
    for (const auto& [w, c] : h.counts) {
        std::snprintf(buf, sizeof(buf), "%u,%llu,%.4f\n", w, static_cast<unsigned long long>(c), h.percent(w));
        os << buf;
    }
}

// ---------------------------------------------------------------------------
// Euclid-vs-fast benchmark

struct BenchCell {
    std::uint32_t n = 0;
    std::uint32_t weight = 0;
    std::uint64_t trials = 0;
    double euclid_ns = 0;
    double fast_ns = 0;
};

struct BenchTable {
    std::vector<BenchCell> cells;
    double baseline_ns = 0;  // Euclid mean at the smallest (n, W) cell
};

/// Mean wall time per inversion, both methods over the same random
/// matrix set per cell. Runs single-threaded: timing is the payload.
/// Every fast result is compared against Euclid after the timed loops.
inline BenchTable bench_invert(const std::vector<std::uint32_t>& n_list, const std::vector<std::uint32_t>& weight_list,
                               std::uint64_t trials, std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    BenchTable table;
    if (trials == 0) return table;

    for (const auto weight : weight_list) {
        if (weight < 3 || weight % 2 == 0) throw std::invalid_argument("bench_invert: weight must be odd and >= 3");
        const std::uint32_t m = (weight - 3) / 2;
        for (const auto n : n_list) {
            const std::uint32_t block = std::uint32_t{1} << (m + 2);
            if (n % block != 0 || n / block < 2)
                throw std::invalid_argument("bench_invert: (n, W) pair is not realizable");
            const std::uint32_t s = n / block;

            std::vector<XiParams> params;
            std::vector<SparsePoly> polys;
            params.reserve(trials);
            Rng rng = Rng::fork(seed, (std::uint64_t{weight} << 32) | n);
            while (params.size() < trials) {
                XiParams p = random_xi_params(m, s, rng);
                if (auto poly = try_xi_poly(p)) {
                    params.push_back(std::move(p));
                    polys.push_back(std::move(*poly));
                }
            }

            std::vector<SparsePoly> euclid_out, fast_out;
            euclid_out.reserve(trials);
            fast_out.reserve(trials);

            const auto t0 = clock::now();
            for (const auto& a : polys) {
                auto inv = euclid_inverse(a);
                if (!inv) throw std::logic_error("bench_invert: family member not invertible");
                euclid_out.push_back(std::move(*inv));
            }
            const auto t1 = clock::now();
            for (std::uint64_t i = 0; i < trials; ++i) {
                auto w = w_closed_form(m, s, params[i].c_minus1, params[i].k[0]);
                fast_out.push_back(detail::fast_inverse_core(polys[i], params[i], w));
            }
            const auto t2 = clock::now();

            for (std::uint64_t i = 0; i < trials; ++i)
                if (euclid_out[i] != fast_out[i]) throw std::logic_error("bench_invert: methods disagree");

            BenchCell cell;
            cell.n = n;
            cell.weight = weight;
            cell.trials = trials;
            cell.euclid_ns = std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(trials);
            cell.fast_ns = std::chrono::duration<double, std::nano>(t2 - t1).count() / static_cast<double>(trials);
            table.cells.push_back(cell);
        }
    }

    // normalization cell: Euclid at the smallest weight and size measured
    const BenchCell* base = &table.cells.front();
    for (const auto& c : table.cells)
        if (c.weight < base->weight || (c.weight == base->weight && c.n < base->n)) base = &c;
    table.baseline_ns = base->euclid_ns;
    return table;
}

/// "n,W,method,mean_time_normalized,mean_time_ns" rows; normalization is
/// relative to the Euclid time of the smallest measured cell.
inline void write_bench_csv(std::ostream& os, const BenchTable& table) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), "# baseline_euclid_ns=%.1f\n", table.baseline_ns);
    os << buf;
    os << "n,W,method,mean_time_normalized,mean_time_ns\n";
    for (const auto& c : table.cells) {
        std::snprintf(buf, sizeof(buf), "%u,%u,euclid,%.4f,%.1f\n", c.n, c.weight, c.euclid_ns / table.baseline_ns,
                      c.euclid_ns);
        os << buf;
        std::snprintf(buf, sizeof(buf), "%u,%u,fast,%.4f,%.1f\n", c.n, c.weight, c.fast_ns / table.baseline_ns,
                      c.fast_ns);
        os << buf;
    }
}

// ---------------------------------------------------------------------------
// Numerical search for the realized maximum inverse weight

struct MaxWeightReport {
    std::uint32_t m = 0;
    std::uint32_t s_lo = 0, s_hi = 0;
    std::uint64_t samples = 0;  // per s value when randomized; 0 in exhaustive mode
    bool exhaustive_k = false;
    std::uint32_t max_weight = 0;
    XiParams argmax;
};

/// Maximum W[a^{-1}] found over the searched grid. Randomized mode draws
/// `samples_per_s` uniform parameter sets per s; exhaustive mode sweeps
/// every distinct k tuple and c_{-1} with c = d = 0 (feasible only for
/// small s). The report carries the grid so results stay comparable.
inline MaxWeightReport max_weight_search(std::uint32_t m, std::uint32_t s_lo, std::uint32_t s_hi,
                                         std::uint64_t samples_per_s, bool exhaustive_k, std::uint64_t seed,
                                         unsigned workers = 0) {
    if (m < 2) throw std::invalid_argument("max_weight_search: m must be at least 2");
    if (s_lo < 2 || s_hi < s_lo) throw std::invalid_argument("max_weight_search: bad s range");
    MaxWeightReport report;
    report.m = m;
    report.s_lo = s_lo;
    report.s_hi = s_hi;
    report.samples = exhaustive_k ? 0 : samples_per_s;
    report.exhaustive_k = exhaustive_k;

    const auto consider = [&report](const XiParams& p, std::uint32_t w) {
        if (w > report.max_weight) {
            report.max_weight = w;
            report.argmax = p;
        }
    };

    if (exhaustive_k) {
        if (m != 2) throw std::invalid_argument("max_weight_search: exhaustive sweep implemented for m == 2");
        for (std::uint32_t s = s_lo; s <= s_hi; ++s) {
            XiParams p;
            p.m = m;
            p.s = s;
            p.k = {1, 1, 1};
            p.c = {0, 0, 0};
            p.d = {0, 0, 0};
            for (std::uint32_t k0 = 1; k0 < s; ++k0)
                for (std::uint32_t k1 = 1; k1 < 2 * s; ++k1)
                    for (std::uint32_t k2 = 1; k2 < 4 * s; ++k2) {
                        if (k1 == k0 || k2 == k0 || k2 == k1) continue;
                        for (std::uint32_t cm = 0; cm < 4; ++cm) {
                            p.k = {k0, k1, k2};
                            p.c_minus1 = cm;
                            if (try_xi_poly(p)) consider(p, fast_inverse(p).weight_inv);
                        }
                    }
        }
        return report;
    }

    std::vector<MaxWeightReport> partial(effective_workers(workers), report);
    const std::uint64_t s_count = s_hi - s_lo + 1;
    parallel_ranges(s_count * samples_per_s, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
        auto& local = partial[w];
        for (std::uint64_t idx = begin; idx < end; ++idx) {
            const std::uint32_t s = s_lo + static_cast<std::uint32_t>(idx / samples_per_s);
            Rng rng = Rng::fork(seed, idx);
            XiParams p = random_xi_params(m, s, rng);
            if (!try_xi_poly(p)) continue;  // collision draws just shrink the sample
            const std::uint32_t wt = fast_inverse(p).weight_inv;
            if (wt > local.max_weight) {
                local.max_weight = wt;
                local.argmax = p;
            }
        }
    });
    for (const auto& local : partial)
        if (local.max_weight > report.max_weight) {
            report.max_weight = local.max_weight;
            report.argmax = local.argmax;
        }
    return report;
}

}  // namespace qcldgm
