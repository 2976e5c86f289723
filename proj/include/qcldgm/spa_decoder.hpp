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

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "parallel.hpp"
#include "qc_ldgm.hpp"
#include "rng.hpp"

namespace qcldgm {

// ---------------------------------------------------------------------------
// Tanner graph of a row of circulant blocks

/// Bipartite adjacency: one check node per parity equation (n of them),
/// one variable node per codeword bit. Check c touches variable
/// i*n + ((e + c) mod n) for every exponent e of block i, so every check
/// has degree sum W[blocks] and variables inherit their block weight.
struct TannerGraph {
    std::uint32_t n_checks = 0;
    std::uint32_t n_vars = 0;
    std::vector<std::uint32_t> check_ptr;  // size n_checks + 1, CSR over edges
    std::vector<std::uint32_t> edge_var;   // variable of each edge
    std::vector<std::uint32_t> var_ptr;    // size n_vars + 1
    std::vector<std::uint32_t> var_edge;   // edge ids touching each variable

    std::uint32_t edges() const { return static_cast<std::uint32_t>(edge_var.size()); }
};

inline TannerGraph build_graph(const QcLdgmCode& code) {
    TannerGraph g;
    g.n_checks = code.n;
    g.n_vars = code.length();

    std::uint32_t degree = 0;
    for (const auto& b : code.blocks) degree += b.weight();

    g.check_ptr.resize(g.n_checks + 1);
    g.edge_var.reserve(std::size_t{degree} * g.n_checks);
    for (std::uint32_t c = 0; c < g.n_checks; ++c) {
        g.check_ptr[c] = static_cast<std::uint32_t>(g.edge_var.size());
        for (std::uint32_t i = 0; i < code.block_count; ++i) {
            for (auto e : code.blocks[i].support()) g.edge_var.push_back(i * code.n + (e + c) % code.n);
        }
    }
    g.check_ptr[g.n_checks] = static_cast<std::uint32_t>(g.edge_var.size());

    g.var_ptr.assign(g.n_vars + 1, 0);
    for (auto v : g.edge_var) ++g.var_ptr[v + 1];
    for (std::uint32_t v = 0; v < g.n_vars; ++v) g.var_ptr[v + 1] += g.var_ptr[v];
    g.var_edge.resize(g.edge_var.size());
    std::vector<std::uint32_t> cursor(g.var_ptr.begin(), g.var_ptr.end() - 1);
    for (std::uint32_t e = 0; e < g.edges(); ++e) g.var_edge[cursor[g.edge_var[e]]++] = e;
    return g;
}

// ---------------------------------------------------------------------------
// Channels

enum class Channel { bsc, awgn };

/// One operating point. For the Gaussian channel `param` is Eb/N0 in dB
/// and sigma^2 = 1 / (2 R 10^(param/10)) under unit-energy antipodal
/// signaling with bit 0 mapped to +1.
struct ChannelPoint {
    Channel kind = Channel::bsc;
    double param = 0.01;  // transition probability, or Eb/N0 [dB]
    double rate = 0.5;

    double sigma() const { return std::sqrt(1.0 / (2.0 * rate * std::pow(10.0, param / 10.0))); }

    void validate() const {
        if (kind == Channel::bsc && !(param > 0.0 && param < 0.5))
            throw std::invalid_argument("ChannelPoint: BSC needs 0 < p < 0.5");
        if (kind == Channel::awgn && !(rate > 0.0)) throw std::invalid_argument("ChannelPoint: rate must be positive");
    }
};

inline const char* channel_name(Channel c) { return c == Channel::bsc ? "bsc" : "awgn"; }

constexpr double kLlrClip = 38.0;

inline double clip_llr(double v) { return v > kLlrClip ? kLlrClip : (v < -kLlrClip ? -kLlrClip : v); }

/// Hard-input LLRs: L = (1 - 2 r) ln((1-p)/p).
inline std::vector<double> llr_init(const std::vector<std::uint8_t>& received, const ChannelPoint& point) {
    if (point.kind != Channel::bsc) throw std::invalid_argument("llr_init: bit input is for the BSC");
    point.validate();
    const double mag = std::log((1.0 - point.param) / point.param);
    std::vector<double> llr(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) llr[i] = clip_llr(received[i] ? -mag : mag);
    return llr;
}

/// Soft-input LLRs: L = 2 y / sigma^2.
inline std::vector<double> llr_init(const std::vector<double>& received, const ChannelPoint& point) {
    if (point.kind != Channel::awgn) throw std::invalid_argument("llr_init: soft input is for the AWGN channel");
    point.validate();
    const double s2 = point.sigma() * point.sigma();
    std::vector<double> llr(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) llr[i] = clip_llr(2.0 * received[i] / s2);
    return llr;
}

// ---------------------------------------------------------------------------
// Flooding sum-product decoder

struct DecodeResult {
    std::vector<std::uint8_t> bits;
    std::uint32_t iterations = 0;
    bool converged = false;
};

/// Reusable decoder state. The check update is the exact tanh product rule
/// evaluated through forward/backward partial products (no division), with
/// messages clipped to +-38 so the hyperbolics stay in range; min-sum is
/// available behind a flag. Ties (total LLR exactly 0) decide to bit 1.
class Decoder {
public:
    explicit Decoder(const TannerGraph& graph) : g_(&graph) {
        v2c_.resize(g_->edges());
        c2v_.resize(g_->edges());
        tanh_buf_.resize(g_->edges());
        fwd_.resize(64);
        totals_.resize(g_->n_vars);
        hard_.resize(g_->n_vars);
    }

    DecodeResult run(const std::vector<double>& channel_llr, std::uint32_t max_iter, bool min_sum = false) {
        if (channel_llr.size() != g_->n_vars) throw std::invalid_argument("decode: LLR length mismatch");
        DecodeResult res;

        // iteration 0: the channel hard decision may already be a codeword
        for (std::uint32_t v = 0; v < g_->n_vars; ++v) {
            totals_[v] = channel_llr[v];
            hard_[v] = channel_llr[v] <= 0.0 ? 1 : 0;
        }
        if (syndrome_clear()) {
            res.bits = hard_;
            res.iterations = 0;
            res.converged = true;
            return res;
        }

        for (std::uint32_t e = 0; e < g_->edges(); ++e) v2c_[e] = clip_llr(channel_llr[g_->edge_var[e]]);

        for (std::uint32_t iter = 1; iter <= max_iter; ++iter) {
            min_sum ? check_pass_min_sum() : check_pass_tanh();

            for (std::uint32_t v = 0; v < g_->n_vars; ++v) {
                double total = channel_llr[v];
                for (std::uint32_t t = g_->var_ptr[v]; t < g_->var_ptr[v + 1]; ++t) total += c2v_[g_->var_edge[t]];
                totals_[v] = total;
                hard_[v] = total <= 0.0 ? 1 : 0;
                for (std::uint32_t t = g_->var_ptr[v]; t < g_->var_ptr[v + 1]; ++t) {
                    const std::uint32_t e = g_->var_edge[t];
                    v2c_[e] = clip_llr(total - c2v_[e]);
                }
            }

            if (syndrome_clear()) {
                res.bits = hard_;
                res.iterations = iter;
                res.converged = true;
                return res;
            }
        }
        res.bits = hard_;
        res.iterations = max_iter;
        res.converged = false;
        return res;
    }

    /// A-posteriori totals of the last run (channel plus all check inputs).
    const std::vector<double>& posteriors() const { return totals_; }

private:
    bool syndrome_clear() const {
        for (std::uint32_t c = 0; c < g_->n_checks; ++c) {
            unsigned parity = 0;
            for (std::uint32_t e = g_->check_ptr[c]; e < g_->check_ptr[c + 1]; ++e) parity ^= hard_[g_->edge_var[e]];
            if (parity) return false;
        }
        return true;
    }

    void check_pass_tanh() {
        constexpr double kAtanhClamp = 1.0 - 1e-15;
        for (std::uint32_t c = 0; c < g_->n_checks; ++c) {
            const std::uint32_t begin = g_->check_ptr[c], end = g_->check_ptr[c + 1];
            const std::uint32_t deg = end - begin;
            if (fwd_.size() < deg + 1) fwd_.resize(deg + 1);
            for (std::uint32_t i = 0; i < deg; ++i) tanh_buf_[begin + i] = std::tanh(0.5 * v2c_[begin + i]);
            fwd_[0] = 1.0;
            for (std::uint32_t i = 0; i < deg; ++i) fwd_[i + 1] = fwd_[i] * tanh_buf_[begin + i];
            double back = 1.0;
            for (std::uint32_t i = deg; i-- > 0;) {
                double prod = fwd_[i] * back;
                if (prod > kAtanhClamp) prod = kAtanhClamp;
                if (prod < -kAtanhClamp) prod = -kAtanhClamp;
                c2v_[begin + i] = clip_llr(2.0 * std::atanh(prod));
                back *= tanh_buf_[begin + i];
            }
        }
    }

    void check_pass_min_sum() {
        for (std::uint32_t c = 0; c < g_->n_checks; ++c) {
            const std::uint32_t begin = g_->check_ptr[c], end = g_->check_ptr[c + 1];
            double min1 = 1e300, min2 = 1e300;
            std::uint32_t arg1 = begin;
            unsigned sign_all = 0;
            for (std::uint32_t e = begin; e < end; ++e) {
                const double mag = std::fabs(v2c_[e]);
                sign_all ^= (v2c_[e] < 0.0);
                if (mag < min1) {
                    min2 = min1;
                    min1 = mag;
                    arg1 = e;
                } else if (mag < min2) {
                    min2 = mag;
                }
            }
            for (std::uint32_t e = begin; e < end; ++e) {
                const unsigned sign = sign_all ^ (v2c_[e] < 0.0);
                const double mag = (e == arg1) ? min2 : min1;
                c2v_[e] = clip_llr(sign ? -mag : mag);
            }
        }
    }

    const TannerGraph* g_;
    std::vector<double> v2c_, c2v_, tanh_buf_, fwd_, totals_;
    std::vector<std::uint8_t> hard_;
};

inline DecodeResult decode(const TannerGraph& graph, const std::vector<double>& llr, std::uint32_t max_iter,
                           bool min_sum = false) {
    Decoder dec(graph);
    return dec.run(llr, max_iter, min_sum);
}

// ---------------------------------------------------------------------------
// Serial concatenation: inner decoder posteriors seed the outer decoder

struct ConcatenatedResult {
    DecodeResult inner;
    DecodeResult outer;
};

/// The outer codeword rides in the inner code's systematic positions, so
/// after inner decoding its a-posteriori totals at those positions replace
/// the channel prior of the outer decoder.
inline ConcatenatedResult decode_concatenated(const QcLdgmCode& inner_code, const TannerGraph& inner_graph,
                                              const TannerGraph& outer_graph, const std::vector<double>& channel_llr,
                                              std::uint32_t max_iter_inner, std::uint32_t max_iter_outer) {
    if (outer_graph.n_vars != inner_code.dimension())
        throw std::invalid_argument("decode_concatenated: outer length must equal inner dimension");
    ConcatenatedResult res;
    Decoder inner(inner_graph);
    res.inner = inner.run(channel_llr, max_iter_inner);
    std::vector<double> prior(inner.posteriors().begin(), inner.posteriors().begin() + outer_graph.n_vars);
    for (auto& v : prior) v = clip_llr(v);
    res.outer = decode(outer_graph, prior, max_iter_outer);
    return res;
}

// ---------------------------------------------------------------------------
// Monte Carlo simulation

struct StopRule {
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t min_frame_errors = 100;
};

struct SimResult {
    std::uint64_t frames = 0;
    std::uint64_t bit_errors = 0;    // information-bit errors
    std::uint64_t frame_errors = 0;  // frames with wrong information bits
    std::uint64_t undetected = 0;    // converged but wrong
    std::uint64_t total_iterations = 0;
    std::uint32_t max_iter = 0;
    std::uint64_t seed = 0;

    double ber(std::uint32_t k_bits) const {
        return frames ? static_cast<double>(bit_errors) / (static_cast<double>(frames) * k_bits) : 0.0;
    }
    double fer() const { return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0; }
    double avg_iterations() const {
        return frames ? static_cast<double>(total_iterations) / static_cast<double>(frames) : 0.0;
    }

    void merge(const SimResult& o) {
        frames += o.frames;
        bit_errors += o.bit_errors;
        frame_errors += o.frame_errors;
        undetected += o.undetected;
        total_iterations += o.total_iterations;
    }
};

struct SimOptions {
    std::uint32_t max_iter = 100;
    bool min_sum = false;
    bool all_zero_codeword = false;  // channel-symmetry experiments
    unsigned workers = 0;            // 0 = hardware concurrency
    std::uint64_t batch = 4096;      // frames between stop-rule checks
    /// When set, the transmitted-xor-decoded pattern of every undetected
    /// error is appended here (mutex-guarded).
    std::vector<std::vector<BitVec>>* undetected_patterns = nullptr;
};

namespace detail {

struct FrameWorkspace {
    explicit FrameWorkspace(const QcLdgmCode& code, const TannerGraph& graph)
        : decoder(graph),
          info(code.block_count - 1, BitVec(code.n)),
          llr(code.length()),
          soft(code.length()) {}

    Decoder decoder;
    std::vector<BitVec> info;
    std::vector<BitVec> codeword;
    std::vector<double> llr;
    std::vector<double> soft;
};

/// Runs one frame: draw information, encode, push through the channel,
/// decode, compare. Deterministic given (seed, frame index).
inline void run_frame(const QcLdgmCode& code, const ChannelPoint& point, const SimOptions& opts,
                      std::uint64_t seed, std::uint64_t frame, FrameWorkspace& ws, SimResult& tally,
                      std::mutex* pattern_mutex) {
    Rng rng = Rng::fork(seed, frame);
    const std::uint32_t n = code.n;

    if (opts.all_zero_codeword) {
        for (auto& b : ws.info) b.reset();
    } else {
        for (auto& b : ws.info) b = BitVec::random(n, rng);
    }
    ws.codeword = encode(code, ws.info);

    const double mag = point.kind == Channel::bsc ? std::log((1.0 - point.param) / point.param) : 0.0;
    const double s2 = point.kind == Channel::awgn ? point.sigma() * point.sigma() : 0.0;

    if (point.kind == Channel::bsc) {
        for (std::uint32_t b = 0; b < code.block_count; ++b)
            for (std::uint32_t j = 0; j < n; ++j) {
                const bool r = ws.codeword[b].test(j) ^ rng.bernoulli(point.param);
                ws.llr[b * n + j] = clip_llr(r ? -mag : mag);
            }
    } else {
        for (std::uint32_t b = 0; b < code.block_count; ++b)
            for (std::uint32_t j = 0; j < n; ++j) {
                const double tx = ws.codeword[b].test(j) ? -1.0 : 1.0;
                const double y = tx + point.sigma() * rng.gaussian();
                ws.llr[b * n + j] = clip_llr(2.0 * y / s2);
            }
    }

    const DecodeResult res = ws.decoder.run(ws.llr, opts.max_iter, opts.min_sum);

    std::uint64_t wrong_info = 0;
    for (std::uint32_t b = 0; b + 1 < code.block_count; ++b)
        for (std::uint32_t j = 0; j < n; ++j)
            wrong_info += (res.bits[b * n + j] != static_cast<std::uint8_t>(ws.codeword[b].test(j)));

    ++tally.frames;
    tally.total_iterations += res.iterations;
    tally.bit_errors += wrong_info;
    if (wrong_info) {
        ++tally.frame_errors;
        if (res.converged) {
            ++tally.undetected;
            if (opts.undetected_patterns) {
                std::vector<BitVec> diff(code.block_count, BitVec(n));
                for (std::uint32_t b = 0; b < code.block_count; ++b)
                    for (std::uint32_t j = 0; j < n; ++j)
                        if (res.bits[b * n + j] != static_cast<std::uint8_t>(ws.codeword[b].test(j)))
                            diff[b].set(j);
                const std::lock_guard<std::mutex> lock(*pattern_mutex);
                opts.undetected_patterns->push_back(std::move(diff));
            }
        }
    }
}

}  // namespace detail

/// Frame-parallel Monte Carlo. Frames are seeded individually, so the
/// tallies are byte-reproducible for a fixed seed whatever the worker
/// count; the stop rule is evaluated between fixed-size batches.
inline SimResult simulate(const QcLdgmCode& code, const TannerGraph& graph, const ChannelPoint& point,
                          const StopRule& stop, std::uint64_t seed, const SimOptions& opts = {}) {
    point.validate();
    SimResult total;
    total.max_iter = opts.max_iter;
    total.seed = seed;

    const unsigned workers = effective_workers(opts.workers);
    std::vector<detail::FrameWorkspace> spaces;
    spaces.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) spaces.emplace_back(code, graph);
    std::mutex pattern_mutex;

    std::uint64_t next_frame = 0;
    while (total.frames < stop.max_frames && total.frame_errors < stop.min_frame_errors) {
        const std::uint64_t batch = std::min<std::uint64_t>(opts.batch, stop.max_frames - next_frame);
        if (batch == 0) break;
        std::vector<SimResult> partial(workers);
        parallel_ranges(batch, workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            for (std::uint64_t f = begin; f < end; ++f)
                detail::run_frame(code, point, opts, seed, next_frame + f, spaces[w], partial[w], &pattern_mutex);
        });
        for (const auto& p : partial) total.merge(p);
        next_frame += batch;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Results CSV

inline void write_sim_csv_header(std::ostream& os) {
    os << "code_id,channel,param,frames,bit_errors,frame_errors,undetected,BER,FER,avg_iters,max_iter,seed\n";
}

inline void write_sim_csv_row(std::ostream& os, const std::string& code_id, std::uint32_t k_bits,
                              const ChannelPoint& point, const SimResult& r) {
    char buf[320];
    std::snprintf(buf, sizeof(buf), "%s,%s,%.6g,%llu,%llu,%llu,%llu,%.6e,%.6e,%.3f,%u,%llu\n", code_id.c_str(),
                  channel_name(point.kind), point.param, static_cast<unsigned long long>(r.frames),
                  static_cast<unsigned long long>(r.bit_errors), static_cast<unsigned long long>(r.frame_errors),
                  static_cast<unsigned long long>(r.undetected), r.ber(k_bits), r.fer(), r.avg_iterations(),
                  r.max_iter, static_cast<unsigned long long>(r.seed));
    os << buf;
}

}  // namespace qcldgm
