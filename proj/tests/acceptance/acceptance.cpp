// Acceptance suite: one criterion per function, one PASS/FAIL line each.
// Run with no arguments for the full gate or with criterion numbers to
// select a subset, e.g. "acceptance 1 2 6".

#include <qcldgm/code_design.hpp>
#include <qcldgm/inversion.hpp>
#include <qcldgm/qc_ldgm.hpp>
#include <qcldgm/spa_decoder.hpp>
#include <qcldgm/xi_design.hpp>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../common/oracles.hpp"

using namespace qcldgm;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

using CriterionFn = std::function<Outcome()>;

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------------------

Outcome criterion1_worked_example() {
    Outcome out;
    const XiParams params{1, 7, {1, 3}, 0, {0, 0}, {0, 0}};
    const auto rep = fast_inverse(params);
    const auto w_expected = parse_poly("56:(4;6;20;32;34;48)");
    const auto sq_expected = parse_poly("56:(0;2;6;16;34)");
    const auto inv_expected = parse_poly("56:(1;2;4;7;8;9;10;12;16;20;23;24;28;32;35;37;40;48;51)");
    out.pass = rep.w == w_expected && square(rep.a) == sq_expected && rep.a_inv == inv_expected &&
               rep.weight_inv == 19 && euclid_inverse(rep.a) == rep.a_inv;
    out.detail = fmt("w, a^2 and the 19-term inverse of 56:(0;1;3;8;17) all exact; Euclid agrees: %s",
                     out.pass ? "yes" : "NO");
    return out;
}

Outcome criterion2_appendix_example() {
    Outcome out;
    const XiParams params{2, 11, {1, 3, 7}, 0, {0, 0, 0}, {0, 0, 0}};
    const auto rep = fast_inverse(params);
    const auto expected = parse_poly(
        "176:(0;1;2;8;12;14;15;16;17;19;20;24;28;32;36;39;40;43;44;48;56;60;63;68;72;80;84;87;92;96;103;105;107;"
        "108;120;127;131;132;144;151;156;168;175)");
    const bool base_ok = rep.a_inv == expected && rep.weight_inv == 43;

    const auto scaled = parse_poly("1408:(0;8;24;56;96;200;408)");
    const auto scaled_inv = euclid_inverse(scaled);
    const bool scaled_ok = scaled_inv && scaled_inv->weight() == 43 && mul(scaled, *scaled_inv).is_one();

    out.pass = base_ok && scaled_ok;
    out.detail = fmt("176-term case exact (W=43): %s; scaled 1408 case W[a_inv]=%u", base_ok ? "yes" : "NO",
                     scaled_inv ? scaled_inv->weight() : 0);
    return out;
}

Outcome criterion3_oracle_equivalence() {
    Outcome out;
    Rng rng(0x30313233ULL);
    std::uint64_t checked = 0, identity_failures = 0, mismatches = 0;
    while (checked < 1000) {
        const std::uint32_t m = static_cast<std::uint32_t>(rng.below(3));
        const std::uint32_t s = static_cast<std::uint32_t>(rng.range(8, 256));
        const XiParams p = random_xi_params(m, s, rng);
        const auto a = try_xi_poly(p);
        if (!a) continue;
        ++checked;

        const auto w = w_closed_form(m, s, p.c_minus1, p.k[0]);
        const auto lhs = mul(pow2k(*a, m), w);
        const auto rhs = add(SparsePoly::one(a->ring_size()), pow2k(*a, m + 1));
        identity_failures += (lhs != rhs);

        const auto rep = fast_inverse(p);
        const auto euclid = euclid_inverse(*a);
        mismatches += !(euclid && *euclid == rep.a_inv);
    }
    out.pass = identity_failures == 0 && mismatches == 0;
    out.detail = fmt("1000 random family members (m in {0,1,2}, s in [8,256]): %llu method mismatches, "
                     "%llu defining-identity failures",
                     static_cast<unsigned long long>(mismatches),
                     static_cast<unsigned long long>(identity_failures));
    return out;
}

Outcome criterion4_weight_range_exhaustive() {
    Outcome out;
    std::uint64_t cases = 0, violations = 0;
    for (std::uint32_t s = 3; s <= 64; ++s) {
        for (std::uint32_t k0 = 1; k0 < s; ++k0)
            for (std::uint32_t cm = 0; cm < 4; ++cm)
                for (std::uint32_t c0 = 0; c0 < 2; ++c0)
                    for (std::uint32_t d0 = 0; d0 < 2; ++d0) {
                        const XiParams p{0, s, {k0}, cm, {c0}, {d0}};
                        const auto a = try_xi_poly(p);
                        if (!a || has_length4_cycle(*a)) continue;
                        ++cases;
                        const auto rep = fast_inverse(p);
                        violations += (rep.weight_inv < 5 || rep.weight_inv > 9);
                    }
    }
    out.pass = violations == 0 && cases > 0;
    out.detail = fmt("%llu cycle-free weight-3 members over s in [3,64]: %llu outside [5,9]",
                     static_cast<unsigned long long>(cases), static_cast<unsigned long long>(violations));
    return out;
}

Outcome criterion5_weight_distribution() {
    Outcome out;
    const auto h16 = weight_distribution(1, 16, 20000, 0x51, 0);
    const auto h1024 = weight_distribution(1, 1024, 20000, 0x52, 0);
    const double mean16 = h16.mean(), pct45_16 = h16.percent(45), pct45_1024 = h1024.percent(45);
    const bool mean_ok = std::fabs(mean16 - 34.95) <= 0.5;
    const bool p16_ok = std::fabs(pct45_16 - 3.62) <= 0.5;
    const bool p1024_ok = std::fabs(pct45_1024 - 97.70) <= 0.5;
    out.pass = mean_ok && p16_ok && p1024_ok;
    out.detail = fmt("s=16: mean=%.3f (target 34.95+-0.5), w45=%.3f%% (3.62+-0.5); s=1024: w45=%.3f%% (97.70+-0.5)",
                     mean16, pct45_16, pct45_1024);
    return out;
}

Outcome criterion6_code_table() {
    Outcome out;
    std::ostringstream why;
    bool ok = true;

    // the five published psi-unitary last blocks and their inverse weights
    const std::vector<std::pair<std::string, std::uint32_t>> inverses = {
        {"512:(0;8;24;72;152)", 19}, {"312:(0;3;9;42;87)", 21},      {"376:(0;6;18;53;112)", 21},
        {"1024:(0;32;160;224;480)", 15}, {"500:(0;3;128)", 9},
    };
    for (const auto& [text, expect] : inverses) {
        const auto last = parse_poly(text);
        const auto code = build_code({SparsePoly::one(last.ring_size()), last});
        if (code.last_inverse.weight() != expect || euclid_inverse(last) != code.last_inverse) {
            ok = false;
            why << " W[inv " << text << "]=" << code.last_inverse.weight() << " want " << expect << ";";
        }
    }

    // derived columns from the block-weight lists of every published row
    struct Row {
        const char* name;
        std::uint32_t n;
        std::vector<std::uint32_t> weights;  // all Nb blocks
        std::uint32_t d_bar;
        std::uint64_t mult;
        double c_dec;
        std::int64_t c_enc;  // exact for identity-based rows, -1 to skip
    };
    const std::vector<Row> rows = {
        {"C_I(2560,2048)", 512, {6, 6, 6, 6, 1}, 7, 2048, 5.0, 24},
        {"C_psi(2560,2048)", 512, {5, 5, 5, 5, 5}, 10, 5120, 5.0, -1},
        {"C_I^a(1248,936)", 312, {5, 5, 5, 1}, 6, 936, 4.0, 15},
        {"C_I^b(1248,936)", 312, {7, 6, 6, 1}, 7, 624, 5.0, 19},
        {"C_psi(1248,936)", 312, {5, 5, 5, 5}, 10, 1872, 5.0, -1},
        {"C_I^a(1880,1504)", 376, {5, 5, 5, 5, 1}, 6, 1504, 4.2, 20},
        {"C_I^b(1880,1504)", 376, {6, 6, 6, 6, 1}, 7, 1504, 5.0, 24},
        {"C_psi(1880,1504)", 376, {5, 5, 5, 5, 5}, 10, 3760, 5.0, -1},
        {"C_I^a(8192,7168)", 1024, {5, 5, 5, 5, 5, 5, 5, 1}, 6, 7168, 4.5, 35},
        {"C_I^b(8192,7168)", 1024, {6, 6, 6, 6, 5, 5, 5, 1}, 6, 3072, 5.0, 39},
        {"C_psi(8192,7168)", 1024, {5, 5, 5, 5, 5, 5, 5, 5}, 10, 28672, 5.0, -1},
        {"C_I(10000,5000)", 5000, {5, 1}, 6, 5000, 3.0, 5},
        {"C_I(5000,4500)", 500, {4, 4, 3, 3, 3, 3, 3, 3, 3, 1}, 4, 3500, 3.0, 29},
        {"C_psi(5000,4500)", 500, {3, 3, 3, 3, 3, 3, 3, 3, 3, 3}, 6, 22500, 3.0, -1},
    };
    for (const auto& row : rows) {
        // synthesize blocks with the listed weights (identity last where the
        // listed weight is one)
        std::vector<SparsePoly> blocks;
        for (std::size_t i = 0; i < row.weights.size(); ++i) {
            const std::uint32_t w = row.weights[i];
            if (i + 1 == row.weights.size() && w == 1) {
                blocks.push_back(SparsePoly::one(row.n));
            } else {
                std::vector<std::uint32_t> sup(w);
                for (std::uint32_t t = 0; t < w; ++t) sup[t] = t + static_cast<std::uint32_t>(i);
                blocks.push_back(SparsePoly(row.n, sup));
            }
        }
        const auto code = build_code(std::move(blocks));
        const auto est = dmin_estimate(code);
        const auto cx = complexity(code);
        if (est.d_bar != row.d_bar || est.multiplicity != row.mult || std::fabs(cx.dec() - row.c_dec) > 1e-12) {
            ok = false;
            why << " " << row.name << ": d=" << est.d_bar << "/" << row.d_bar << " A=" << est.multiplicity << "/"
                << row.mult << " Cdec=" << cx.dec() << "/" << row.c_dec << ";";
        }
        if (row.c_enc >= 0 && static_cast<std::int64_t>(cx.enc) != row.c_enc) {
            ok = false;
            why << " " << row.name << ": Cenc=" << cx.enc << "/" << row.c_enc << ";";
        }
    }

    out.pass = ok;
    out.detail = ok ? "5 inverse weights (19,21,21,15,9) and all 14 rows of derived columns exact"
                    : "mismatches:" + why.str();
    return out;
}

Outcome criterion7_bounds() {
    Outcome out;
    const bool closed = inverse_weight_bound(2) == 539 && inverse_weight_bound(3) == 6237 &&
                        inverse_weight_bound(4) == 83853;
    const auto rep = max_weight_search(2, 4, 64, 2000, false, 0x71, 0);
    const bool range_ok = rep.max_weight >= 200 && rep.max_weight <= 539;
    out.pass = closed && range_ok;
    out.detail = fmt("closed-form caps 539/6237/83853: %s; randomized search m=2, s<=64 found max=%u "
                     "(expected in [200,539]; published search-dependent value 269)",
                     closed ? "exact" : "NO", rep.max_weight);
    return out;
}

Outcome criterion8_benchmark() {
    Outcome out;
    const std::vector<std::uint32_t> sizes = {128, 256, 512, 1024, 2048, 4096, 8192};
    const auto table = bench_invert(sizes, {3}, 1000, 0x81);
    double fast_min = 1e300, fast_max = 0, euclid_128 = 0, euclid_8192 = 0, fast_8192 = 0;
    for (const auto& c : table.cells) {
        fast_min = std::min(fast_min, c.fast_ns);
        fast_max = std::max(fast_max, c.fast_ns);
        if (c.n == 128) euclid_128 = c.euclid_ns;
        if (c.n == 8192) {
            euclid_8192 = c.euclid_ns;
            fast_8192 = c.fast_ns;
        }
    }
    const double fast_spread = fast_max / fast_min;
    const double euclid_growth = euclid_8192 / euclid_128;
    const double speedup = euclid_8192 / fast_8192;
    out.pass = fast_spread < 3.0 && euclid_growth > 50.0 && speedup >= 10.0;
    out.detail = fmt("W=3: fast spread %.2fx (<3), Euclid growth 128->8192 %.1fx (>50), fast speedup at 8192 %.1fx "
                     "(>=10)",
                     fast_spread, euclid_growth, speedup);
    return out;
}

Outcome criterion9_girth_oracle() {
    Outcome out;
    std::uint64_t singles = 0, failures = 0;
    Rng rng(0x91);
    // sampled cycle-free designs across every ring size up to 128
    for (std::uint32_t m = 0; m <= 1; ++m) {
        for (std::uint32_t s = 3; (std::uint64_t{s} << (m + 2)) <= 128; ++s) {
            for (int draw = 0; draw < 5; ++draw) {
                const auto poly = sample_cycle_free(m, s, rng, 500);
                if (!poly) continue;
                ++singles;
                failures += testutil::dense_has_4cycle({*poly});
            }
        }
    }
    // assembled parity-check rows of the shapes used in this suite (n <= 128);
    // tight shapes can exhaust a draw, so seeds advance until the quota of
    // accepted rows is met - every accepted row must pass the oracle
    std::uint64_t rows = 0;
    const auto assemble = [&](std::uint32_t nb, std::uint32_t n, std::uint32_t weight) {
        std::uint64_t accepted = 0;
        for (std::uint64_t seed = 1; seed <= 40 && accepted < 3; ++seed) {
            Rng setup(seed);
            try {
                const auto code = design_random_code(nb, n, weight, false, setup, 20000);
                ++accepted;
                ++rows;
                failures += testutil::dense_has_4cycle(code.blocks);
            } catch (const DesignExhausted&) {
            }
        }
        return accepted;
    };
    const std::uint64_t small_rows = assemble(3, 48, 3);
    const std::uint64_t wide_rows = assemble(4, 128, 5);
    out.pass = failures == 0 && singles > 50 && small_rows == 3 && wide_rows == 3;
    out.detail = fmt("%llu sampled designs and %llu assembled rows checked against the dense rectangle oracle: "
                     "%llu failures",
                     static_cast<unsigned long long>(singles), static_cast<unsigned long long>(rows),
                     static_cast<unsigned long long>(failures));
    return out;
}

Outcome criterion10_decoder_sanity() {
    Outcome out;
    Rng setup(11);
    const auto code = design_random_code(4, 312, 5, false, setup, 20000, "cpsi1248");
    const auto graph = build_graph(code);

    // noiseless frames decode perfectly at iteration zero, and the decoder's
    // convergence flag is re-checked against an independent syndrome path
    std::uint64_t noiseless_errors = 0, syndrome_violations = 0;
    for (int f = 0; f < 50; ++f) {
        Rng rng = Rng::fork(0xA0, static_cast<std::uint64_t>(f));
        std::vector<BitVec> info;
        for (int b = 0; b < 3; ++b) info.push_back(BitVec::random(312, rng));
        const auto cw = encode(code, info);
        std::vector<double> llr(code.length());
        for (std::uint32_t b = 0; b < 4; ++b)
            for (std::uint32_t j = 0; j < 312; ++j) llr[b * 312 + j] = cw[b].test(j) ? -20.0 : 20.0;
        const auto res = decode(graph, llr, 100);
        if (!res.converged || res.iterations != 0) ++noiseless_errors;
        std::vector<BitVec> decided(4, BitVec(312));
        for (std::uint32_t b = 0; b < 4; ++b)
            for (std::uint32_t j = 0; j < 312; ++j)
                if (res.bits[b * 312 + j]) decided[b].set(j);
        if (res.converged && !syndrome(code, decided).none()) ++syndrome_violations;
        for (std::uint32_t b = 0; b < 4; ++b)
            for (std::uint32_t j = 0; j < 312; ++j)
                noiseless_errors += (res.bits[b * 312 + j] != static_cast<std::uint8_t>(cw[b].test(j)));
    }

    SimOptions opts;
    opts.batch = 8192;
    const auto quiet = simulate(code, graph, ChannelPoint{Channel::bsc, 0.005, code.rate()},
                                StopRule{2'000'000, 100}, 0xA1, opts);
    const auto loud = simulate(code, graph, ChannelPoint{Channel::bsc, 0.02, code.rate()},
                               StopRule{2'000'000, 100}, 0xA2, opts);

    // FER ordering: compare the 99% upper bound at the quiet point against
    // the loud point (the quiet point may exhaust its frame budget before
    // reaching 100 errors; the stop rule caps it)
    const double quiet_upper = (static_cast<double>(quiet.frame_errors) + 4.6) / static_cast<double>(quiet.frames);
    const bool order_ok = quiet.fer() < loud.fer() && quiet_upper < loud.fer();
    const bool loud_errors_ok = loud.frame_errors >= 100;

    out.pass = noiseless_errors == 0 && syndrome_violations == 0 && order_ok && loud_errors_ok;
    out.detail = fmt("noiseless: 50/50 perfect; syndrome violations: %llu; FER(0.005)=%.3g (%llu errors / %llu "
                     "frames, 99%% upper %.3g) < FER(0.02)=%.3g (%llu errors)",
                     static_cast<unsigned long long>(syndrome_violations), quiet.fer(),
                     static_cast<unsigned long long>(quiet.frame_errors),
                     static_cast<unsigned long long>(quiet.frames), quiet_upper, loud.fer(),
                     static_cast<unsigned long long>(loud.frame_errors));
    return out;
}

Outcome criterion11_concatenation() {
    Outcome out;
    Rng setup(42);
    const auto inner = design_random_code(2, 1000, 5, true, setup, 20000, "inner");
    const auto outer = design_random_code(10, 100, 3, false, setup, 20000, "outer");
    const auto inner_graph = build_graph(inner);
    const auto outer_graph = build_graph(outer);
    const ChannelPoint point{Channel::awgn, 2.0, 0.5};

    std::uint64_t frames = 0, inner_fe = 0, concat_fe = 0;
    const std::uint64_t batch = 256, cap = 20000;
    while (frames < cap && (inner_fe < 100 || concat_fe < 100)) {
        std::vector<std::uint64_t> partial_inner(2, 0), partial_concat(2, 0);
        parallel_ranges(batch, 2, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
            Decoder dec_inner(inner_graph);
            Decoder dec_outer(outer_graph);
            for (std::uint64_t f = begin; f < end; ++f) {
                Rng rng = Rng::fork(0xB0, frames + f);
                std::vector<BitVec> outer_info;
                for (int b = 0; b < 9; ++b) outer_info.push_back(BitVec::random(100, rng));
                const auto outer_cw = encode(outer, outer_info);
                BitVec inner_info(1000);
                for (int b = 0; b < 10; ++b)
                    for (int j = 0; j < 100; ++j)
                        if (outer_cw[static_cast<std::size_t>(b)].test(static_cast<std::uint32_t>(j)))
                            inner_info.set(static_cast<std::uint32_t>(b * 100 + j));
                const auto inner_cw = encode(inner, {inner_info});

                std::vector<double> llr(2000);
                const double s2 = point.sigma() * point.sigma();
                for (int b = 0; b < 2; ++b)
                    for (int j = 0; j < 1000; ++j) {
                        const double tx = inner_cw[static_cast<std::size_t>(b)].test(static_cast<std::uint32_t>(j))
                                              ? -1.0
                                              : 1.0;
                        llr[static_cast<std::size_t>(b * 1000 + j)] =
                            clip_llr(2.0 * (tx + point.sigma() * rng.gaussian()) / s2);
                    }

                const auto res_inner = dec_inner.run(llr, 100);
                bool inner_bad = false;
                for (int j = 0; j < 1000; ++j)
                    inner_bad = inner_bad || (res_inner.bits[static_cast<std::size_t>(j)] !=
                                              static_cast<std::uint8_t>(inner_info.test(static_cast<std::uint32_t>(j))));
                std::vector<double> prior(dec_inner.posteriors().begin(), dec_inner.posteriors().begin() + 1000);
                for (auto& v : prior) v = clip_llr(v);
                const auto res_outer = dec_outer.run(prior, 100);
                bool concat_bad = false;
                for (int j = 0; j < 900; ++j)
                    concat_bad = concat_bad ||
                                 (res_outer.bits[static_cast<std::size_t>(j)] !=
                                  static_cast<std::uint8_t>(outer_info[static_cast<std::size_t>(j / 100)].test(
                                      static_cast<std::uint32_t>(j % 100))));
                partial_inner[w] += inner_bad;
                partial_concat[w] += concat_bad;
            }
        });
        inner_fe += partial_inner[0] + partial_inner[1];
        concat_fe += partial_concat[0] + partial_concat[1];
        frames += batch;
    }

    const double fer_inner = static_cast<double>(inner_fe) / static_cast<double>(frames);
    const double fer_concat = static_cast<double>(concat_fe) / static_cast<double>(frames);
    out.pass = inner_fe >= 100 && concat_fe >= 100 && fer_concat <= fer_inner;
    out.detail = fmt("Eb/N0=2.0 dB, %llu frames: inner-alone FER=%.4f (%llu errors), concatenated FER=%.4f "
                     "(%llu errors)",
                     static_cast<unsigned long long>(frames), fer_inner, static_cast<unsigned long long>(inner_fe),
                     fer_concat, static_cast<unsigned long long>(concat_fe));
    return out;
}

Outcome criterion12_undetected_patterns() {
    Outcome out;
    Rng setup(1);
    const auto code = design_random_code(3, 48, 3, false, setup, 20000, "small48");
    const auto est = dmin_estimate(code);
    const std::uint32_t dmin = brute_force_dmin(code, est.d_bar);  // exact: weight <= d_bar needs info weight <= d_bar
    const auto pairs = dmin_pairs(code);

    // exhaustive low-weight sweep: the minimum really equals the pair bound
    // and every minimum-weight codeword lives on exactly one predicted pair
    const auto rows = [&] {
        std::vector<std::vector<std::uint64_t>> r(code.dimension());
        const std::size_t words = (code.length() + 63) / 64;
        for (std::uint32_t i = 0; i + 1 < code.block_count; ++i)
            for (std::uint32_t j = 0; j < code.n; ++j) {
                auto& row = r[i * code.n + j];
                row.assign(words, 0);
                const std::uint32_t self = i * code.n + j;
                row[self >> 6] |= 1ull << (self & 63);
                for (auto e : code.gen_transpose[i].support()) {
                    const std::uint32_t col = (code.block_count - 1) * code.n + (e + j) % code.n;
                    row[col >> 6] |= 1ull << (col & 63);
                }
            }
        return r;
    }();
    std::vector<std::uint64_t> cw(rows.front().size(), 0);
    std::uint64_t min_weight_words = 0, bad_span = 0;
    const auto span_of = [&] {
        std::set<std::uint32_t> used;
        for (std::uint32_t b = 0; b < code.block_count; ++b)
            for (std::uint32_t j = 0; j < code.n; ++j)
                if (cw[(b * code.n + j) >> 6] >> ((b * code.n + j) & 63) & 1) used.insert(b);
        return used;
    };
    const auto rec = [&](auto&& self, std::uint32_t start, std::uint32_t left) -> void {
        for (std::uint32_t i = start; i < code.dimension(); ++i) {
            for (std::size_t w = 0; w < cw.size(); ++w) cw[w] ^= rows[i][w];
            std::uint32_t wt = 0;
            for (auto v : cw) wt += static_cast<std::uint32_t>(__builtin_popcountll(v));
            if (wt == est.d_bar) {
                ++min_weight_words;
                const auto used = span_of();
                bool predicted = used.size() == 2;
                if (predicted) {
                    const auto pair = std::make_pair(*used.begin(), *std::next(used.begin()));
                    predicted = false;
                    for (const auto& pr : pairs) predicted = predicted || (pr == pair);
                }
                bad_span += !predicted;
            }
            if (left > 1) self(self, i + 1, left - 1);
            for (std::size_t w = 0; w < cw.size(); ++w) cw[w] ^= rows[i][w];
        }
    };
    rec(rec, 0, est.d_bar);
    const bool enum_ok = dmin == est.d_bar && bad_span == 0 && min_weight_words > 0;

    // Monte Carlo: collected undetected-error patterns obey the same law
    const auto graph = build_graph(code);
    std::vector<std::vector<BitVec>> patterns;
    SimOptions opts;
    opts.undetected_patterns = &patterns;
    opts.batch = 4096;
    const auto res = simulate(code, graph, ChannelPoint{Channel::bsc, 0.05, code.rate()}, StopRule{20000, 1u << 30},
                              777, opts);

    std::uint64_t below_dmin = 0, at_dbar = 0, outside_pairs = 0;
    for (const auto& diff : patterns) {
        const auto w = codeword_weight(diff);
        below_dmin += (w < dmin);
        if (w == est.d_bar) {
            ++at_dbar;
            std::set<std::uint32_t> used;
            for (std::uint32_t b = 0; b < code.block_count; ++b)
                if (!diff[b].none()) used.insert(b);
            bool predicted = used.size() == 2;
            if (predicted) {
                const auto pair = std::make_pair(*used.begin(), *std::next(used.begin()));
                predicted = false;
                for (const auto& pr : pairs) predicted = predicted || (pr == pair);
            }
            outside_pairs += !predicted;
        }
    }

    out.pass = enum_ok && res.undetected >= 50 && below_dmin == 0 && at_dbar > 0 && outside_pairs == 0;
    out.detail = fmt("d_min=%u equals the pair bound; %llu enumerated minimum-weight codewords all on predicted "
                     "pairs; %llu undetected events: %llu below d_min, %llu at d_min (%llu off predicted pairs)",
                     dmin, static_cast<unsigned long long>(min_weight_words),
                     static_cast<unsigned long long>(res.undetected), static_cast<unsigned long long>(below_dmin),
                     static_cast<unsigned long long>(at_dbar), static_cast<unsigned long long>(outside_pairs));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Entry {
        int id;
        const char* title;
        double budget_s;  // 0 = no stated budget
        CriterionFn fn;
    };
    const std::vector<Entry> entries = {
        {1, "worked inversion example is bit-exact", 1.0, criterion1_worked_example},
        {2, "appendix inversion example and scaled variant", 1.0, criterion2_appendix_example},
        {3, "fast and Euclid inverses agree on 1000 random members", 60.0, criterion3_oracle_equivalence},
        {4, "inverse weight in [5,9] over the exhaustive m=0 grid", 120.0, criterion4_weight_range_exhaustive},
        {5, "inverse-weight distribution matches the published statistics", 300.0, criterion5_weight_distribution},
        {6, "code-table derived columns are exact", 10.0, criterion6_code_table},
        {7, "weight caps and randomized maximum search", 600.0, criterion7_bounds},
        {8, "benchmark trend: flat fast inversion, growing Euclid", 0.0, criterion8_benchmark},
        {9, "cycle-free outputs pass the dense rectangle oracle", 0.0, criterion9_girth_oracle},
        {10, "decoder sanity on the scaled psi-unitary code", 1800.0, criterion10_decoder_sanity},
        {11, "concatenated decoding beats the inner code alone", 1800.0, criterion11_concatenation},
        {12, "undetected-error patterns follow the pair prediction", 0.0, criterion12_undetected_patterns},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& entry : entries) {
        if (!selected.empty() && !selected.count(entry.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome outcome;
        try {
            outcome = entry.fn();
        } catch (const std::exception& e) {
            outcome.pass = false;
            outcome.detail = std::string("exception: ") + e.what();
        }
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (entry.budget_s > 0 && elapsed > entry.budget_s) {
            outcome.pass = false;
            outcome.detail += fmt(" [over budget: %.1f s > %.0f s]", elapsed, entry.budget_s);
        }
        std::printf("[%s] criterion %2d: %s — %s (%.1f s)\n", outcome.pass ? "PASS" : "FAIL", entry.id, entry.title,
                    outcome.detail.c_str(), elapsed);
        std::fflush(stdout);
        failures += !outcome.pass;
    }
    if (failures) std::printf("%d criterion(s) FAILED\n", failures);
    else std::printf("all criteria passed\n");
    return failures == 0 ? 0 : 1;
}
