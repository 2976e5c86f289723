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

#include <CLI11.hpp>

#include <qcldgm/code_design.hpp>
#include <qcldgm/inversion.hpp>
#include <qcldgm/qc_ldgm.hpp>
#include <qcldgm/spa_decoder.hpp>
#include <qcldgm/version.hpp>
#include <qcldgm/xi_design.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace qcldgm;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitUnobtainable = 3;  // singular / exhausted
constexpr int kExitAssertFailed = 4;

struct RunMeta {
    std::uint64_t config_hash = 0;
    std::uint64_t seed = 0;
};

void emit_header(std::ostream& os, const RunMeta& meta) {
    char buf[96];
    os << "# qcldgm " << kVersion << "\n";
    std::snprintf(buf, sizeof(buf), "# config_hash=0x%016llx\n", static_cast<unsigned long long>(meta.config_hash));
    os << buf;
    os << "# seed=" << meta.seed << "\n";
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    return out;
}

SparsePoly read_poly_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open polynomial file: " + path);
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        return parse_poly(line.substr(first));
    }
    throw std::invalid_argument("polynomial file has no polynomial line: " + path);
}

QcLdgmCode load_code(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open code file: " + path);
    return read_code_file(in);
}

/// Yes/no verdict of psi-unitarity over the odd-part target ring.
bool psi_unitary_odd(const SparsePoly& a) {
    const auto [q, s_odd] = factor_pow2(a.ring_size());
    return q >= 1 && is_psi_unitary(a, PsiParams{s_odd, q, 0});
}

// ---------------------------------------------------------------------------

struct DesignArgs {
    std::uint32_t m = 0;
    std::uint32_t s = 0;
    std::vector<std::uint32_t> k;
    bool random = false;
    bool strict = false;
    std::uint32_t tries = 1000;
    std::uint64_t seed = 1;
    std::string out;
    bool check = false;
};

int run_design(const DesignArgs& args, const RunMeta& meta) {
    std::optional<SparsePoly> poly;
    bool guarantee = false;
    if (args.random) {
        Rng rng(args.seed);
        poly = sample_cycle_free(args.m, args.s, rng, args.tries, args.strict);
        if (!poly) {
            std::cerr << "design: parameter space exhausted after " << args.tries << " tries\n";
            return kExitUnobtainable;
        }
        guarantee = goodmat_guarantee(args.s, std::vector<std::uint32_t>(poly->support().begin() + 1,
                                                                         poly->support().begin() + 2 + args.m));
    } else {
        if (args.k.size() != args.m + 1)
            throw std::invalid_argument("design: --k needs exactly m+1 values (or use --random)");
        poly = goodmat(args.m, args.s, args.k);
        guarantee = goodmat_guarantee(args.s, args.k);
    }

    const bool cycle_free = !has_length4_cycle(*poly);
    const bool unitary = psi_unitary_odd(*poly);
    std::cout << to_string(*poly) << "\n";
    std::cout << "cycle_free=" << (cycle_free ? "yes" : "no") << "\n";
    std::cout << "psi_unitary=" << (unitary ? "yes" : "no") << "\n";
    std::cout << "guarantee=" << (guarantee ? "yes" : "no") << "\n";

    if (!args.out.empty()) {
        auto out = open_output(args.out);
        emit_header(out, meta);
        out << to_string(*poly) << "\n";
    }
    if (args.check && !cycle_free) return kExitAssertFailed;
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct InvertArgs {
    std::string poly_text;
    std::string in;
    std::string method = "both";
    std::string out;
};

int run_invert(const InvertArgs& args, const RunMeta& meta) {
    if (args.poly_text.empty() == args.in.empty())
        throw std::invalid_argument("invert: provide exactly one of --poly or --in");
    const SparsePoly a = args.in.empty() ? parse_poly(args.poly_text) : read_poly_file(args.in);

    const bool want_fast = args.method == "fast" || args.method == "both";
    const bool want_euclid = args.method == "euclid" || args.method == "both";
    if (!want_fast && !want_euclid) throw std::invalid_argument("invert: method must be fast, euclid or both");

    std::optional<SparsePoly> euclid_inv;
    if (want_euclid) {
        euclid_inv = euclid_inverse(a);
        if (!euclid_inv) {
            std::cerr << "invert: polynomial is not invertible (gcd with x^n - 1 is nontrivial)\n";
            return kExitUnobtainable;
        }
    }

    std::optional<SparsePoly> fast_inv;
    std::optional<SparsePoly> fast_w;
    std::uint64_t bound = 0;
    if (want_fast) {
        if (const auto params = recognize_xi(a)) {
            const auto rep = fast_inverse(*params);
            fast_inv = rep.a_inv;
            fast_w = rep.w;
            bound = rep.bound;
        } else if (psi_unitary_odd(a)) {
            // not in the closed-form family, but a^(2^q) == 1 still gives
            // the inverse as a product of Frobenius powers
            const auto [q, s_odd] = factor_pow2(a.ring_size());
            SparsePoly inv = a;
            for (std::uint32_t i = 1; i < q; ++i) inv = mul(inv, pow2k(a, i));
            if (!mul(a, inv).is_one()) throw std::logic_error("invert: squaring-chain product check failed");
            fast_inv = inv;
        } else {
            std::cerr << "invert: fast method needs a psi-unitary polynomial; use --method euclid\n";
            return kExitValidation;
        }
    }

    std::cout << "a = " << to_string(a) << "\n";
    std::cout << "W[a] = " << a.weight() << "\n";
    if (fast_inv) {
        std::cout << "method = fast\n";
        std::cout << "a_inv = " << to_string(*fast_inv) << "\n";
        if (fast_w) std::cout << "w = " << to_string(*fast_w) << "\n";
        std::cout << "W[a_inv] = " << fast_inv->weight() << "\n";
        if (bound) std::cout << "bound = " << bound << "\n";
    }
    if (euclid_inv) {
        std::cout << "method = euclid\n";
        std::cout << "a_inv = " << to_string(*euclid_inv) << "\n";
        std::cout << "W[a_inv] = " << euclid_inv->weight() << "\n";
    }
    if (fast_inv && euclid_inv) std::cout << "agreement = " << (*fast_inv == *euclid_inv ? "yes" : "NO") << "\n";

    if (!args.out.empty()) {
        auto out = open_output(args.out);
        emit_header(out, meta);
        out << "method,n,W_a,W_inv,bound,a,a_inv,w\n";
        if (fast_inv)
            out << "fast," << a.ring_size() << ',' << a.weight() << ',' << fast_inv->weight() << ',' << bound << ','
                << to_string(a) << ',' << to_string(*fast_inv) << ',' << (fast_w ? to_string(*fast_w) : "") << "\n";
        if (euclid_inv)
            out << "euclid," << a.ring_size() << ',' << a.weight() << ',' << euclid_inv->weight() << ",," << to_string(a)
                << ',' << to_string(*euclid_inv) << ",\n";
    }
    if (fast_inv && euclid_inv && *fast_inv != *euclid_inv) return kExitAssertFailed;
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CodeArgs {
    std::string in;
    std::string emit;
    bool check = false;
};

int run_code(const CodeArgs& args, const RunMeta& meta) {
    const QcLdgmCode code = load_code(args.in);
    const auto est = dmin_estimate(code);
    const auto cx = complexity(code);
    const bool girth_ok = matrix_girth_ok(code.blocks);

    std::cout << "id = " << (code.id.empty() ? "(unnamed)" : code.id) << "\n";
    std::cout << "N = " << code.length() << "\nK = " << code.dimension() << "\n";
    std::cout << "Nb = " << code.block_count << "\nn = " << code.n << "\n";
    std::cout << "weights =";
    for (const auto& b : code.blocks) std::cout << ' ' << b.weight();
    std::cout << "\n";
    std::cout << "W[last_inverse] = " << code.last_inverse.weight() << "\n";
    std::cout << "d_min_bound = " << est.d_bar << "\n";
    std::cout << "patterns = " << est.patterns << "\n";
    std::cout << "multiplicity = " << est.multiplicity << "\n";
    std::cout << "C_enc = " << cx.enc << "\n";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", cx.dec());
    std::cout << "C_dec = " << buf << "\n";
    std::cout << "girth_ok = " << (girth_ok ? "yes" : "no") << "\n";

    if (!args.emit.empty()) {
        auto out = open_output(args.emit);
        write_code_file(out, code);
    }
    (void)meta;
    if (args.check && !girth_ok) return kExitAssertFailed;
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct GencodeArgs {
    std::uint32_t nb = 0;
    std::uint32_t n = 0;
    std::uint32_t weight = 0;
    bool identity_last = false;
    std::uint32_t tries = 20000;
    std::uint64_t seed = 1;
    std::string id;
    std::string out;
};

int run_gencode(const GencodeArgs& args, const RunMeta& meta) {
    Rng rng(args.seed);
    QcLdgmCode code;
    try {
        code = design_random_code(args.nb, args.n, args.weight, args.identity_last, rng, args.tries, args.id);
    } catch (const DesignExhausted& e) {
        std::cerr << "gencode: " << e.what() << "\n";
        return kExitUnobtainable;
    }
    std::cout << "girth_ok = " << (matrix_girth_ok(code.blocks) ? "yes" : "no") << "\n";
    std::cout << "W[last_inverse] = " << code.last_inverse.weight() << "\n";
    if (!args.out.empty()) {
        auto out = open_output(args.out);
        emit_header(out, meta);
        write_code_file(out, code);
    } else {
        write_code_file(std::cout, code);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct SimArgs {
    std::string code_path;
    std::string channel = "bsc";
    std::vector<double> points;
    std::uint64_t max_frames = 10'000'000;
    std::uint64_t min_frame_errors = 100;
    std::uint32_t max_iter = 100;
    bool min_sum = false;
    bool all_zero = false;
    unsigned workers = 0;
    std::uint64_t batch = 4096;
    std::uint64_t seed = 1;
    std::string out;
};

int run_simulate(const SimArgs& args, const RunMeta& meta) {
    const QcLdgmCode code = load_code(args.code_path);
    const TannerGraph graph = build_graph(code);
    const Channel kind = args.channel == "awgn" ? Channel::awgn : Channel::bsc;
    if (args.channel != "awgn" && args.channel != "bsc")
        throw std::invalid_argument("simulate: channel must be bsc or awgn");
    if (args.points.empty()) throw std::invalid_argument("simulate: need at least one channel point");

    std::ostringstream csv;
    emit_header(csv, meta);
    csv << "# conventions: bit 0 -> +1 (awgn), LLR clip +-38, flooding schedule, "
        << (args.min_sum ? "min-sum" : "exact tanh rule") << ", BER/FER over information bits\n";
    write_sim_csv_header(csv);

    const std::string code_id = code.id.empty() ? "code" : code.id;
    for (const double p : args.points) {
        const ChannelPoint point{kind, p, code.rate()};
        SimOptions opts;
        opts.max_iter = args.max_iter;
        opts.min_sum = args.min_sum;
        opts.all_zero_codeword = args.all_zero;
        opts.workers = args.workers;
        opts.batch = args.batch;
        const SimResult res = simulate(code, graph, point, StopRule{args.max_frames, args.min_frame_errors},
                                       args.seed, opts);
        write_sim_csv_row(csv, code_id, code.dimension(), point, res);
    }

    std::cout << csv.str();
    if (!args.out.empty()) {
        auto out = open_output(args.out);
        out << csv.str();
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    std::vector<std::uint32_t> sizes;
    std::vector<std::uint32_t> weights{3};
    std::uint64_t trials = 200;
    std::uint64_t seed = 1;
    std::string out;
};

int run_bench(const BenchArgs& args, const RunMeta& meta) {
    const auto table = bench_invert(args.sizes, args.weights, args.trials, args.seed);
    std::ostringstream csv;
    emit_header(csv, meta);
    write_bench_csv(csv, table);
    std::cout << csv.str();
    if (!args.out.empty()) {
        auto out = open_output(args.out);
        out << csv.str();
    }
    return kExitOk;
}

struct WeightDistArgs {
    std::uint32_t m = 1;
    std::uint32_t s = 16;
    std::uint64_t samples = 100000;
    unsigned workers = 0;
    std::uint64_t seed = 1;
    std::string out;
};

int run_weightdist(const WeightDistArgs& args, const RunMeta& meta) {
    const auto hist = weight_distribution(args.m, args.s, args.samples, args.seed, args.workers);
    std::ostringstream csv;
    emit_header(csv, meta);
    write_histogram_csv(csv, hist);
    std::cout << csv.str();
    if (!args.out.empty()) {
        auto out = open_output(args.out);
        out << csv.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sparse psi-unitary circulant toolkit for QC-LDGM codes"};
    app.require_subcommand(1);
    // usage: qcldgm --config run.cfg <subcommand>; the file holds key=value
    // lines under a [subcommand] section, and explicit flags override it
    app.set_config("--config", "", "key=value config file; command-line flags override");

    DesignArgs design;
    auto* cmd_design = app.add_subcommand("design", "build a cycle-free psi-unitary circulant");
    cmd_design->add_option("--m", design.m, "level (weight = 2m+3)")->required();
    cmd_design->add_option("--s", design.s, "base size (ring size n = 2^(m+2) s)")->required();
    cmd_design->add_option("--k", design.k, "explicit k values, comma separated")->delimiter(',');
    cmd_design->add_flag("--random", design.random, "draw k at random instead of --k");
    cmd_design->add_flag("--strict", design.strict, "impose the doubling chain k_{i+1} > 2 k_i on random draws");
    cmd_design->add_option("--tries", design.tries, "random draw budget");
    cmd_design->add_option("--seed", design.seed, "random seed");
    cmd_design->add_option("-o,--out", design.out, "write the polynomial to this file");
    cmd_design->add_flag("--assert", design.check, "exit 4 unless the result is cycle-free");

    InvertArgs invert;
    auto* cmd_invert = app.add_subcommand("invert", "invert a circulant polynomial");
    cmd_invert->add_option("--poly", invert.poly_text, "polynomial literal, e.g. '56:(0;1;3;8;17)'");
    cmd_invert->add_option("--in", invert.in, "polynomial file");
    cmd_invert->add_option("--method", invert.method, "fast | euclid | both")->default_str("both");
    cmd_invert->add_option("-o,--out", invert.out, "write a CSV report to this file");

    CodeArgs code_args;
    auto* cmd_code = app.add_subcommand("code", "analyze a code definition file");
    cmd_code->add_option("--in", code_args.in, "code definition file")->required();
    cmd_code->add_option("--emit", code_args.emit, "rewrite the code file in canonical form");
    cmd_code->add_flag("--assert", code_args.check, "exit 4 unless the expanded matrix is 4-cycle free");

    GencodeArgs gen;
    auto* cmd_gen = app.add_subcommand("gencode", "draw a random girth-conscious code");
    cmd_gen->add_option("--nb", gen.nb, "number of circulant blocks")->required();
    cmd_gen->add_option("--n", gen.n, "circulant size")->required();
    cmd_gen->add_option("--weight", gen.weight, "block weight")->required();
    cmd_gen->add_flag("--identity-last", gen.identity_last, "use an identity last block instead of psi-unitary");
    cmd_gen->add_option("--tries", gen.tries, "draw budget");
    cmd_gen->add_option("--seed", gen.seed, "random seed");
    cmd_gen->add_option("--id", gen.id, "code identifier stored in the file");
    cmd_gen->add_option("-o,--out", gen.out, "output code file");

    SimArgs sim;
    auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo error-rate simulation");
    cmd_sim->add_option("--code", sim.code_path, "code definition file")->required();
    cmd_sim->add_option("--channel", sim.channel, "bsc | awgn")->default_str("bsc");
    cmd_sim->add_option("--points", sim.points, "channel parameters, comma separated")->required()->delimiter(',');
    cmd_sim->add_option("--max-frames", sim.max_frames, "frame budget per point");
    cmd_sim->add_option("--min-frame-errors", sim.min_frame_errors, "stop after this many frame errors");
    cmd_sim->add_option("--max-iter", sim.max_iter, "decoder iteration cap");
    cmd_sim->add_flag("--min-sum", sim.min_sum, "use the min-sum check approximation");
    cmd_sim->add_flag("--all-zero", sim.all_zero, "transmit the all-zero codeword");
    cmd_sim->add_option("--workers", sim.workers, "worker threads (0 = hardware)");
    cmd_sim->add_option("--batch", sim.batch, "frames per stop-rule check");
    cmd_sim->add_option("--seed", sim.seed, "random seed");
    cmd_sim->add_option("-o,--out", sim.out, "results CSV file");

    BenchArgs bench;
    auto* cmd_bench = app.add_subcommand("bench", "Euclid vs fast inversion timings");
    cmd_bench->add_option("--n", bench.sizes, "ring sizes, comma separated")->required()->delimiter(',');
    cmd_bench->add_option("--weights", bench.weights, "matrix weights, comma separated")->delimiter(',');
    cmd_bench->add_option("--trials", bench.trials, "inversions per cell");
    cmd_bench->add_option("--seed", bench.seed, "random seed");
    cmd_bench->add_option("-o,--out", bench.out, "benchmark CSV file");

    WeightDistArgs wd;
    auto* cmd_wd = app.add_subcommand("weightdist", "inverse-weight histogram over the family");
    cmd_wd->add_option("--m", wd.m, "level")->required();
    cmd_wd->add_option("--s", wd.s, "base size")->required();
    cmd_wd->add_option("--samples", wd.samples, "number of sampled matrices");
    cmd_wd->add_option("--workers", wd.workers, "worker threads (0 = hardware)");
    cmd_wd->add_option("--seed", wd.seed, "random seed");
    cmd_wd->add_option("-o,--out", wd.out, "histogram CSV file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitValidation;
    }

    // the config hash covers the subcommand name and its effective options;
    // output paths are excluded so renaming a result file does not change
    // the recorded identity of the run
    RunMeta meta;
    auto* active = app.get_subcommands().front();
    std::istringstream cfg(active->config_to_str(true, false));
    std::string cfg_line, cfg_semantic = std::string(active->get_name()) + "\n";
    while (std::getline(cfg, cfg_line)) {
        if (cfg_line.rfind("out=", 0) == 0 || cfg_line.rfind("emit=", 0) == 0 || cfg_line.rfind("config=", 0) == 0)
            continue;
        cfg_semantic += cfg_line + "\n";
    }
    meta.config_hash = fnv1a64(cfg_semantic);
    if (active == cmd_design) meta.seed = design.seed;
    if (active == cmd_gen) meta.seed = gen.seed;
    if (active == cmd_sim) meta.seed = sim.seed;
    if (active == cmd_bench) meta.seed = bench.seed;
    if (active == cmd_wd) meta.seed = wd.seed;

    try {
        if (active == cmd_design) return run_design(design, meta);
        if (active == cmd_invert) return run_invert(invert, meta);
        if (active == cmd_code) return run_code(code_args, meta);
        if (active == cmd_gen) return run_gencode(gen, meta);
        if (active == cmd_sim) return run_simulate(sim, meta);
        if (active == cmd_bench) return run_bench(bench, meta);
        if (active == cmd_wd) return run_weightdist(wd, meta);
    } catch (const SingularBlockError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnobtainable;
    } catch (const DesignExhausted& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnobtainable;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return kExitValidation;
}
