#include "nrlab/experiments.hpp"

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nrlab/channel.hpp"
#include "nrlab/corpus.hpp"
#include "nrlab/csv.hpp"
#include "nrlab/decoders.hpp"
#include "nrlab/density_evolution.hpp"
#include "nrlab/lexicon.hpp"
#include "nrlab/lzw.hpp"
#include "nrlab/nr_decoder.hpp"
#include "nrlab/parallel.hpp"
#include "nrlab/rng.hpp"
#include "nrlab/segment_sim.hpp"
#include "nrlab/soft_pipeline.hpp"
#include "nrlab/systematic.hpp"
#include "nrlab/tanner.hpp"

namespace fs = std::filesystem;

namespace nrlab {

namespace {

std::string out_path(const std::string& out_dir, const std::string& name) {
    fs::create_directories(out_dir);
    return (fs::path(out_dir) / name).string();
}

std::ofstream open_csv(const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    return f;
}

SeqDEParams seq_params(const ExperimentConfig& cfg) {
    SeqDEParams p;
    p.dv = int(cfg.get_int("dv", 5));
    p.dc = int(cfg.get_int("dc", 100));
    p.pi = int(cfg.get_int("pi", 1));
    p.tau = int(cfg.get_int("tau", 4));
    p.eps0 = cfg.get_double("eps0", 0.2);
    p.p0 = cfg.get_double("p0", 0.143);
    p.gamma0 = cfg.get_double("gamma0", 0.0003);
    p.validate();
    return p;
}

IterDEParams iter_params(const ExperimentConfig& cfg) {
    IterDEParams p;
    p.dv = int(cfg.get_int("dv", 5));
    p.dc = int(cfg.get_int("dc", 100));
    p.l = int(cfg.get_int("l", 120));
    p.l_theta = int(cfg.get_int("ltheta", 30));
    p.p = cfg.get_double("p", 0.9);
    p.eps0 = cfg.get_double("eps0", 0.2);
    p.validate();
    return p;
}

WindowParams window_params(const ExperimentConfig& cfg) {
    WindowParams w;
    w.n_min = int(cfg.get_int("n_min", 2));
    w.n_max = int(cfg.get_int("n_max", 6));
    w.t_cap = int(cfg.get_int("t_cap", 20));
    w.long_len = int(cfg.get_int("long_len", 12));
    w.coloc_span = int(cfg.get_int("coloc_span", 3));
    w.threads = int(cfg.get_int("threads", 0));
    w.validate();
    return w;
}

struct TrialRecord {
    uint64_t trial = 0;
    uint64_t seed = 0;
    double rate = 0.0;
    bool converged = false;
    int iterations = 0;
    size_t residual_erasures = 0;
    size_t residual_errors = 0;
};

void write_trials(std::ofstream& f, const std::string& name, const std::vector<TrialRecord>& recs) {
    f << "experiment,trial,seed,rate,converged,iterations,residual_erasures,residual_errors\n";
    for (const auto& r : recs)
        f << name << ',' << r.trial << ',' << r.seed << ',' << fmt_double(r.rate) << ','
          << (r.converged ? 1 : 0) << ',' << r.iterations << ',' << r.residual_erasures << ','
          << r.residual_errors << "\n";
}

std::vector<std::string> run_de_seq(const ExperimentConfig& cfg, const std::string& out_dir) {
    SeqDEParams p = seq_params(cfg);
    double tol = cfg.get_double("tol", 1e-10);
    int tmax = int(cfg.get_int("tmax", 2000));
    DERun run = seq_de_run(p, tol, tmax);
    std::string path = out_path(out_dir, "de_seq.csv");
    auto f = open_csv(path);
    f << "t,alpha,beta\n";
    for (const auto& s : run.trajectory)
        f << s.t << ',' << fmt_double(s.alpha) << ',' << fmt_double(s.beta) << "\n";
    std::printf("de-seq eps0=%g p0=%g gamma0=%g -> %s after %zu steps\n", p.eps0, p.p0, p.gamma0,
                run.success ? "success" : "failure", run.trajectory.size() - 1);
    return {path};
}

std::vector<std::string> run_de_iter(const ExperimentConfig& cfg, const std::string& out_dir) {
    IterDEParams p = iter_params(cfg);
    double tol = cfg.get_double("tol", 1e-10);
    int tmax = int(cfg.get_int("tmax", 10000));
    IterDERun run = iter_de_run(p, tol, tmax);
    std::string path = out_path(out_dir, "de_iter.csv");
    auto f = open_csv(path);
    f << "t,eps,eps_prime,q,d\n";
    for (const auto& s : run.trajectory)
        f << s.t << ',' << fmt_double(s.eps) << ',' << fmt_double(s.eps_prime) << ','
          << fmt_double(s.q) << ',' << fmt_double(s.d) << "\n";
    std::printf("de-iter eps0=%g p=%g -> %s after %zu iterations\n", p.eps0, p.p,
                run.success ? "success" : "failure", run.trajectory.size() - 1);
    return {path};
}

std::vector<std::string> run_threshold(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::string scheme = cfg.get_str("scheme", "classic");
    double lo = cfg.get_double("lo", 1e-3);
    double hi = cfg.get_double("hi", 0.9);
    double tol = cfg.get_double("tol", 1e-4);
    int dv = int(cfg.get_int("dv", 5)), dc = int(cfg.get_int("dc", 100));

    std::string path = out_path(out_dir, "threshold.csv");
    auto f = open_csv(path);
    f << "param_p,eps_star,bracket_lo,bracket_hi\n";
    auto emit = [&](double p, const ThresholdResult& r) {
        f << fmt_double(p) << ',' << fmt_double(r.eps_star) << ',' << fmt_double(r.bracket_lo)
          << ',' << fmt_double(r.bracket_hi) << "\n";
        std::printf("threshold %s p=%g -> eps*=%.6f\n", scheme.c_str(), p, r.eps_star);
    };

    if (scheme == "classic") {
        auto runner = [&](double e) { return classic_de_run(e, dv, dc); };
        emit(0.0, erasure_threshold(runner, lo, hi, tol));
    } else if (scheme == "seq") {
        SeqDEParams p = seq_params(cfg);
        auto runner = [&](double e) {
            SeqDEParams q = p;
            q.eps0 = e;
            return seq_de_run(q).success;
        };
        emit(0.0, erasure_threshold(runner, lo, hi, tol));
    } else if (scheme == "iter") {
        IterDEParams p = iter_params(cfg);
        std::vector<double> ps = cfg.get_list("p_list", {p.p});
        for (double pp : ps) {
            auto runner = [&](double e) {
                IterDEParams q = p;
                q.p = pp;
                q.eps0 = e;
                return iter_de_run(q).success;
            };
            emit(pp, erasure_threshold(runner, lo, hi, tol));
        }
    } else {
        throw std::invalid_argument("threshold: unknown scheme '" + scheme + "'");
    }
    return {path};
}

std::vector<std::string> run_sim_peel(const ExperimentConfig& cfg, const std::string& out_dir) {
    uint32_t n = uint32_t(cfg.get_int("n", 100000));
    int dv = int(cfg.get_int("dv", 5)), dc = int(cfg.get_int("dc", 100));
    double eps0 = cfg.get_double("eps0", 0.03);
    int trials = int(cfg.get_int("trials", 10));
    int max_iters = int(cfg.get_int("max_iters", 200));
    uint64_t master = cfg.get_u64("master_seed", 1);
    int threads = int(cfg.get_int("threads", 0));

    TannerGraph g = build_regular_graph(n, dv, dc, derive_seed(master, stream::graph, 0));
    BitVec zero(n);
    std::vector<TrialRecord> recs(trials);
    parallel_for(size_t(trials), threads, [&](size_t lo, size_t hi) {
        for (size_t t = lo; t < hi; ++t) {
            uint64_t seed = derive_seed(master, stream::channel, t);
            TritWord w = transmit(zero, ChannelSpec::bec(eps0), seed);
            DecodeOutcome o = peel_decode(g, w, max_iters, &zero);
            recs[t] = {t, seed, eps0, o.converged, o.iterations_used, o.residual_erasures,
                       o.residual_errors};
        }
    });
    std::string path = out_path(out_dir, "sim_peel.csv");
    auto f = open_csv(path);
    write_trials(f, "sim-peel", recs);
    size_t ok = 0;
    for (auto& r : recs) ok += r.converged;
    std::printf("sim-peel eps0=%g n=%u -> %zu/%d frames cleared\n", eps0, n, ok, trials);
    return {path};
}

std::vector<std::string> run_sim_gen(const ExperimentConfig& cfg, const std::string& out_dir) {
    uint32_t n = uint32_t(cfg.get_int("n", 100000));
    SeqDEParams p = seq_params(cfg);
    int trials = int(cfg.get_int("trials", 10));
    uint64_t master = cfg.get_u64("master_seed", 1);
    int threads = int(cfg.get_int("threads", 0));
    GenDecoderConfig gcfg;
    gcfg.pi = p.pi;
    gcfg.tau = p.tau;
    gcfg.max_iters = int(cfg.get_int("max_iters", 200));

    TannerGraph g = build_regular_graph(n, p.dv, p.dc, derive_seed(master, stream::graph, 0));
    BitVec zero(n);
    double a0 = p.alpha0(), b0 = p.beta0();
    std::vector<TrialRecord> recs(trials);
    parallel_for(size_t(trials), threads, [&](size_t lo, size_t hi) {
        for (size_t t = lo; t < hi; ++t) {
            uint64_t seed = derive_seed(master, stream::channel, t);
            Rng rng(seed);
            TritWord w(n);
            std::vector<uint8_t> fixed(n, 0);
            for (uint32_t v = 0; v < n; ++v) {
                double u = rng.next_double();
                if (u < 1.0 - p.eps0) {
                    fixed[v] = 1;  // channel delivered the bit
                } else if (u < 1.0 - p.eps0 + b0) {
                    w.set(v, Trit::erased);
                } else if (u < 1.0 - p.eps0 + b0 + a0) {
                    w.set(v, Trit::one);  // text decoder wrote the wrong value
                }
            }
            DecodeOutcome o = generalized_decode(g, w, fixed, gcfg, &zero);
            recs[t] = {t, seed, p.eps0, o.converged && o.residual_errors == 0, o.iterations_used,
                       o.residual_erasures, o.residual_errors};
        }
    });
    std::string path = out_path(out_dir, "sim_gen.csv");
    auto f = open_csv(path);
    write_trials(f, "sim-gen", recs);
    size_t ok = 0;
    for (auto& r : recs) ok += r.converged;
    std::printf("sim-gen eps0=%g n=%u -> %zu/%d frames clean\n", p.eps0, n, ok, trials);
    return {path};
}

std::vector<std::string> run_sim_iter_nr(const ExperimentConfig& cfg, const std::string& out_dir) {
    IterDEParams p = iter_params(cfg);
    uint32_t n = uint32_t(cfg.get_int("n", 1200000));
    uint64_t master = cfg.get_u64("master_seed", 1);
    int tmax = int(cfg.get_int("tmax", 100));
    SegmentSimResult sim = segment_model_simulate(p, n, master, tmax);
    std::string path = out_path(out_dir, "sim_iter_nr.csv");
    auto f = open_csv(path);
    f << "t,eps,eps_prime\n";
    for (const auto& pt : sim.trajectory)
        f << pt.t << ',' << fmt_double(pt.eps) << ',' << fmt_double(pt.eps_prime) << "\n";
    std::printf("sim-iter-nr eps0=%g p=%g n=%u -> %s after %zu iterations\n", p.eps0, p.p, n,
                sim.converged ? "converged" : "stalled", sim.trajectory.size());
    return {path};
}

std::vector<std::string> run_sim_bsc_soft(const ExperimentConfig& cfg, const std::string& out_dir) {
    uint32_t n = uint32_t(cfg.get_int("n", 4320));
    int dv = int(cfg.get_int("dv", 5)), dc = int(cfg.get_int("dc", 100));
    std::vector<double> ps = cfg.get_list("p_list", {0.004, 0.008, 0.012});
    int trials = int(cfg.get_int("trials", 500));
    double acc = cfg.get_double("accuracy", 0.99);
    int max_iters = int(cfg.get_int("max_iters", 100));
    uint64_t master = cfg.get_u64("master_seed", 1);
    int threads = int(cfg.get_int("threads", 0));

    TannerGraph g = build_regular_graph(n, dv, dc, derive_seed(master, stream::graph, 0));
    SystematicCode code(g);
    std::string path = out_path(out_dir, "sim_bsc_soft.csv");
    auto f = open_csv(path);
    f << "p,trials,ldpc_success,nr_success\n";
    for (double p : ps) {
        std::vector<uint8_t> ldpc_ok(trials, 0), nr_ok(trials, 0);
        parallel_for(size_t(trials), threads, [&](size_t lo, size_t hi) {
            for (size_t t = lo; t < hi; ++t) {
                Rng info_rng(derive_seed(master, stream::info, t));
                BitVec info(code.k());
                for (uint32_t i = 0; i < code.k(); ++i) info.set(i, info_rng.next_bool(0.5));
                BitVec cw = code.encode(info);
                TritWord noisy = transmit(cw, ChannelSpec::bsc(p),
                                          derive_seed(master, stream::channel, t));
                BitVec received(n);
                for (uint32_t v = 0; v < n; ++v) received.set(v, noisy.bit(v));
                LlrVector ch = channel_llr(received, p);
                DecodeOutcome base = bp_decode(g, ch, max_iters, &cw);
                DecodeOutcome nr = bsc_nr_ldpc(received, code, SoftEstimatorSpec::oracle(acc), p,
                                               info, max_iters);
                BitVec nr_bits(n), base_bits(n);
                for (uint32_t v = 0; v < n; ++v) {
                    nr_bits.set(v, nr.word.bit(v));
                    base_bits.set(v, base.word.bit(v));
                }
                ldpc_ok[t] = base_bits == cw;
                nr_ok[t] = nr_bits == cw;
            }
        });
        size_t sum_l = 0, sum_n = 0;
        for (int t = 0; t < trials; ++t) {
            sum_l += ldpc_ok[t];
            sum_n += nr_ok[t];
        }
        f << fmt_double(p) << ',' << trials << ',' << sum_l << ',' << sum_n << "\n";
        std::printf("sim-bsc-soft p=%g -> ldpc %zu/%d, nr-ldpc %zu/%d\n", p, sum_l, trials, sum_n,
                    trials);
    }
    return {path};
}

std::vector<std::string> run_nr_decode(const ExperimentConfig& cfg, const std::string& out_dir) {
    LzwDictionary dict = load_dictionary(cfg.need_str("dict"));
    Lexicon lex = load_lexicon(cfg.need_str("lexicon"));
    std::string input_path = cfg.need_str("input");
    std::ifstream in(input_path, std::ios::binary);
    if (!in) throw std::invalid_argument("nr-decode: cannot read " + input_path);
    std::stringstream ss;
    ss << in.rdbuf();
    Bytes text = ss.str();
    if (text.empty()) throw std::invalid_argument("nr-decode: empty input");

    std::vector<double> eps_list = cfg.get_list("eps_list", {0.1});
    uint64_t master = cfg.get_u64("master_seed", 1);
    WindowParams wp = window_params(cfg);

    CompressedText ct = compress(text, dict);
    std::string path = out_path(out_dir, "nr_decode.csv");
    auto f = open_csv(path);
    f << "eps,delta_hat,rho_hat,e_nr,reduction,bits,erasures,recovered_ok,recovered_bad\n";
    for (size_t i = 0; i < eps_list.size(); ++i) {
        double eps = eps_list[i];
        TritWord noisy = transmit(ct.bits, ChannelSpec::bec(eps),
                                  derive_seed(master, stream::channel, i));
        NrDecodeResult r = nr_decode(noisy, dict, lex, wp, &ct.bits);
        const NrReport& rep = r.report;
        auto opt = [](const std::optional<double>& v) {
            return v ? fmt_double(*v) : std::string();
        };
        f << fmt_double(eps) << ',' << opt(rep.delta_hat) << ',' << opt(rep.rho_hat) << ','
          << opt(rep.e_nr) << ',' << opt(rep.reduction) << ',' << rep.total_bits << ','
          << rep.erasures << ',' << rep.recovered_correct << ',' << rep.recovered_wrong << "\n";
        std::printf("nr-decode eps=%g -> delta=%s rho=%s over %zu bits\n", eps,
                    opt(rep.delta_hat).c_str(), opt(rep.rho_hat).c_str(), rep.total_bits);
    }
    return {path};
}

std::vector<std::string> run_lzw_build(const ExperimentConfig& cfg, const std::string& out_dir) {
    std::string corpus_path = cfg.need_str("corpus");
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw std::invalid_argument("lzw-build-dict: cannot read " + corpus_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int ell = int(cfg.get_int("ell", 14));
    DictBuildOptions opt;
    opt.grow_passes = int(cfg.get_int("grow_passes", opt.grow_passes));
    opt.prune_min = int(cfg.get_int("prune_min", opt.prune_min));
    // short patterns keep wrong fillings from smuggling whole words past the
    // validity filters downstream
    opt.max_pattern_len = int(cfg.get_int("max_pattern_len", 8));
    LzwDictionary dict = build_dictionary(ss.str(), ell, opt);
    std::string path = out_path(out_dir, "dictionary.lzw");
    save_dictionary(dict, path);
    std::printf("lzw-build-dict ell=%d alphabet=%zu -> %s\n", ell, dict.alphabet_size(),
                path.c_str());
    return {path};
}

std::vector<std::string> run_lexicon_build(const ExperimentConfig& cfg,
                                           const std::string& out_dir) {
    std::string corpus_path = cfg.need_str("corpus");
    std::ifstream in(corpus_path, std::ios::binary);
    if (!in) throw std::invalid_argument("lexicon-build: cannot read " + corpus_path);
    std::stringstream ss;
    ss << in.rdbuf();
    LexiconParams lp;
    lp.min_count = cfg.get_u64("min_count", 5);
    lp.pmi_threshold = cfg.get_double("pmi_threshold", 3.0);
    lp.context_window = int(cfg.get_int("context_window", 20));
    Lexicon lex = build_lexicon(ss.str(), lp);
    std::string path = out_path(out_dir, "lexicon.txt");
    save_lexicon(lex, path);
    std::printf("lexicon-build -> %zu words, %zu phrases, %zu colocations%s\n", lex.words.size(),
                lex.phrases.size(), lex.colocations.size(),
                lex.degenerate ? " (warning: empty word set)" : "");
    return {path};
}

std::vector<std::string> run_corpus_gen(const ExperimentConfig& cfg, const std::string& out_dir) {
    CorpusParams cp;
    cp.target_chars = size_t(cfg.get_int("chars", 1 << 22));
    cp.seed = cfg.get_u64("seed", 1);
    Bytes corpus = generate_corpus(cp);
    std::string path = out_path(out_dir, "corpus.txt");
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << corpus;
    std::printf("corpus-gen -> %zu chars at %s\n", corpus.size(), path.c_str());
    return {path};
}

}  // namespace

std::vector<std::string> known_experiments() {
    return {"de-seq",     "de-iter",      "threshold",   "sim-peel",   "sim-gen",
            "sim-iter-nr", "sim-bsc-soft", "nr-decode",   "lzw-build-dict",
            "lexicon-build", "corpus-gen"};
}

bool is_known_experiment(const std::string& name) {
    auto all = known_experiments();
    return std::find(all.begin(), all.end(), name) != all.end();
}

std::vector<std::string> run_experiment(const std::string& name, const ExperimentConfig& cfg,
                                        const std::string& out_dir) {
    if (name == "de-seq") return run_de_seq(cfg, out_dir);
    if (name == "de-iter") return run_de_iter(cfg, out_dir);
    if (name == "threshold") return run_threshold(cfg, out_dir);
    if (name == "sim-peel") return run_sim_peel(cfg, out_dir);
    if (name == "sim-gen") return run_sim_gen(cfg, out_dir);
    if (name == "sim-iter-nr") return run_sim_iter_nr(cfg, out_dir);
    if (name == "sim-bsc-soft") return run_sim_bsc_soft(cfg, out_dir);
    if (name == "nr-decode") return run_nr_decode(cfg, out_dir);
    if (name == "lzw-build-dict") return run_lzw_build(cfg, out_dir);
    if (name == "lexicon-build") return run_lexicon_build(cfg, out_dir);
    if (name == "corpus-gen") return run_corpus_gen(cfg, out_dir);
    throw std::invalid_argument("unknown experiment '" + name + "'");
}

bool verify_reproducibility(const std::string& name, const ExperimentConfig& cfg) {
    auto run_to_temp = [&](const std::string& tag) {
        fs::path dir = fs::temp_directory_path() / ("nrlab-repro-" + tag + "-" +
                                                    std::to_string(::getpid()));
        fs::remove_all(dir);
        auto files = run_experiment(name, cfg, dir.string());
        std::vector<std::string> bodies;
        for (const auto& p : files) {
            std::ifstream f(p, std::ios::binary);
            std::stringstream ss;
            ss << f.rdbuf();
            bodies.push_back(ss.str());
        }
        fs::remove_all(dir);
        return bodies;
    };
    return run_to_temp("a") == run_to_temp("b");
}

}  // namespace nrlab
