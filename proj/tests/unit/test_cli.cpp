#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "nrlab/config.hpp"
#include "nrlab/csv.hpp"
#include "nrlab/experiments.hpp"

using namespace nrlab;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path dir;
    TempDir(const std::string& tag) : dir(fs::temp_directory_path() / ("nrlab-test-" + tag)) {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~TempDir() { fs::remove_all(dir); }
    std::string str() const { return dir.string(); }
};

}  // namespace

TEST_CASE("config parses sections, comments and overrides") {
    ExperimentConfig cfg = ExperimentConfig::from_string(
        "# comment\n[code]\nn = 2000\ndv=5\n\n[channel]\neps0 = 0.1\nname=plain text\n");
    CHECK(cfg.get_int("n", 0) == 2000);
    CHECK(cfg.get_int("dv", 0) == 5);
    CHECK(cfg.get_double("eps0", 0.0) == doctest::Approx(0.1));
    CHECK(cfg.get_str("name") == "plain text");
    CHECK(cfg.get_int("missing", 7) == 7);
    CHECK_THROWS_AS(cfg.need_int("missing"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_string("novalue\n"), std::invalid_argument);
    CHECK_THROWS_AS(ExperimentConfig::from_string("[open\n"), std::invalid_argument);
}

TEST_CASE("config rejects malformed numbers") {
    ExperimentConfig cfg = ExperimentConfig::from_string("x=abc\nlist=1,zz\n");
    CHECK_THROWS_AS(cfg.get_int("x", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_list("list", {}), std::invalid_argument);
}

TEST_CASE("shortest round-trip formatting") {
    CHECK(fmt_double(0.1) == "0.1");
    CHECK(fmt_double(0.036) == "0.036");
    CHECK(fmt_double(1.0) == "1");
    CHECK(fmt_double(1e-10) == "1e-10");
}

TEST_CASE("unknown experiment is rejected") {
    ExperimentConfig cfg;
    CHECK_FALSE(is_known_experiment("frobnicate"));
    CHECK_THROWS_AS(run_experiment("frobnicate", cfg, "/tmp"), std::invalid_argument);
}

TEST_CASE("threshold experiment emits the classic value") {
    TempDir tmp("thr");
    ExperimentConfig cfg;
    cfg.set("scheme", "classic");
    cfg.set("dv", "5");
    cfg.set("dc", "100");
    run_experiment("threshold", cfg, tmp.str());
    std::string body = slurp(tmp.str() + "/threshold.csv");
    CHECK(body.rfind("param_p,eps_star,bracket_lo,bracket_hi\n", 0) == 0);
    CHECK(body.find("0.035") != std::string::npos);
}

TEST_CASE("trial experiments honour trials=0 with an empty body") {
    TempDir tmp("zero");
    ExperimentConfig cfg;
    cfg.set("n", "2000");
    cfg.set("trials", "0");
    cfg.set("eps0", "0.02");
    run_experiment("sim-peel", cfg, tmp.str());
    std::string body = slurp(tmp.str() + "/sim_peel.csv");
    CHECK(body ==
          "experiment,trial,seed,rate,converged,iterations,residual_erasures,residual_errors\n");
}

TEST_CASE("de-iter trajectory reaches 1e-6 quickly at the reference point") {
    TempDir tmp("iter");
    ExperimentConfig cfg;
    cfg.set("p", "0.9");
    cfg.set("eps0", "0.2");
    run_experiment("de-iter", cfg, tmp.str());
    std::string body = slurp(tmp.str() + "/de_iter.csv");
    CHECK(body.rfind("t,eps,eps_prime,q,d\n", 0) == 0);
    // the trajectory ends with eps ~ 1e-13 on the last line
    CHECK(body.find("e-13") != std::string::npos);
}

TEST_CASE("stochastic experiments reproduce byte-identically") {
    ExperimentConfig cfg;
    cfg.set("n", "2000");
    cfg.set("trials", "6");
    cfg.set("eps0", "0.03");
    cfg.set("master_seed", "42");
    CHECK(verify_reproducibility("sim-peel", cfg));
}

TEST_CASE("threshold experiment is reproducible regardless of seed") {
    ExperimentConfig cfg;
    cfg.set("scheme", "classic");
    CHECK(verify_reproducibility("threshold", cfg));
}

TEST_CASE("different master seeds give different trial outcomes") {
    TempDir a("seed-a"), b("seed-b");
    ExperimentConfig cfg;
    cfg.set("n", "2000");
    cfg.set("trials", "6");
    cfg.set("eps0", "0.05");
    cfg.set("master_seed", "1");
    run_experiment("sim-peel", cfg, a.str());
    cfg.set("master_seed", "2");
    run_experiment("sim-peel", cfg, b.str());
    CHECK(slurp(a.str() + "/sim_peel.csv") != slurp(b.str() + "/sim_peel.csv"));
}

TEST_CASE("corpus, dictionary and lexicon builders chain through files") {
    TempDir tmp("chain");
    ExperimentConfig gen;
    gen.set("chars", "200000");
    gen.set("seed", "5");
    run_experiment("corpus-gen", gen, tmp.str());

    ExperimentConfig dict_cfg;
    dict_cfg.set("corpus", tmp.str() + "/corpus.txt");
    dict_cfg.set("ell", "10");
    run_experiment("lzw-build-dict", dict_cfg, tmp.str());

    ExperimentConfig lex_cfg;
    lex_cfg.set("corpus", tmp.str() + "/corpus.txt");
    run_experiment("lexicon-build", lex_cfg, tmp.str());

    {
        std::string full = slurp(tmp.str() + "/corpus.txt");
        std::ofstream small(tmp.str() + "/input.txt", std::ios::binary);
        small << full.substr(0, 15000);
    }
    ExperimentConfig nr;
    nr.set("dict", tmp.str() + "/dictionary.lzw");
    nr.set("lexicon", tmp.str() + "/lexicon.txt");
    nr.set("input", tmp.str() + "/input.txt");
    nr.set("eps_list", "0.05");
    run_experiment("nr-decode", nr, tmp.str());
    std::string body = slurp(tmp.str() + "/nr_decode.csv");
    CHECK(body.rfind("eps,delta_hat,rho_hat,e_nr,reduction,bits,erasures,recovered_ok,"
                     "recovered_bad\n", 0) == 0);

    ExperimentConfig bad;
    bad.set("corpus", tmp.str() + "/missing.txt");
    CHECK_THROWS_AS(run_experiment("lexicon-build", bad, tmp.str()), std::invalid_argument);
}
