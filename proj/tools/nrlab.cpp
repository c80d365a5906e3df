#include <cstdio>
#include <cstring>
#include <stdexcept>
#include <string>

#include "nrlab/config.hpp"
#include "nrlab/experiments.hpp"

namespace {

void usage() {
    std::printf(
        "usage: nrlab <experiment> [--config <path>] [--out <dir>] [--seed <u64>]\n"
        "             [--verify-repro] [--<key> <value> | key=value ...]\n\n"
        "experiments:\n");
    for (const auto& e : nrlab::known_experiments()) std::printf("  %s\n", e.c_str());
    std::printf(
        "\nFlags after the experiment name override config-file keys; e.g.\n"
        "  nrlab threshold --dv 5 --dc 100 --scheme classic\n"
        "  nrlab de-iter --p 0.9 --l 120 --ltheta 30 --eps0 0.2\n"
        "exit codes: 0 ok, 2 configuration error, 3 runtime error\n");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2 || std::strcmp(argv[1], "--help") == 0 || std::strcmp(argv[1], "-h") == 0) {
        usage();
        return argc < 2 ? 2 : 0;
    }
    std::string experiment = argv[1];
    std::string out_dir = "out";
    bool verify = false;

    try {
        nrlab::ExperimentConfig cfg;
        // first pass: load --config before applying overrides
        for (int i = 2; i + 1 < argc; ++i)
            if (std::strcmp(argv[i], "--config") == 0)
                cfg = nrlab::ExperimentConfig::from_file(argv[i + 1]);
        for (int i = 2; i < argc; ++i) {
            std::string arg = argv[i];
            if (arg == "--config") {
                ++i;  // already handled
            } else if (arg == "--out") {
                if (i + 1 >= argc) throw std::invalid_argument("--out needs a value");
                out_dir = argv[++i];
            } else if (arg == "--seed") {
                if (i + 1 >= argc) throw std::invalid_argument("--seed needs a value");
                cfg.set("master_seed", argv[++i]);
            } else if (arg == "--verify-repro") {
                verify = true;
            } else if (arg.rfind("--", 0) == 0) {
                if (i + 1 >= argc) throw std::invalid_argument(arg + " needs a value");
                cfg.set(arg.substr(2), argv[++i]);
            } else if (arg.find('=') != std::string::npos) {
                size_t eq = arg.find('=');
                cfg.set(arg.substr(0, eq), arg.substr(eq + 1));
            } else {
                throw std::invalid_argument("unrecognized argument '" + arg + "'");
            }
        }
        if (cfg.has("out")) out_dir = cfg.get_str("out");
        if (!nrlab::is_known_experiment(experiment))
            throw std::invalid_argument("unknown experiment '" + experiment + "'");

        if (verify) {
            bool same = nrlab::verify_reproducibility(experiment, cfg);
            std::printf("reproducible: %s\n", same ? "true" : "false");
            return same ? 0 : 3;
        }
        nrlab::run_experiment(experiment, cfg, out_dir);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
