#pragma once

#include <string>
#include <vector>

#include "nrlab/config.hpp"

namespace nrlab {

// Runs the named experiment; writes one CSV artifact into out_dir and prints
// a short summary per sweep point. Throws std::invalid_argument for config
// problems and std::runtime_error for execution problems.
// Returns the paths of the files written.
std::vector<std::string> run_experiment(const std::string& name, const ExperimentConfig& cfg,
                                        const std::string& out_dir);

bool is_known_experiment(const std::string& name);
std::vector<std::string> known_experiments();

// Runs the experiment twice and byte-compares the artifacts.
bool verify_reproducibility(const std::string& name, const ExperimentConfig& cfg);

}  // namespace nrlab
