#pragma once

#include <cstdint>
#include <vector>

#include "nrlab/density_evolution.hpp"
#include "nrlab/tanner.hpp"

namespace nrlab {

struct SegmentSimPoint {
    int t = 0;
    double eps = 0.0;        // after the NR pass
    double eps_prime = 0.0;  // after the peeling round
};

struct SegmentSimResult {
    std::vector<SegmentSimPoint> trajectory;
    bool converged = false;
    size_t segments = 0;
    size_t lucky_count = 0;
};

// Monte Carlo of the abstract iterative model: i.i.d. erasures, one
// synchronous peeling round per iteration, then every lucky segment whose
// erasure count has first dropped to <= l_theta is fully corrected. A segment
// is consulted at most once.
SegmentSimResult segment_model_simulate(const IterDEParams& params, uint32_t n, uint64_t seed,
                                        int t_max = 100);

}  // namespace nrlab
