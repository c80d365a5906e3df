#include "nrlab/segment_sim.hpp"

#include <stdexcept>

#include "nrlab/rng.hpp"

namespace nrlab {

SegmentSimResult segment_model_simulate(const IterDEParams& params, uint32_t n, uint64_t seed,
                                        int t_max) {
    params.validate();
    if ((uint64_t(n) * params.dv) % params.dc != 0)
        throw std::invalid_argument("segment-sim: n*dv not divisible by dc");
    uint32_t m = uint32_t(uint64_t(n) * params.dv / params.dc);
    uint32_t k = n - m;
    if (k % params.l != 0)
        throw std::invalid_argument("segment-sim: information bits do not split into whole segments");
    uint32_t nseg = k / params.l;

    TannerGraph g = build_regular_graph(n, params.dv, params.dc, derive_seed(seed, stream::graph, 0));

    Rng ch(derive_seed(seed, stream::channel, 0));
    std::vector<uint8_t> erased(n);
    for (uint32_t v = 0; v < n; ++v) erased[v] = ch.next_bool(params.eps0);

    Rng lr(derive_seed(seed, stream::lucky, 0));
    std::vector<uint8_t> lucky(nseg), attempted(nseg, 0);
    SegmentSimResult res;
    res.segments = nseg;
    for (uint32_t s = 0; s < nseg; ++s) {
        lucky[s] = lr.next_bool(params.p);
        res.lucky_count += lucky[s];
    }

    std::vector<uint32_t> segcnt(nseg, 0);
    std::vector<uint8_t> resolve(n);
    for (int t = 1; t <= t_max; ++t) {
        // synchronous peeling round: checks with exactly one erased neighbour
        std::fill(resolve.begin(), resolve.end(), 0);
        for (uint32_t c = 0; c < g.m; ++c) {
            const uint32_t* es = g.edges_of_chk(c);
            int cnt = 0;
            uint32_t lone = 0;
            for (int i = 0; i < g.dc && cnt < 2; ++i) {
                uint32_t v = g.edge_var[es[i]];
                if (erased[v]) {
                    ++cnt;
                    lone = v;
                }
            }
            if (cnt == 1) resolve[lone] = 1;
        }
        size_t still = 0;
        for (uint32_t v = 0; v < n; ++v) {
            if (resolve[v]) erased[v] = 0;
            still += erased[v];
        }
        SegmentSimPoint pt;
        pt.t = t;
        pt.eps_prime = double(still) / double(n);

        // NR pass over information segments, once per segment
        std::fill(segcnt.begin(), segcnt.end(), 0);
        for (uint32_t v = 0; v < k; ++v)
            if (erased[v]) segcnt[v / params.l]++;
        for (uint32_t s = 0; s < nseg; ++s) {
            if (attempted[s] || segcnt[s] == 0 || segcnt[s] > uint32_t(params.l_theta)) continue;
            attempted[s] = 1;
            if (!lucky[s]) continue;
            uint32_t base = s * params.l;
            for (int i = 0; i < params.l; ++i) erased[base + i] = 0;
        }
        size_t after = 0;
        for (uint32_t v = 0; v < n; ++v) after += erased[v];
        pt.eps = double(after) / double(n);
        res.trajectory.push_back(pt);
        if (after == 0) {
            res.converged = true;
            break;
        }
        if (res.trajectory.size() >= 2) {
            const auto& prev = res.trajectory[res.trajectory.size() - 2];
            if (prev.eps == pt.eps && prev.eps_prime == pt.eps_prime) break;  // stagnated
        }
    }
    return res;
}

}  // namespace nrlab
