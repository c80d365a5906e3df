#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nrlab {

// Regular (dv, dc) bipartite graph in edge-list + CSR form. Immutable after
// construction; decoders index message arrays by edge id.
struct TannerGraph {
    uint32_t n = 0, m = 0;
    int dv = 0, dc = 0;
    uint64_t seed = 0;

    std::vector<uint32_t> edge_var;  // edge -> variable
    std::vector<uint32_t> edge_chk;  // edge -> check
    std::vector<uint32_t> var_edges;  // CSR, dv edges per variable
    std::vector<uint32_t> chk_edges;  // CSR, dc edges per check

    size_t edges() const { return edge_var.size(); }
    const uint32_t* edges_of_var(uint32_t v) const { return &var_edges[size_t(v) * dv]; }
    const uint32_t* edges_of_chk(uint32_t c) const { return &chk_edges[size_t(c) * dc]; }

    // throws on any violated structural invariant
    void validate() const;
    size_t count_parallel_edges() const;
    size_t count_four_cycles() const;

    void save(std::ostream& out) const;
    static TannerGraph load(std::istream& in);
};

// Random socket permutation with parallel-edge removal and bounded 4-cycle
// elimination passes. Deterministic per seed.
TannerGraph build_regular_graph(uint32_t n, int dv, int dc, uint64_t seed,
                                int cycle_passes = 100);

}  // namespace nrlab
