#include "nrlab/tanner.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "nrlab/rng.hpp"

namespace nrlab {

namespace {

uint64_t edge_key(uint32_t v, uint32_t c) { return (uint64_t(v) << 32) | c; }
uint64_t pair_key(uint32_t c1, uint32_t c2) {
    if (c1 > c2) std::swap(c1, c2);
    return (uint64_t(c1) << 32) | c2;
}

struct Builder {
    uint32_t n, m;
    int dv, dc;
    std::vector<uint32_t> ev, ec;                    // edge endpoints
    std::vector<std::vector<uint32_t>> vedges;       // variable -> edge ids
    std::unordered_set<uint64_t> edge_set;           // (v,c) occupancy
    std::unordered_map<uint64_t, uint32_t> pair_use; // check-pair -> #variables using it

    void add_pairs(uint32_t v, int skip_edge = -1) {
        auto& es = vedges[v];
        for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = i + 1; j < es.size(); ++j) {
                if (int(es[i]) == skip_edge || int(es[j]) == skip_edge) continue;
                pair_use[pair_key(ec[es[i]], ec[es[j]])]++;
            }
    }
    void remove_pairs(uint32_t v, int skip_edge = -1) {
        auto& es = vedges[v];
        for (size_t i = 0; i < es.size(); ++i)
            for (size_t j = i + 1; j < es.size(); ++j) {
                if (int(es[i]) == skip_edge || int(es[j]) == skip_edge) continue;
                auto it = pair_use.find(pair_key(ec[es[i]], ec[es[j]]));
                if (--it->second == 0) pair_use.erase(it);
            }
    }
    // pairs the edge e would form with the other edges of variable v if its
    // check became c_new; true when all are vacant
    bool pairs_vacant(uint32_t v, uint32_t e, uint32_t c_new) const {
        for (uint32_t o : vedges[v]) {
            if (o == e) continue;
            if (ec[o] == c_new) return false;  // would be a parallel edge
            auto it = pair_use.find(pair_key(ec[o], c_new));
            if (it != pair_use.end()) return false;
        }
        return true;
    }

    // swap the checks of edges e1 and e2; maintains all indexes
    void swap_checks(uint32_t e1, uint32_t e2) {
        uint32_t v1 = ev[e1], v2 = ev[e2];
        remove_pairs(v1);
        if (v2 != v1) remove_pairs(v2);
        edge_set.erase(edge_key(v1, ec[e1]));
        edge_set.erase(edge_key(v2, ec[e2]));
        std::swap(ec[e1], ec[e2]);
        edge_set.insert(edge_key(v1, ec[e1]));
        edge_set.insert(edge_key(v2, ec[e2]));
        add_pairs(v1);
        if (v2 != v1) add_pairs(v2);
    }
};

}  // namespace

TannerGraph build_regular_graph(uint32_t n, int dv, int dc, uint64_t seed, int cycle_passes) {
    if (dv < 2) throw std::invalid_argument("tanner: dv must be >= 2");
    if (dc <= dv) throw std::invalid_argument("tanner: dc must exceed dv");
    if ((uint64_t(n) * dv) % dc != 0)
        throw std::invalid_argument("tanner: n*dv not divisible by dc");
    uint32_t m = uint32_t(uint64_t(n) * dv / dc);
    size_t E = size_t(n) * dv;
    Rng rng(mix64(seed ^ 0x7a55e11eull));

    Builder b;
    b.n = n; b.m = m; b.dv = dv; b.dc = dc;
    b.ev.resize(E);
    b.ec.resize(E);
    for (size_t e = 0; e < E; ++e) {
        b.ev[e] = uint32_t(e / dv);
        b.ec[e] = uint32_t(e / (E / m));
    }
    // Fisher-Yates over the check sockets
    for (size_t i = E - 1; i > 0; --i)
        std::swap(b.ec[i], b.ec[rng.next_below(i + 1)]);

    b.vedges.assign(n, {});
    for (size_t e = 0; e < E; ++e) b.vedges[b.ev[e]].push_back(uint32_t(e));

    // pass 1: clear parallel edges by random swaps
    b.edge_set.reserve(E * 2);
    std::vector<uint32_t> dup;
    std::vector<uint8_t> is_dup(E, 0);
    for (size_t e = 0; e < E; ++e)
        if (!b.edge_set.insert(edge_key(b.ev[e], b.ec[e])).second) {
            dup.push_back(uint32_t(e));
            is_dup[e] = 1;
        }
    for (int pass = 0; pass < 1000 && !dup.empty(); ++pass) {
        std::vector<uint32_t> still;
        // strict swaps leave the partner clean; once those stall (tiny m),
        // let the duplicate migrate to the partner edge and keep walking
        bool relaxed = pass >= 20;
        for (uint32_t e : dup) {
            bool fixed = false;
            for (int tries = 0; tries < 200 && !fixed; ++tries) {
                uint32_t o = uint32_t(rng.next_below(E));
                if (is_dup[o] || b.ev[o] == b.ev[e] || b.ec[o] == b.ec[e]) continue;
                if (b.edge_set.count(edge_key(b.ev[e], b.ec[o]))) continue;
                bool partner_clean = !b.edge_set.count(edge_key(b.ev[o], b.ec[e]));
                if (!partner_clean && !relaxed) continue;
                // the duplicate slot is not in edge_set yet; insert after swap
                b.edge_set.erase(edge_key(b.ev[o], b.ec[o]));
                std::swap(b.ec[e], b.ec[o]);
                b.edge_set.insert(edge_key(b.ev[e], b.ec[e]));
                is_dup[e] = 0;
                if (partner_clean) {
                    b.edge_set.insert(edge_key(b.ev[o], b.ec[o]));
                } else {
                    still.push_back(o);  // the duplicate moved here
                    is_dup[o] = 1;
                }
                fixed = true;
            }
            if (!fixed) still.push_back(e);
        }
        dup = std::move(still);
    }
    if (!dup.empty()) throw std::runtime_error("tanner: could not clear parallel edges");

    // pass 2: 4-cycle elimination. A 4-cycle is two variables sharing a check
    // pair; rewire one offending edge to keep every pair uniquely claimed.
    b.pair_use.reserve(size_t(n) * dv * (dv - 1) / 2);
    for (uint32_t v = 0; v < n; ++v) b.add_pairs(v);
    for (int pass = 0; pass < cycle_passes; ++pass) {
        std::vector<uint32_t> offenders;  // one edge per conflicted pair claim
        {
            std::unordered_set<uint64_t> claimed;
            claimed.reserve(size_t(n) * dv * (dv - 1) / 2);
            for (uint32_t v = 0; v < n; ++v) {
                auto& es = b.vedges[v];
                bool flagged = false;
                for (size_t i = 0; i < es.size() && !flagged; ++i)
                    for (size_t j = i + 1; j < es.size() && !flagged; ++j)
                        if (!claimed.insert(pair_key(b.ec[es[i]], b.ec[es[j]])).second) {
                            offenders.push_back(es[j]);
                            flagged = true;
                        }
            }
        }
        if (offenders.empty()) break;
        size_t fixed = 0;
        for (uint32_t e : offenders) {
            uint32_t v = b.ev[e];
            for (int tries = 0; tries < 100; ++tries) {
                uint32_t o = uint32_t(rng.next_below(E));
                uint32_t w = b.ev[o];
                if (w == v || b.ec[o] == b.ec[e]) continue;
                if (b.edge_set.count(edge_key(v, b.ec[o]))) continue;
                if (b.edge_set.count(edge_key(w, b.ec[e]))) continue;
                // both variables must land on vacant pairs (ignoring the two
                // pair sets being vacated by the swap itself)
                b.remove_pairs(v);
                b.remove_pairs(w);
                bool ok = b.pairs_vacant(v, e, b.ec[o]) && b.pairs_vacant(w, o, b.ec[e]);
                b.add_pairs(v);
                b.add_pairs(w);
                if (!ok) continue;
                b.swap_checks(e, o);
                ++fixed;
                break;
            }
        }
        if (fixed == 0) break;  // stuck; best effort
    }

    TannerGraph g;
    g.n = n; g.m = m; g.dv = dv; g.dc = dc; g.seed = seed;
    g.edge_var = std::move(b.ev);
    g.edge_chk = std::move(b.ec);
    g.var_edges.resize(E);
    g.chk_edges.resize(E);
    std::vector<uint32_t> vfill(n, 0), cfill(m, 0);
    for (size_t e = 0; e < E; ++e) {
        uint32_t v = g.edge_var[e], c = g.edge_chk[e];
        g.var_edges[size_t(v) * dv + vfill[v]++] = uint32_t(e);
        g.chk_edges[size_t(c) * dc + cfill[c]++] = uint32_t(e);
    }
    return g;
}

void TannerGraph::validate() const {
    size_t E = size_t(n) * dv;
    if (uint64_t(n) * dv != uint64_t(m) * dc) throw std::runtime_error("tanner: n*dv != m*dc");
    if (edge_var.size() != E || edge_chk.size() != E)
        throw std::runtime_error("tanner: edge array size");
    std::vector<int> vd(n, 0), cd(m, 0);
    for (size_t e = 0; e < E; ++e) {
        if (edge_var[e] >= n || edge_chk[e] >= m) throw std::runtime_error("tanner: bad endpoint");
        vd[edge_var[e]]++;
        cd[edge_chk[e]]++;
    }
    for (int d : vd)
        if (d != dv) throw std::runtime_error("tanner: variable degree");
    for (int d : cd)
        if (d != dc) throw std::runtime_error("tanner: check degree");
    for (uint32_t v = 0; v < n; ++v)
        for (int i = 0; i < dv; ++i)
            if (edge_var[edges_of_var(v)[i]] != v) throw std::runtime_error("tanner: var CSR");
    for (uint32_t c = 0; c < m; ++c)
        for (int i = 0; i < dc; ++i)
            if (edge_chk[edges_of_chk(c)[i]] != c) throw std::runtime_error("tanner: chk CSR");
    if (count_parallel_edges() != 0) throw std::runtime_error("tanner: parallel edges");
}

size_t TannerGraph::count_parallel_edges() const {
    std::unordered_set<uint64_t> seen;
    seen.reserve(edges() * 2);
    size_t dup = 0;
    for (size_t e = 0; e < edges(); ++e)
        if (!seen.insert(edge_key(edge_var[e], edge_chk[e])).second) ++dup;
    return dup;
}

size_t TannerGraph::count_four_cycles() const {
    std::unordered_map<uint64_t, uint32_t> use;
    use.reserve(size_t(n) * dv * (dv - 1) / 2);
    size_t cycles = 0;
    for (uint32_t v = 0; v < n; ++v)
        for (int i = 0; i < dv; ++i)
            for (int j = i + 1; j < dv; ++j) {
                uint32_t c1 = edge_chk[edges_of_var(v)[i]];
                uint32_t c2 = edge_chk[edges_of_var(v)[j]];
                cycles += use[pair_key(c1, c2)]++;
            }
    return cycles;
}

void TannerGraph::save(std::ostream& out) const {
    out << "TANNER v1 n=" << n << " m=" << m << " dv=" << dv << " dc=" << dc
        << " seed=" << seed << "\n";
    for (uint32_t c = 0; c < m; ++c) {
        for (int i = 0; i < dc; ++i) {
            if (i) out << ' ';
            out << edge_var[edges_of_chk(c)[i]];
        }
        out << "\n";
    }
}

TannerGraph TannerGraph::load(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw std::invalid_argument("tanner: empty file");
    TannerGraph g;
    unsigned long long seed = 0;
    if (sscanf(header.c_str(), "TANNER v1 n=%u m=%u dv=%d dc=%d seed=%llu", &g.n, &g.m,
               &g.dv, &g.dc, &seed) != 5)
        throw std::invalid_argument("tanner: bad header");
    g.seed = seed;
    size_t E = size_t(g.n) * g.dv;
    g.edge_var.reserve(E);
    g.edge_chk.reserve(E);
    for (uint32_t c = 0; c < g.m; ++c) {
        for (int i = 0; i < g.dc; ++i) {
            uint32_t v;
            if (!(in >> v)) throw std::invalid_argument("tanner: truncated file");
            g.edge_var.push_back(v);
            g.edge_chk.push_back(c);
        }
    }
    g.var_edges.resize(E);
    g.chk_edges.resize(E);
    std::vector<uint32_t> vfill(g.n, 0), cfill(g.m, 0);
    for (size_t e = 0; e < E; ++e) {
        uint32_t v = g.edge_var[e], c = g.edge_chk[e];
        if (v >= g.n || vfill[v] >= uint32_t(g.dv))
            throw std::invalid_argument("tanner: inconsistent degrees");
        g.var_edges[size_t(v) * g.dv + vfill[v]++] = uint32_t(e);
        g.chk_edges[size_t(c) * g.dc + cfill[c]++] = uint32_t(e);
    }
    return g;
}

}  // namespace nrlab
