#pragma once

#include <functional>
#include <vector>

#include "nrlab/binomial.hpp"

namespace nrlab {

// ---------------------------------------------------------------------------
// Sequential scheme: error/erasure density evolution for the generalized
// bit-flipping decoder, tracked at edge-message level.
// ---------------------------------------------------------------------------

struct SeqDEParams {
    int dv = 5, dc = 100;
    int pi = 1, tau = 4;
    double eps0 = 0.0;   // channel erasure rate
    double p0 = 1.0;     // erasure retained by the text decoder
    double gamma0 = 0.0; // wrong value written by the text decoder

    double alpha0() const { return eps0 * (1.0 - p0) * gamma0; }
    double beta0() const { return eps0 * p0; }
    double kappa0() const { return eps0 * (1.0 - p0) * (1.0 - gamma0); }
    void validate() const;
};

struct SeqDEState {
    int t = 0;
    double alpha = 0.0, beta = 0.0;
    // intermediates of the latest step, kept for inspection
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, mu = 0.0, nu = 0.0;
};

SeqDEState seq_de_init(const SeqDEParams& p);
SeqDEState seq_de_step(const SeqDEState& s, const SeqDEParams& p);

struct DERun {
    bool success = false;
    std::vector<SeqDEState> trajectory;
};

DERun seq_de_run(const SeqDEParams& p, double tol = 1e-10, int t_max = 2000);

// p0 over the whole codeword when the text decoder only sees information bits
double map_info_erasure_rate(double p0_info, double R);

// ---------------------------------------------------------------------------
// Iterative scheme: one peeling round alternating with a segment decoder that
// corrects a lucky segment once its erasure count first drops to l_theta.
// The peeling recursion is tracked at edge level; codeword erasure rates use
// the node-level exponent dv.
// ---------------------------------------------------------------------------

struct IterDEParams {
    int dv = 5, dc = 100;
    int l = 120;
    int l_theta = 30;
    double p = 0.0;     // lucky-segment probability
    double eps0 = 0.0;

    double rate() const { return 1.0 - double(dv) / double(dc); }
    void validate() const;
};

struct IterDEState {
    int t = 0;
    double eps = 0.0;        // eps_t, after the NR half of iteration t
    double eps_prime = 0.0;  // eps'_t, after the LDPC half
    double q = 1.0;          // eps_t / eps'_t
    double d = 1.0;          // eps'_t / eps_{t-1}
    double q_product = 1.0;  // prod_{m<=t} q_m with q_0 = 1
    double d_product = 1.0;  // prod_{i<=t} d_i
    double edge_rate = 0.0;  // erasure rate of variable-to-check messages
    std::vector<double> f;   // f_k(t) over lucky-segment erasure counts
    bool terminated = false; // eps' = 0 or d = 1 reached
};

IterDEState iter_de_init(const IterDEParams& p);
IterDEState iter_de_step(const IterDEState& s, const IterDEParams& p, const BinomialTable& binom);

struct IterDERun {
    bool success = false;
    std::vector<IterDEState> trajectory;
};

IterDERun iter_de_run(const IterDEParams& p, double tol = 1e-10, int t_max = 10000);

// classic BEC density evolution x <- eps*(1-(1-x)^(dc-1))^(dv-1)
bool classic_de_run(double eps, int dv, int dc, double tol = 1e-10, int t_max = 10000);

// ---------------------------------------------------------------------------
// Threshold search and the residual-noise metric.
// ---------------------------------------------------------------------------

struct ThresholdResult {
    double eps_star = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    int evaluations = 0;
};

// Bisection on a monotone success predicate; requires success at lo and
// failure at hi.
ThresholdResult erasure_threshold(const std::function<bool(double)>& runner, double lo,
                                  double hi, double tol = 1e-4);

// per-bit entropy of the residual noise left by the text decoder,
// eps*(delta + (1-delta)*H2(rho/(1-delta)))
double noise_entropy(double eps, double delta, double rho);
double noise_reduction(double eps, double e_nr);

double binary_entropy(double p);

}  // namespace nrlab
