#include "nrlab/density_evolution.hpp"

#include <cmath>
#include <stdexcept>

namespace nrlab {

void SeqDEParams::validate() const {
    if (dv < 2 || dc <= dv) throw std::invalid_argument("seq-de: bad degrees");
    if (pi < 1 || pi > dv - 1) throw std::invalid_argument("seq-de: pi outside [1, dv-1]");
    if (tau < 1 || tau > dv - 1) throw std::invalid_argument("seq-de: tau outside [1, dv-1]");
    for (double x : {eps0, p0, gamma0})
        if (x < 0.0 || x > 1.0) throw std::invalid_argument("seq-de: probability outside [0,1]");
}

SeqDEState seq_de_init(const SeqDEParams& p) {
    p.validate();
    SeqDEState s;
    s.alpha = p.alpha0();
    s.beta = p.beta0();
    return s;
}

SeqDEState seq_de_step(const SeqDEState& s, const SeqDEParams& p) {
    const int dvm = p.dv - 1, dcm = p.dc - 1;
    double a = s.alpha, b = s.beta;
    // A = [(1-b)^dcm - (1-b-2a)^dcm]/2 without cancellation for tiny a
    double base = std::pow(1.0 - b, dcm);
    double ratio_pow = 0.0;
    if (1.0 - b > 0.0)
        ratio_pow = -std::expm1(double(dcm) * std::log1p(-2.0 * a / (1.0 - b)));
    double A = 0.5 * base * ratio_pow;
    double B = base - A;  // (base + (1-b-2a)^dcm)/2 = base - A
    double E = 1.0 - A - B;
    if (E < 0.0) E = 0.0;

    BinomialTable binom(dvm);
    double C = 1.0 - std::pow(1.0 - A, dvm);
    for (int i = 0; i < p.tau; ++i) C += binom(dvm, i) * std::pow(B, i) * std::pow(E, dvm - i);
    double D = 0.0;
    for (int j = p.tau; j <= dvm; ++j) D += binom(dvm, j) * std::pow(A, j) * std::pow(E, dvm - j);
    double mu = 0.0, nu = 0.0;
    for (int mm = p.pi; mm <= dvm; ++mm) {
        mu += binom(dvm, mm) * std::pow(A, mm) * std::pow(E, dvm - mm);
        nu += binom(dvm, mm) * std::pow(B, mm) * std::pow(E, dvm - mm);
    }

    SeqDEState out;
    out.t = s.t + 1;
    out.alpha = p.alpha0() * C + p.kappa0() * D + p.beta0() * mu;
    out.beta = p.beta0() * (1.0 - mu - nu);
    out.A = A; out.B = B; out.C = C; out.D = D; out.mu = mu; out.nu = nu;
    return out;
}

DERun seq_de_run(const SeqDEParams& p, double tol, int t_max) {
    if (tol <= 0.0) throw std::invalid_argument("seq-de: tol must be positive");
    DERun run;
    SeqDEState s = seq_de_init(p);
    run.trajectory.push_back(s);
    for (int t = 0; t < t_max; ++t) {
        SeqDEState nxt = seq_de_step(s, p);
        run.trajectory.push_back(nxt);
        double now = nxt.alpha + nxt.beta;
        if (now < tol) {
            run.success = true;
            return run;
        }
        double prev = s.alpha + s.beta;
        if (std::abs(now - prev) < 1e-12 * std::max(prev, 1e-300)) return run;  // stagnated
        s = nxt;
    }
    return run;
}

double map_info_erasure_rate(double p0_info, double R) {
    if (p0_info < 0.0 || p0_info > 1.0 || R < 0.0 || R > 1.0)
        throw std::invalid_argument("map_info_erasure_rate: inputs outside [0,1]");
    return R * p0_info + (1.0 - R);
}

void IterDEParams::validate() const {
    if (dv < 2 || dc <= dv) throw std::invalid_argument("iter-de: bad degrees");
    if (l < 1) throw std::invalid_argument("iter-de: l must be positive");
    if (l_theta < 0 || l_theta > l) throw std::invalid_argument("iter-de: l_theta outside [0,l]");
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("iter-de: p outside [0,1]");
    if (eps0 < 0.0 || eps0 > 1.0) throw std::invalid_argument("iter-de: eps0 outside [0,1]");
}

IterDEState iter_de_init(const IterDEParams& p) {
    p.validate();
    IterDEState s;
    s.eps = p.eps0;       // eps at t=0 is the channel rate
    s.edge_rate = p.eps0;
    s.eps_prime = p.eps0;
    return s;
}

IterDEState iter_de_step(const IterDEState& s, const IterDEParams& p, const BinomialTable& binom) {
    if (s.terminated) return s;
    const double R = p.rate();
    IterDEState out = s;
    out.t = s.t + 1;

    // LDPC half: one peeling round. Erasure flow follows the edge recursion;
    // the codeword (node) rate carries the extra check of the node's own edge.
    double base = one_minus_pow(s.edge_rate, p.dc - 1);
    double edge_peeled = s.q_product * p.eps0 * std::pow(base, p.dv - 1);
    out.eps_prime = s.q_product * p.eps0 * std::pow(base, p.dv);
    if (out.eps_prime <= 0.0 || s.eps <= 0.0) {
        out.eps_prime = std::max(out.eps_prime, 0.0);
        out.eps = 0.0;
        out.d = 0.0;
        out.q = 1.0;
        out.terminated = true;
        return out;
    }
    out.d = out.eps_prime / s.eps;
    if (out.d >= 1.0 - 1e-12) {
        out.d = 1.0;
        out.eps = out.eps_prime;
        out.terminated = true;  // peeling makes no progress; neither will NR again
        return out;
    }
    out.d_product = s.d_product * out.d;

    // NR half: lucky-segment erasure-count distribution
    const int l = p.l, lt = p.l_theta;
    out.f.assign(l + 1, 0.0);
    if (s.t == 0) {
        // first pass: counts are binomial at the post-LDPC rate
        double r = out.eps_prime;
        for (int i = 0; i <= lt; ++i) out.f[0] += binom.mass(l, i, r);
        for (int k = lt + 1; k <= l; ++k) out.f[k] = binom.mass(l, k, r);
    } else {
        // later passes: erasures of an uncorrected segment thin by d
        out.f[0] = s.f[0];
        for (int i = lt + 1; i <= l; ++i) {
            double fi = s.f[i];
            if (fi == 0.0) continue;
            for (int j = 0; j <= lt; ++j) out.f[0] += fi * binom.mass(i, j, out.d);
            for (int k = lt + 1; k <= i; ++k) out.f[k] += fi * binom.mass(i, k, out.d);
        }
    }
    double lucky_tail = 0.0;
    for (int k = lt + 1; k <= l; ++k) lucky_tail += double(k) / double(l) * out.f[k];
    out.eps = ((1.0 - R) + R * (1.0 - p.p)) * p.eps0 * out.d_product + R * p.p * lucky_tail;
    out.q = out.eps / out.eps_prime;
    if (out.q > 1.0) out.q = 1.0;
    out.q_product = s.q_product * out.q;
    out.edge_rate = out.q * edge_peeled;
    if (out.eps <= 0.0) {
        out.eps = 0.0;
        out.terminated = true;
    }
    return out;
}

IterDERun iter_de_run(const IterDEParams& p, double tol, int t_max) {
    if (tol <= 0.0) throw std::invalid_argument("iter-de: tol must be positive");
    IterDERun run;
    BinomialTable binom(p.l);
    IterDEState s = iter_de_init(p);
    run.trajectory.push_back(s);
    for (int t = 0; t < t_max; ++t) {
        IterDEState nxt = iter_de_step(s, p, binom);
        run.trajectory.push_back(nxt);
        if (nxt.eps < tol) {
            run.success = true;
            return run;
        }
        if (nxt.terminated) return run;
        s = std::move(nxt);
    }
    return run;
}

bool classic_de_run(double eps, int dv, int dc, double tol, int t_max) {
    double x = eps;
    for (int t = 0; t < t_max; ++t) {
        double xn = eps * std::pow(one_minus_pow(x, dc - 1), dv - 1);
        if (xn < tol) return true;
        if (std::abs(xn - x) < 1e-15 * std::max(x, 1e-300)) return false;
        x = xn;
    }
    return false;
}

ThresholdResult erasure_threshold(const std::function<bool(double)>& runner, double lo, double hi,
                                  double tol) {
    if (tol <= 0.0) throw std::invalid_argument("threshold: tol must be positive");
    if (!(lo < hi)) throw std::invalid_argument("threshold: need lo < hi");
    ThresholdResult res;
    if (!runner(lo)) throw std::invalid_argument("threshold: runner fails at lo");
    if (runner(hi)) throw std::invalid_argument("threshold: runner succeeds at hi");
    res.evaluations = 2;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        ++res.evaluations;
        if (runner(mid))
            lo = mid;
        else
            hi = mid;
    }
    res.bracket_lo = lo;
    res.bracket_hi = hi;
    res.eps_star = 0.5 * (lo + hi);
    return res;
}

double binary_entropy(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double noise_entropy(double eps, double delta, double rho) {
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("noise_entropy: delta outside [0,1]");
    if (rho < 0.0 || rho > 1.0 - delta + 1e-15)
        throw std::invalid_argument("noise_entropy: rho outside [0, 1-delta]");
    double h = (delta >= 1.0) ? 0.0 : binary_entropy(rho / (1.0 - delta));
    return eps * (delta + (1.0 - delta) * h);
}

double noise_reduction(double eps, double e_nr) {
    if (eps <= 0.0) throw std::invalid_argument("noise_reduction: eps must be positive");
    return (eps - e_nr) / eps;
}

}  // namespace nrlab
