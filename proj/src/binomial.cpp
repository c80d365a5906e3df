#include "nrlab/binomial.hpp"

namespace nrlab {

double binomial_mass_log(int n, int k, double p) {
    if (k < 0 || k > n) return 0.0;
    if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (p >= 1.0) return k == n ? 1.0 : 0.0;
    double lg = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    lg += k * std::log(p) + (n - k) * std::log1p(-p);
    return std::exp(lg);
}

}  // namespace nrlab
