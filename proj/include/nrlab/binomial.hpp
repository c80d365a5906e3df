#pragma once

#include <cmath>
#include <vector>

namespace nrlab {

// Binomial coefficients in double precision via the multiplicative recurrence.
// C(120,60) ~ 9.5e34 sits comfortably inside double range.
class BinomialTable {
public:
    explicit BinomialTable(int nmax) : nmax_(nmax), c_((nmax + 1) * (nmax + 2) / 2, 0.0) {
        for (int n = 0; n <= nmax; ++n) {
            at(n, 0) = 1.0;
            for (int k = 1; k <= n; ++k)
                at(n, k) = at(n, k - 1) * double(n - k + 1) / double(k);
        }
    }

    double operator()(int n, int k) const {
        if (k < 0 || k > n) return 0.0;
        return c_[size_t(n) * (n + 1) / 2 + k];
    }

    // C(n,k) p^k (1-p)^(n-k), computed directly
    double mass(int n, int k, double p) const {
        if (k < 0 || k > n) return 0.0;
        return (*this)(n, k) * std::pow(p, k) * std::pow(1.0 - p, n - k);
    }

    int nmax() const { return nmax_; }

private:
    double& at(int n, int k) { return c_[size_t(n) * (n + 1) / 2 + k]; }
    int nmax_;
    std::vector<double> c_;
};

// Log-space companion of BinomialTable::mass, kept as an independent route
// for cross-checking the direct computation.
double binomial_mass_log(int n, int k, double p);

// 1-(1-x)^e without cancellation for tiny x
inline double one_minus_pow(double x, int e) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return -std::expm1(double(e) * std::log1p(-x));
}

}  // namespace nrlab
