#include "hlll/distribution.hpp"

#include <cmath>
#include <stdexcept>

namespace hlll {

namespace {

// (1 - 1/(m 2^k))^n evaluated as exp(n log1p(-x)); the direct power
// underflows for large n.
double cdf_real(std::uint64_t m, std::uint64_t n, double k) {
    if (n == 0)
        return 1.0;
    const double x = std::exp2(-k) / static_cast<double>(m);
    return std::exp(static_cast<double>(n) * std::log1p(-x));
}

void check_domain(std::uint64_t m) {
    if (m < 1)
        throw std::invalid_argument("register distribution: m must be >= 1");
}

}  // namespace

double pr_register_eq(std::uint64_t m, std::uint64_t n, unsigned k) {
    check_domain(m);
    if (k > 63)
        throw std::invalid_argument("pr_register_eq: k must be in [0, 63]");
    if (k == 0)
        return cdf_real(m, n, 0.0);
    if (k == 63)
        return 1.0 - cdf_real(m, n, 62.0);
    return cdf_real(m, n, static_cast<double>(k)) -
           cdf_real(m, n, static_cast<double>(k - 1));
}

double pr_register_leq(std::uint64_t m, std::uint64_t n, double k) {
    check_domain(m);
    if (!(k >= 0.0 && k <= 63.0))
        throw std::invalid_argument("pr_register_leq: k must be in [0, 63]");
    if (k >= 63.0)
        return 1.0;
    return cdf_real(m, n, k);
}

std::pair<double, double> register_tail_bounds(std::uint64_t m, std::uint64_t n,
                                               double delta) {
    check_domain(m);
    const double base = std::log2(static_cast<double>(n) / static_cast<double>(m));
    if (!(delta > 0.0 && delta < base))
        throw std::invalid_argument("register_tail_bounds: delta must lie in (0, log2(n/m))");
    return {std::exp(-std::exp2(delta)), std::exp2(-delta)};
}

double expected_sparse_count(std::uint64_t m, std::uint64_t n, unsigned base,
                             unsigned kappa) {
    check_domain(m);
    if (base > 63)
        throw std::invalid_argument("expected_sparse_count: base must be in [0, 63]");
    if (kappa < 1 || kappa > 6)
        throw std::invalid_argument("expected_sparse_count: kappa must be in [1, 6]");
    const unsigned hi = base + (1u << kappa) - 1;  // inclusive window top
    double dense_mass = 0.0;
    for (unsigned k = base; k <= hi && k <= 63; ++k)
        dense_mass += pr_register_eq(m, n, k);
    double sparse = static_cast<double>(m) * (1.0 - dense_mass);
    return sparse > 0.0 ? sparse : 0.0;
}

double register_entropy(std::uint64_t m, std::uint64_t n) {
    return RegisterDistribution(m, n).entropy_bits();
}

RegisterDistribution::RegisterDistribution(std::uint64_t m, std::uint64_t n)
    : m_(m), n_(n) {
    check_domain(m);
    for (unsigned k = 0; k <= 63; ++k)
        pmf_[k] = pr_register_eq(m, n, k);
}

double RegisterDistribution::pmf(unsigned k) const {
    if (k > 63)
        throw std::invalid_argument("RegisterDistribution::pmf: k must be in [0, 63]");
    return pmf_[k];
}

double RegisterDistribution::entropy_bits() const {
    double h = 0.0;
    for (double p : pmf_)
        if (p > 0.0)
            h -= p * std::log2(p);
    return h;
}

}  // namespace hlll
