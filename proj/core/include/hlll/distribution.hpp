#ifndef HLLL_DISTRIBUTION_HPP
#define HLLL_DISTRIBUTION_HPP

#include <array>
#include <cstdint>
#include <utility>

namespace hlll {

// Exact distribution of a single register after n distinct updates over m
// registers, used as a numerical oracle in tests. The mass of all ranks
// >= 63 is lumped at 63, mirroring the clamp applied before storage.

// Pr[M[j] = k] for integer k in [0, 63].
double pr_register_eq(std::uint64_t m, std::uint64_t n, unsigned k);

// Pr[M[j] <= k]. Accepts real-valued k in [0, 63]: the defining map
// k -> (1 - 1/(m 2^k))^n is monotone in the exponent, and the tail bounds
// below are stated against real thresholds.
double pr_register_leq(std::uint64_t m, std::uint64_t n, double k);

// Concentration bounds around B = log2(n/m) for delta in (0, B):
// returns (bound on Pr[M[j] < B - delta], bound on Pr[M[j] > B + delta])
//       = (exp(-2^delta), 2^-delta).
std::pair<double, double> register_tail_bounds(std::uint64_t m, std::uint64_t n,
                                               double delta);

// Expected number of sparsely stored registers for a dense window
// [base, base + 2^kappa), under the per-register marginal. Registers are
// negatively dependent, so this is an independence approximation.
double expected_sparse_count(std::uint64_t m, std::uint64_t n, unsigned base,
                             unsigned kappa);

// Shannon entropy of the single-register distribution, in bits.
double register_entropy(std::uint64_t m, std::uint64_t n);

class RegisterDistribution {
public:
    RegisterDistribution(std::uint64_t m, std::uint64_t n);

    std::uint64_t m() const { return m_; }
    std::uint64_t n() const { return n_; }
    double pmf(unsigned k) const;
    double cdf(double k) const { return pr_register_leq(m_, n_, k); }
    const std::array<double, 64>& masses() const { return pmf_; }
    double entropy_bits() const;

private:
    std::uint64_t m_;
    std::uint64_t n_;
    std::array<double, 64> pmf_;
};

}  // namespace hlll

#endif
