// Generalized divisor functions d_k(n), the Dirichlet polynomial
// A(t) = sum_{n <= xi} d_k(n) n^{-1/2 - it}, and the Euler-product constant
// C'_k = 1/(2 Gamma(k^2+1)) prod_p (1 - 1/p)^{k^2} sum_m (Gamma(k+m)/(Gamma(k) m!))^2 p^{-m}.
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "hardyz/moment_estimate.hpp"
#include "hardyz/types.hpp"

namespace hardyz {

struct DivisorTable {
    int k = 1;
    std::uint64_t limit = 0;
    // values[n] = d_k(n) for 1 <= n <= limit; values[0] is unused and 0.
    std::vector<std::uint64_t> values;

    std::uint64_t operator[](std::uint64_t n) const { return values.at(n); }
};

// Exact d_k(n) for n <= limit by k-1 Dirichlet convolutions with the all-ones function.
// Requires 1 <= k <= 6 and 1 <= limit <= 1e7.
DivisorTable divisor_table(int k, std::uint64_t limit);

// sum_{delta | n} d_{k-1}(delta) log(n / delta); table_km1 must carry k-1.
double tilde_divisor(int k, std::uint64_t n, const DivisorTable& table_km1);

// sum_{n <= xi} d_k(n)^2 / n.
double divisor_square_sum(const DivisorTable& table, double xi);
double divisor_square_sum(int k, double xi);

// Precomputed coefficients d_k(n) n^{-1/2} and frequencies log n.
class DirichletPolynomial {
public:
    DirichletPolynomial(const DivisorTable& table, double xi);

    Complex operator()(double t) const;
    double abs_squared(double t) const { return std::norm((*this)(t)); }

    int k() const noexcept { return k_; }
    double xi() const noexcept { return xi_; }
    std::size_t length() const noexcept { return coeff_.size(); }

private:
    int k_;
    double xi_;
    std::vector<double> coeff_;
    std::vector<double> log_n_;
};

Complex dirichlet_poly(double t, int k, double xi, const DivisorTable& table);

struct MeanSquareResult {
    MomentEstimate integral;
    double diagonal = 0.0;     // H * sum_{n<=xi} d_k(n)^2 / n
    double deviation = 0.0;    // |integral - diagonal|
    // deviation / (xi (log xi)^{k^2}); reported, expected small.
    double constant = 0.0;
};

// Quadrature of |A(t)|^2 over the window. Requires xi <= width / 10.
MeanSquareResult mean_square_A(const Window& window, int k, double xi, const DivisorTable& table,
                               double rel_tol = 1e-9, unsigned threads = 1);

struct EulerProductResult {
    int k = 1;
    std::uint64_t prime_limit = 0;
    double value = 0.0;
    // Estimated size of the omitted primes' contribution to value.
    double truncation_estimate = 0.0;
};

// Requires 1 <= k <= 5 and 2 <= prime_limit <= 1e7.
EulerProductResult ramachandra_constant(int k, std::uint64_t prime_limit);

// Local Euler factor (1 - 1/p)^{k^2} sum_m binom(k+m-1, m)^2 p^{-m}.
double ramachandra_local_factor(int k, double p);

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// Binary cache: 8-byte magic, k and limit as u64 little endian, then
// values[1..limit] as u64 little endian.
void save_divisor_table(const DivisorTable& table, const std::filesystem::path& path);
DivisorTable load_divisor_table(const std::filesystem::path& path);
std::filesystem::path divisor_cache_path(const std::filesystem::path& dir, int k, std::uint64_t limit);
// Loads from dir when a matching file exists, otherwise builds and stores it.
DivisorTable cached_divisor_table(int k, std::uint64_t limit, const std::optional<std::filesystem::path>& dir);

}  // namespace hardyz
