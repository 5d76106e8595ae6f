#include "hardyz/arith.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <fstream>
#include <numbers>
#include <sstream>

#include "hardyz/quadrature.hpp"
#include "hardyz/summation.hpp"

namespace hardyz {

namespace {

constexpr std::uint64_t kMaxTableLimit = 10'000'000;
constexpr std::uint64_t kMaxPrimeLimit = 10'000'000;
constexpr std::array<char, 8> kCacheMagic = {'H', 'Z', 'D', 'K', 'T', 'A', 'B', '1'};

std::uint64_t limit_for(double xi) {
    if (!(xi >= 1.0)) return 0;
    return static_cast<std::uint64_t>(std::floor(xi));
}

void put_u64(std::ostream& os, std::uint64_t v) {
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    os.write(bytes.data(), bytes.size());
}

std::uint64_t get_u64(std::istream& is) {
    std::array<unsigned char, 8> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[i];
    return v;
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

// log of (local factor) for the Euler product, accurate when the factor is near 1.
double log_local_factor(int k, double p) {
    const double x = 1.0 / p;
    CompensatedSum tail;  // sum_{m >= 1} binom(k+m-1, m)^2 x^m
    double term = 1.0;
    for (int m = 0;; ++m) {
        const double ratio = static_cast<double>(k + m) / static_cast<double>(m + 1);
        term *= ratio * ratio * x;
        tail += term;
        if (term < 1e-18 * (1.0 + tail.value())) break;
    }
    return static_cast<double>(k * k) * std::log1p(-x) + std::log1p(tail.value());
}

}  // namespace

DivisorTable divisor_table(int k, std::uint64_t limit) {
    if (k < 1 || k > 6) throw Error(ErrorCode::InvalidArgument, "divisor_table: k must lie in 1..6");
    if (limit < 1 || limit > kMaxTableLimit) {
        throw Error(ErrorCode::InvalidArgument, "divisor_table: limit must lie in 1..1e7");
    }
    DivisorTable table;
    table.k = k;
    table.limit = limit;
    table.values.assign(limit + 1, 1);
    table.values[0] = 0;
    std::vector<std::uint64_t> next(limit + 1);
    for (int pass = 2; pass <= k; ++pass) {
        std::fill(next.begin(), next.end(), 0);
        for (std::uint64_t d = 1; d <= limit; ++d) {
            const std::uint64_t v = table.values[d];
            for (std::uint64_t m = d; m <= limit; m += d) {
                if (__builtin_add_overflow(next[m], v, &next[m])) {
                    throw Error(ErrorCode::Overflow, "divisor_table: d_k(n) exceeds 64 bits");
                }
            }
        }
        table.values.swap(next);
    }
    return table;
}

double tilde_divisor(int k, std::uint64_t n, const DivisorTable& table_km1) {
    if (k < 2) throw Error(ErrorCode::InvalidArgument, "tilde_divisor: k must be at least 2");
    if (table_km1.k != k - 1 || table_km1.limit < n) {
        std::ostringstream os;
        os << "tilde_divisor: need a d_" << k - 1 << " table up to " << n << ", got d_" << table_km1.k
           << " up to " << table_km1.limit;
        throw Error(ErrorCode::TableMismatch, os.str());
    }
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "tilde_divisor: n must be positive");
    const double log_n = std::log(static_cast<double>(n));
    CompensatedSum sum;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        const std::uint64_t e = n / d;
        sum += static_cast<double>(table_km1.values[d]) * (log_n - std::log(static_cast<double>(d)));
        if (e != d) sum += static_cast<double>(table_km1.values[e]) * (log_n - std::log(static_cast<double>(e)));
    }
    return sum.value();
}

double divisor_square_sum(const DivisorTable& table, double xi) {
    const std::uint64_t n_max = limit_for(xi);
    if (n_max > table.limit) throw Error(ErrorCode::TableMismatch, "divisor_square_sum: table too short");
    CompensatedSum sum;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double d = static_cast<double>(table.values[n]);
        sum += d * d / static_cast<double>(n);
    }
    return sum.value();
}

double divisor_square_sum(int k, double xi) {
    const std::uint64_t n_max = limit_for(xi);
    if (n_max == 0) return 0.0;
    return divisor_square_sum(divisor_table(k, n_max), xi);
}

DirichletPolynomial::DirichletPolynomial(const DivisorTable& table, double xi) : k_(table.k), xi_(xi) {
    const std::uint64_t n_max = limit_for(xi);
    if (n_max > table.limit) throw Error(ErrorCode::TableMismatch, "DirichletPolynomial: table too short");
    coeff_.reserve(n_max);
    log_n_.reserve(n_max);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const double dn = static_cast<double>(n);
        coeff_.push_back(static_cast<double>(table.values[n]) / std::sqrt(dn));
        log_n_.push_back(std::log(dn));
    }
}

Complex DirichletPolynomial::operator()(double t) const {
    CompensatedSum re;
    CompensatedSum im;
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
        double s = 0.0;
        double c = 1.0;
        sin_cos(t * log_n_[i], s, c);
        re += coeff_[i] * c;
        im += -coeff_[i] * s;
    }
    return {re.value(), im.value()};
}

Complex dirichlet_poly(double t, int k, double xi, const DivisorTable& table) {
    if (table.k != k) throw Error(ErrorCode::TableMismatch, "dirichlet_poly: table carries a different k");
    return DirichletPolynomial(table, xi)(t);
}

MeanSquareResult mean_square_A(const Window& window, int k, double xi, const DivisorTable& table,
                               double rel_tol, unsigned threads) {
    if (!(window.width > 0.0) || !std::isfinite(window.t_start) || !std::isfinite(window.width)) {
        throw Error(ErrorCode::InvalidArgument, "mean_square_A: window must have positive finite width");
    }
    if (!(xi >= 1.0 && xi <= window.width / 10.0)) {
        throw Error(ErrorCode::InvalidArgument, "mean_square_A: need 1 <= xi <= width / 10");
    }
    if (!(rel_tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "mean_square_A: rel_tol must be positive");
    if (table.k != k) throw Error(ErrorCode::TableMismatch, "mean_square_A: table carries a different k");

    const DirichletPolynomial poly(table, xi);
    MeanSquareResult res;
    res.diagonal = window.width * divisor_square_sum(table, xi);

    // The fastest phase t log(xi) turns by pi over this spacing.
    std::vector<double> cuts;
    if (poly.length() > 1) {
        const double spacing = std::numbers::pi / std::log(std::floor(xi));
        for (double x = window.t_start + spacing; x < window.t_end(); x += spacing) cuts.push_back(x);
    }
    QuadOptions opts;
    opts.abs_tol_per_length = rel_tol * res.diagonal / window.width;
    // Rounding in the phases t log n.
    opts.noise_rel = 8.0 * std::numeric_limits<double>::epsilon() * window.t_end() * std::log(std::max(xi, 2.0));
    opts.threads = threads;
    res.integral = integrate_adaptive([&poly](double t) { return poly.abs_squared(t); }, window.t_start,
                                      window.t_end(), cuts, opts);
    res.deviation = std::fabs(res.integral.value - res.diagonal);
    const double log_xi = std::log(xi);
    const double scale = xi * std::pow(log_xi, k * k);
    res.constant = scale > 0.0 ? res.deviation / scale : 0.0;
    return res;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint32_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    }
    return primes;
}

double ramachandra_local_factor(int k, double p) { return std::exp(log_local_factor(k, p)); }

EulerProductResult ramachandra_constant(int k, std::uint64_t prime_limit) {
    if (k < 1 || k > 5) throw Error(ErrorCode::InvalidArgument, "ramachandra_constant: k must lie in 1..5");
    if (prime_limit < 2 || prime_limit > kMaxPrimeLimit) {
        throw Error(ErrorCode::InvalidArgument, "ramachandra_constant: prime_limit must lie in 2..1e7");
    }
    CompensatedSum log_product;
    for (const std::uint32_t p : primes_up_to(prime_limit)) log_product += log_local_factor(k, p);

    EulerProductResult res;
    res.k = k;
    res.prime_limit = prime_limit;
    const double kk = static_cast<double>(k * k);
    res.value = std::exp(log_product.value() - std::log(2.0) - std::lgamma(kk + 1.0));

    // Local factors deviate from 1 like c/p^2, so the omitted primes
    // contribute about c / (P log P) to the log of the product.
    std::uint64_t next = prime_limit + 1;
    while (!is_prime(next)) ++next;
    const double pn = static_cast<double>(next);
    const double c = std::fabs(std::expm1(log_local_factor(k, pn))) * pn * pn;
    const double big_p = static_cast<double>(prime_limit);
    res.truncation_estimate = res.value * 2.0 * c / (big_p * std::log(big_p));
    return res;
}

void save_divisor_table(const DivisorTable& table, const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorCode::Io, "cannot write " + path.string());
    os.write(kCacheMagic.data(), kCacheMagic.size());
    put_u64(os, static_cast<std::uint64_t>(table.k));
    put_u64(os, table.limit);
    for (std::uint64_t n = 1; n <= table.limit; ++n) put_u64(os, table.values[n]);
    if (!os) throw Error(ErrorCode::Io, "short write to " + path.string());
}

DivisorTable load_divisor_table(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorCode::Io, "cannot read " + path.string());
    std::array<char, 8> magic{};
    is.read(magic.data(), magic.size());
    if (!is || magic != kCacheMagic) throw Error(ErrorCode::Io, path.string() + " is not a divisor table");
    DivisorTable table;
    const std::uint64_t k = get_u64(is);
    table.limit = get_u64(is);
    if (!is || k < 1 || k > 6 || table.limit < 1 || table.limit > kMaxTableLimit) {
        throw Error(ErrorCode::Io, path.string() + " has a corrupt header");
    }
    table.k = static_cast<int>(k);
    table.values.assign(table.limit + 1, 0);
    for (std::uint64_t n = 1; n <= table.limit; ++n) table.values[n] = get_u64(is);
    if (!is) throw Error(ErrorCode::Io, path.string() + " is truncated");
    return table;
}

std::filesystem::path divisor_cache_path(const std::filesystem::path& dir, int k, std::uint64_t limit) {
    return dir / ("dk_k" + std::to_string(k) + "_n" + std::to_string(limit) + ".bin");
}

DivisorTable cached_divisor_table(int k, std::uint64_t limit, const std::optional<std::filesystem::path>& dir) {
    if (!dir) return divisor_table(k, limit);
    const auto path = divisor_cache_path(*dir, k, limit);
    if (std::filesystem::exists(path)) {
        DivisorTable table = load_divisor_table(path);
        if (table.k != k || table.limit != limit) {
            throw Error(ErrorCode::TableMismatch, path.string() + " holds a different table");
        }
        return table;
    }
    DivisorTable table = divisor_table(k, limit);
    std::error_code ec;
    std::filesystem::create_directories(*dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create " + dir->string());
    save_divisor_table(table, path);
    return table;
}

}  // namespace hardyz
