#pragma once

// Slow, independent reference computations used by tests and by `verify`.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ergolab/types.hpp"

namespace ergolab::oracle {

/// Prime factorization by trial division: (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

int mobius(std::int64_t n);
int liouville(std::int64_t n);

/// Sum_{n <= N} mu(n) by trial division.
std::int64_t mertens(std::int64_t n);

int thue_morse(std::int64_t n);
int rudin_shapiro(std::int64_t n);

/// Literal O(M^{d+1} 2^d) Gowers average of a family of length-M tables.
Complex gowers_inner(const std::vector<std::vector<Complex>>& family, int d);

/// |P| maximized over the points k/size, evaluated term by term.
double grid_sup(std::span<const Complex> coeffs, std::int64_t lo, std::int64_t size);

/// max over a 2^log_size grid using a radix-2 transform written out here.
double dense_grid_sup(std::span<const Complex> coeffs, std::int64_t lo, int log_size = 20);

/// Direct sum of c_n e(n theta) with long double phases.
Complex eval_direct(std::span<const Complex> coeffs, std::int64_t lo, double theta);

/// |sum_{n<L} e(n alpha)| / L in closed form.
double geometric_mean_modulus(double alpha, std::int64_t len);

/// Doubling orbit point from bits b_m, ..., b_{m+63} of a stream.
std::uint64_t bit_window(const std::vector<int>& bits, std::size_t m);

/// Variation norm by enumerating all increasing index subsets (length <= 20).
double variation_exhaustive(std::span<const Complex> a, double s);

/// max over N in `times` of |(1/N) sum_{n<=N} nu(n) phi(j+an) psi(j+bn)|, zero outside the window.
std::vector<double> maximal_brute(std::span<const Complex> nu_from_1, std::span<const Complex> phi,
                                  std::span<const Complex> psi, std::span<const std::int64_t> times, std::int64_t a,
                                  std::int64_t b);

}  // namespace ergolab::oracle
