#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergolab/report.hpp"
#include "ergolab/types.hpp"

namespace ergolab {

enum class SequenceKind {
  mobius,
  liouville,
  custom_multiplicative,
  custom_completely_multiplicative,
  automatic,
  polynomial_phase,
  raw,
};

std::string to_string(SequenceKind kind);

/// A finite 1-bounded complex sequence indexed by consecutive integers.
///
/// Arithmetic weights are indexed from 1 (matching sums over 1 <= n <= N);
/// automatic sequences start at 0. Values are immutable after construction.
class WeightSequence {
 public:
  WeightSequence() = default;
  /// Throws BoundViolation if any |value| exceeds 1 (with 1e-12 slack).
  WeightSequence(SequenceKind kind, std::int64_t first_index, std::vector<Complex> values);

  /// Unchecked-kind wrapper around arbitrary 1-bounded data.
  static WeightSequence raw(std::vector<Complex> values, std::int64_t first_index = 1);

  SequenceKind kind() const { return kind_; }
  std::int64_t first_index() const { return first_; }
  std::int64_t last_index() const { return first_ + static_cast<std::int64_t>(values_.size()) - 1; }
  std::size_t size() const { return values_.size(); }
  bool contains(std::int64_t n) const { return n >= first_ && n <= last_index(); }

  /// Value at index n; RangeError outside the stored range.
  Complex at(std::int64_t n) const;
  Complex operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - first_)]; }

  std::span<const Complex> values() const { return values_; }

 private:
  SequenceKind kind_ = SequenceKind::raw;
  std::int64_t first_ = 1;
  std::vector<Complex> values_;
};

/// Exact rational p/q with q > 0.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

/// mu(1..N) by a linear sieve.
WeightSequence mobius_sieve(std::int64_t n);

/// lambda(n) = (-1)^Omega(n) for n = 1..N.
WeightSequence liouville_sieve(std::int64_t n);

/// Smallest prime factor table spf[0..N] (spf[0] = spf[1] = 0).
std::vector<std::int32_t> smallest_prime_factors(std::int64_t n);

/// Extends prime values to 1..N by multiplicativity.
///
/// Every prime p <= N needs an entry in `prime_values`. When `completely` is
/// false, every prime power p^k <= N with k >= 2 also needs an entry in
/// `prime_power_values`; nothing is filled in silently. Throws
/// BoundViolation for a supplied modulus above 1 and PreconditionError for
/// a missing prime or prime power.
WeightSequence multiplicative_from_primes(const std::map<std::int64_t, Complex>& prime_values,
                                          std::int64_t n, bool completely,
                                          const std::map<std::int64_t, Complex>& prime_power_values = {});

/// Seeded random multiplicative function with unimodular values at primes
/// (and at prime powers when `completely` is false). No aperiodicity is
/// assumed; measure it with aperiodicity_profile.
WeightSequence random_multiplicative(std::int64_t n, std::uint64_t seed, bool completely);

enum class AutomaticKind { thue_morse, rudin_shapiro };

/// +-1 automatic sequence on indices 0..N (inclusive).
WeightSequence automatic_sequence(AutomaticKind kind, std::int64_t n);

/// e^{2 pi i P(n)} for n = 1..N, with P(n) = sum_k coeffs[k] n^k reduced
/// modulo 1 in exact integer arithmetic before exponentiation.
WeightSequence polynomial_phase(std::span<const Rational> coeffs, std::int64_t n);

/// Exact P(n) mod 1 as a residue r / modulus, r in [0, modulus).
std::pair<std::int64_t, std::int64_t> polynomial_phase_residue(std::span<const Rational> coeffs,
                                                               std::int64_t n);

/// Rows (a, b, N, value) with value = (1/N)|sum_{n=1}^N w(an+b)|, sorted by (a, b, N).
ExperimentReport aperiodicity_profile(const WeightSequence& w,
                                      std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                                      std::span<const std::int64_t> n_list);

}  // namespace ergolab
