#include "ergolab/arith_seq.hpp"

#include <algorithm>
#include <bit>
#include <new>
#include <numeric>
#include <tuple>

#include "ergolab/error.hpp"
#include "ergolab/random.hpp"

namespace ergolab {

namespace {

constexpr std::int64_t kMaxLength = (std::int64_t{1} << 31) - 1;
constexpr double kBoundSlack = 1e-12;

void require_length(std::int64_t n, const char* op) {
  if (n < 1) throw PreconditionError(std::string(op) + ": N must be >= 1");
  if (n > kMaxLength) {
    throw CapacityError(std::string(op) + ": N = " + std::to_string(n) +
                        " exceeds the supported length 2^31 - 1");
  }
}

template <class F>
auto with_capacity_check(const char* op, F&& f) {
  try {
    return f();
  } catch (const std::bad_alloc&) {
    throw CapacityError(std::string(op) + ": out of memory");
  }
}

}  // namespace

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::mobius: return "mobius";
    case SequenceKind::liouville: return "liouville";
    case SequenceKind::custom_multiplicative: return "custom_multiplicative";
    case SequenceKind::custom_completely_multiplicative: return "custom_completely_multiplicative";
    case SequenceKind::automatic: return "automatic";
    case SequenceKind::polynomial_phase: return "polynomial_phase";
    case SequenceKind::raw: return "raw";
  }
  return "raw";
}

WeightSequence::WeightSequence(SequenceKind kind, std::int64_t first_index, std::vector<Complex> values)
    : kind_(kind), first_(first_index), values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(std::abs(values_[i]) <= 1.0 + kBoundSlack)) {
      throw BoundViolation("weight sequence value at index " +
                           std::to_string(first_ + static_cast<std::int64_t>(i)) +
                           " has modulus above 1");
    }
  }
}

WeightSequence WeightSequence::raw(std::vector<Complex> values, std::int64_t first_index) {
  return WeightSequence(SequenceKind::raw, first_index, std::move(values));
}

Complex WeightSequence::at(std::int64_t n) const {
  if (!contains(n)) {
    throw RangeError("index " + std::to_string(n) + " outside stored range [" +
                     std::to_string(first_) + ", " + std::to_string(last_index()) + "]");
  }
  return (*this)[n];
}

std::vector<std::int32_t> smallest_prime_factors(std::int64_t n) {
  require_length(n, "smallest_prime_factors");
  return with_capacity_check("smallest_prime_factors", [n] {
    std::vector<std::int32_t> spf(static_cast<std::size_t>(n) + 1, 0);
    std::vector<std::int32_t> primes;
    for (std::int64_t i = 2; i <= n; ++i) {
      if (spf[i] == 0) {
        spf[i] = static_cast<std::int32_t>(i);
        primes.push_back(static_cast<std::int32_t>(i));
      }
      for (const std::int32_t p : primes) {
        const std::int64_t m = i * p;
        if (p > spf[i] || m > n) break;
        spf[m] = p;
      }
    }
    return spf;
  });
}

WeightSequence mobius_sieve(std::int64_t n) {
  require_length(n, "mobius_sieve");
  auto values = with_capacity_check("mobius_sieve", [n] {
    // Linear sieve: mu(i p) = -mu(i) if p does not divide i, else 0.
    std::vector<std::int8_t> mu(static_cast<std::size_t>(n) + 1, 0);
    std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
    std::vector<std::int32_t> primes;
    mu[1] = 1;
    for (std::int64_t i = 2; i <= n; ++i) {
      if (!composite[i]) {
        primes.push_back(static_cast<std::int32_t>(i));
        mu[i] = -1;
      }
      for (const std::int32_t p : primes) {
        const std::int64_t m = i * p;
        if (m > n) break;
        composite[m] = true;
        if (i % p == 0) {
          mu[m] = 0;
          break;
        }
        mu[m] = static_cast<std::int8_t>(-mu[i]);
      }
    }
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) out[i - 1] = mu[i];
    return out;
  });
  return WeightSequence(SequenceKind::mobius, 1, std::move(values));
}

WeightSequence liouville_sieve(std::int64_t n) {
  require_length(n, "liouville_sieve");
  const auto spf = smallest_prime_factors(n);
  auto values = with_capacity_check("liouville_sieve", [&] {
    std::vector<std::int8_t> lambda(static_cast<std::size_t>(n) + 1, 1);
    for (std::int64_t i = 2; i <= n; ++i) lambda[i] = static_cast<std::int8_t>(-lambda[i / spf[i]]);
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) out[i - 1] = lambda[i];
    return out;
  });
  return WeightSequence(SequenceKind::liouville, 1, std::move(values));
}

WeightSequence multiplicative_from_primes(const std::map<std::int64_t, Complex>& prime_values,
                                          std::int64_t n, bool completely,
                                          const std::map<std::int64_t, Complex>& prime_power_values) {
  require_length(n, "multiplicative_from_primes");
  for (const auto& [p, v] : prime_values) {
    if (std::abs(v) > 1.0 + kBoundSlack) {
      throw BoundViolation("value assigned to prime " + std::to_string(p) + " has modulus above 1");
    }
  }
  for (const auto& [q, v] : prime_power_values) {
    if (std::abs(v) > 1.0 + kBoundSlack) {
      throw BoundViolation("value assigned to prime power " + std::to_string(q) +
                           " has modulus above 1");
    }
  }
  const auto spf = smallest_prime_factors(n);
  std::vector<Complex> v(static_cast<std::size_t>(n) + 1);
  v[1] = 1.0;
  for (std::int64_t i = 2; i <= n; ++i) {
    const std::int64_t p = spf[i];
    std::int64_t pk = 1;
    std::int64_t m = i;
    int k = 0;
    while (m % p == 0) {
      m /= p;
      pk *= p;
      ++k;
    }
    Complex local;
    if (m > 1) {
      v[i] = v[m] * v[pk];
      continue;
    }
    if (k == 1) {
      const auto it = prime_values.find(p);
      if (it == prime_values.end()) {
        throw PreconditionError("multiplicative_from_primes: no value for prime " + std::to_string(p));
      }
      local = it->second;
    } else if (completely) {
      local = v[pk / p] * v[p];
    } else {
      const auto it = prime_power_values.find(pk);
      if (it == prime_power_values.end()) {
        throw PreconditionError("multiplicative_from_primes: no value for prime power " +
                                std::to_string(pk));
      }
      local = it->second;
    }
    v[i] = local;
  }
  v.erase(v.begin());
  return WeightSequence(completely ? SequenceKind::custom_completely_multiplicative
                                   : SequenceKind::custom_multiplicative,
                        1, std::move(v));
}

WeightSequence random_multiplicative(std::int64_t n, std::uint64_t seed, bool completely) {
  require_length(n, "random_multiplicative");
  const auto spf = smallest_prime_factors(n);
  Rng rng(seed);
  std::map<std::int64_t, Complex> primes, powers;
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != i) continue;
    primes[i] = rng.unit_complex();
    if (!completely) {
      for (std::int64_t q = i * i; q <= n; q *= i) {
        powers[q] = rng.unit_complex();
        if (q > n / i) break;
      }
    }
  }
  return multiplicative_from_primes(primes, n, completely, powers);
}

WeightSequence automatic_sequence(AutomaticKind kind, std::int64_t n) {
  require_length(n, "automatic_sequence");
  std::vector<Complex> out(static_cast<std::size_t>(n) + 1);
  for (std::int64_t i = 0; i <= n; ++i) {
    const auto u = static_cast<std::uint64_t>(i);
    const int count = kind == AutomaticKind::thue_morse ? std::popcount(u) : std::popcount(u & (u >> 1));
    out[i] = (count & 1) ? -1.0 : 1.0;
  }
  return WeightSequence(SequenceKind::automatic, 0, std::move(out));
}

std::pair<std::int64_t, std::int64_t> polynomial_phase_residue(std::span<const Rational> coeffs,
                                                               std::int64_t n) {
  std::int64_t modulus = 1;
  for (const auto& c : coeffs) {
    if (c.den <= 0) throw PreconditionError("polynomial_phase: denominators must be positive");
    const std::int64_t g = std::gcd(modulus, c.den);
    __int128 l = static_cast<__int128>(modulus / g) * c.den;
    if (l > (__int128{1} << 62)) {
      throw CapacityError("polynomial_phase: common denominator exceeds 2^62");
    }
    modulus = static_cast<std::int64_t>(l);
  }
  const __int128 mod = modulus;
  __int128 x = n % modulus;
  if (x < 0) x += mod;
  __int128 power = 1 % mod;
  __int128 acc = 0;
  for (const auto& c : coeffs) {
    // c = num/den = num * (modulus/den) / modulus
    __int128 scaled = (static_cast<__int128>(c.num % c.den) * (modulus / c.den)) % mod;
    if (scaled < 0) scaled += mod;
    acc = (acc + scaled * power) % mod;
    power = (power * x) % mod;
  }
  return {static_cast<std::int64_t>(acc), modulus};
}

WeightSequence polynomial_phase(std::span<const Rational> coeffs, std::int64_t n) {
  require_length(n, "polynomial_phase");
  std::vector<Complex> out(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    const auto [r, m] = polynomial_phase_residue(coeffs, i);
    out[i - 1] = cis_turns(static_cast<double>(r) / static_cast<double>(m));
  }
  return WeightSequence(SequenceKind::polynomial_phase, 1, std::move(out));
}

ExperimentReport aperiodicity_profile(const WeightSequence& w,
                                      std::span<const std::pair<std::int64_t, std::int64_t>> pairs,
                                      std::span<const std::int64_t> n_list) {
  std::vector<std::pair<std::int64_t, std::int64_t>> sorted_pairs(pairs.begin(), pairs.end());
  std::sort(sorted_pairs.begin(), sorted_pairs.end());
  std::vector<std::int64_t> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ExperimentReport report("aperiodicity_profile", {"a", "b", "N", "value"});
  report.header["kind"] = to_string(w.kind());
  for (const auto& [a, b] : sorted_pairs) {
    if (a < 1 || b < 0) throw PreconditionError("aperiodicity_profile: need a >= 1 and b >= 0");
    if (ns.empty()) continue;
    const std::int64_t top = a * ns.back() + b;
    if (!w.contains(a + b) || !w.contains(top)) {
      throw RangeError("aperiodicity_profile: index a*N+b = " + std::to_string(top) +
                       " outside the stored sequence");
    }
    CompensatedSum sum;
    std::int64_t done = 0;
    for (const std::int64_t n_target : ns) {
      if (n_target < 1) throw PreconditionError("aperiodicity_profile: N must be >= 1");
      for (; done < n_target; ++done) sum.add(w[a * (done + 1) + b]);
      report.add_row({static_cast<double>(a), static_cast<double>(b), static_cast<double>(n_target),
                      std::abs(sum.value()) / static_cast<double>(n_target)});
    }
  }
  return report;
}

}  // namespace ergolab
