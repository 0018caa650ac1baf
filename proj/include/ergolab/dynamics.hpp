#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergolab/types.hpp"

namespace ergolab {

/// Golden-ratio rotation number (sqrt 5 - 1)/2.
inline constexpr double kGoldenAlpha = 0.6180339887498948482;

enum class SystemKind { rotation, doubling, skew_product, cyclic };

std::string to_string(SystemKind kind);
SystemKind system_kind_from_string(const std::string& name);

/// Torus coordinates are 64-bit fixed point (x / 2^64), so rotations and
/// skew steps are exact and invertible. Doubling orbits are windows of a
/// seeded bit stream; cyclic points live in `index`.
struct Point {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  std::int64_t index = 0;

  bool operator==(const Point&) const = default;
};

double to_unit(std::uint64_t fixed);
std::uint64_t from_unit(double t);

class DynSystem {
 public:
  static DynSystem rotation(double alpha = kGoldenAlpha);
  static DynSystem skew_product(double alpha = kGoldenAlpha);
  static DynSystem doubling(std::uint64_t bit_seed);
  static DynSystem cyclic(std::int64_t j);

  SystemKind kind() const { return kind_; }
  std::uint64_t alpha_fixed() const { return alpha_; }
  double alpha() const { return to_unit(alpha_); }
  std::int64_t cycle_length() const { return j_; }
  std::uint64_t bit_seed() const { return seed_; }
  bool invertible() const { return kind_ != SystemKind::doubling; }
  std::string description() const;

  /// T^m p in closed form. InvertibilityError for m < 0 on doubling,
  /// DomainError for a point outside the space.
  Point iterate(const Point& p, std::int64_t m) const;
  Point step(const Point& p) const { return iterate(p, 1); }

  /// Validates p; DomainError if it is not a point of this system.
  void check_point(const Point& p) const;

  /// Starting point drawn from `seed`: uniform torus point(s), uniform
  /// residue, or bit-stream offset 0 for doubling.
  Point seeded_point(std::uint64_t seed) const;

  /// i-th bit (0 = most significant) of the doubling stream.
  int stream_bit(std::int64_t i) const;

 private:
  SystemKind kind_ = SystemKind::rotation;
  std::uint64_t alpha_ = 0;
  std::int64_t j_ = 0;
  std::uint64_t seed_ = 0;
};

enum class ObservableKind { constant, trig, indicator, table };

/// Bounded observable evaluated on x (rotation, doubling), on y (skew
/// product) or on the residue (cyclic).
struct Observable {
  ObservableKind kind = ObservableKind::constant;
  Complex value = 1.0;                 // constant value or trig amplitude
  std::int64_t frequency = 1;          // trig: e(k t)
  double lo = 0.0, hi = 1.0;           // indicator of [lo, hi)
  std::vector<Complex> table;          // value at floor(size * t) or residue mod size

  static Observable constant(Complex c = 1.0);
  static Observable trig(std::int64_t k, Complex amplitude = 1.0);
  static Observable indicator(double lo, double hi);
  static Observable from_table(std::vector<Complex> values);

  bool mean_zero() const;
  /// Space average under the invariant measure.
  Complex mean(const DynSystem& system) const;
  Complex operator()(const DynSystem& system, const Point& p) const;
};

/// x0, T x0, ..., T^{L-1} x0.
std::vector<Point> orbit(const DynSystem& system, const Point& x0, std::int64_t len);

/// f(T^{a n} x0) for n = 0..L-1.
std::vector<Complex> sample_observable(const DynSystem& system, const Observable& f, const Point& x0,
                                       std::int64_t a, std::int64_t len);

struct CalderonTransfer {
  std::vector<Complex> phi;  // phi(j) = f(T^{j - anchor} x0), j in [0, J]
  std::vector<Complex> psi;
  std::int64_t anchor = 0;
  std::int64_t window = 0;  // J
};

/// Shift model on [0, J] with J = max((max(|a|,|b|)+1) N, (max(a,b,0) - min(a,b,0)) N)
/// and anchor j0 = max(0, -min(a,b,0)) N, so that j0 + a n and j0 + b n stay in
/// the window for 0 <= n <= N.
CalderonTransfer calderon_transfer(const DynSystem& system, const Point& x0, const Observable& f,
                                   const Observable& g, std::int64_t a, std::int64_t b, std::int64_t n);

/// F(n) = phi(j + a n) for n = 0..N, reading 0 outside [0, phi.size()).
std::vector<Complex> shift_samples(const std::vector<Complex>& phi, std::int64_t j, std::int64_t a, std::int64_t n);

}  // namespace ergolab
