#include "ergolab/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/error.hpp"
#include "ergolab/random.hpp"

namespace ergolab {

std::string to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::rotation: return "rotation";
    case SystemKind::doubling: return "doubling";
    case SystemKind::skew_product: return "skew_product";
    case SystemKind::cyclic: return "cyclic";
  }
  return "unknown";
}

SystemKind system_kind_from_string(const std::string& name) {
  if (name == "rotation") return SystemKind::rotation;
  if (name == "doubling") return SystemKind::doubling;
  if (name == "skew_product" || name == "skew") return SystemKind::skew_product;
  if (name == "cyclic") return SystemKind::cyclic;
  throw UsageError("unknown system '" + name + "' (expected rotation, doubling, skew_product or cyclic)");
}

double to_unit(std::uint64_t fixed) { return static_cast<double>(fixed >> 11) * 0x1.0p-53; }

std::uint64_t from_unit(double t) {
  const double r = frac(t);
  const double scaled = std::ldexp(r, 64);
  if (scaled >= 0x1.0p64) return 0;
  return static_cast<std::uint64_t>(scaled);
}

DynSystem DynSystem::rotation(double alpha) {
  if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 1.0) throw DomainError("rotation: alpha must lie in [0, 1)");
  DynSystem s;
  s.kind_ = SystemKind::rotation;
  s.alpha_ = from_unit(alpha);
  return s;
}

DynSystem DynSystem::skew_product(double alpha) {
  DynSystem s = rotation(alpha);
  s.kind_ = SystemKind::skew_product;
  return s;
}

DynSystem DynSystem::doubling(std::uint64_t bit_seed) {
  DynSystem s;
  s.kind_ = SystemKind::doubling;
  s.seed_ = bit_seed;
  return s;
}

DynSystem DynSystem::cyclic(std::int64_t j) {
  if (j < 1) throw DomainError("cyclic: J must be >= 1");
  DynSystem s;
  s.kind_ = SystemKind::cyclic;
  s.j_ = j;
  return s;
}

std::string DynSystem::description() const {
  switch (kind_) {
    case SystemKind::rotation: return "x -> x + alpha mod 1";
    case SystemKind::skew_product: return "(x, y) -> (x + alpha, y + x) mod 1";
    case SystemKind::doubling: return "x -> 2x mod 1 on a seeded binary expansion";
    case SystemKind::cyclic: return "j -> j + 1 mod " + std::to_string(j_);
  }
  return "";
}

namespace {

std::uint64_t stream_word(std::uint64_t seed, std::uint64_t k) { return splitmix64(seed ^ splitmix64(k)); }

std::uint64_t stream_window(std::uint64_t seed, std::int64_t offset) {
  const auto m = static_cast<std::uint64_t>(offset);
  const std::uint64_t hi = stream_word(seed, m >> 6);
  const unsigned s = static_cast<unsigned>(m & 63u);
  if (s == 0) return hi;
  const std::uint64_t lo = stream_word(seed, (m >> 6) + 1);
  return (hi << s) | (lo >> (64 - s));
}

}  // namespace

int DynSystem::stream_bit(std::int64_t i) const {
  if (i < 0) throw DomainError("stream_bit: negative position");
  const auto m = static_cast<std::uint64_t>(i);
  return static_cast<int>((stream_word(seed_, m >> 6) >> (63 - (m & 63u))) & 1u);
}

void DynSystem::check_point(const Point& p) const {
  switch (kind_) {
    case SystemKind::cyclic:
      if (p.index < 0 || p.index >= j_) {
        throw DomainError("point index " + std::to_string(p.index) + " outside Z/" + std::to_string(j_));
      }
      break;
    case SystemKind::doubling:
      if (p.index < 0 || p.x != stream_window(seed_, p.index)) {
        throw DomainError("doubling point is not a window of the seeded bit stream");
      }
      break;
    default:
      break;
  }
}

Point DynSystem::iterate(const Point& p, std::int64_t m) const {
  Point q = p;
  switch (kind_) {
    case SystemKind::rotation:
      q.x = p.x + static_cast<std::uint64_t>(m) * alpha_;
      break;
    case SystemKind::skew_product: {
      const auto mu = static_cast<std::uint64_t>(m);
      const __int128 tri = static_cast<__int128>(m) * (static_cast<__int128>(m) - 1) / 2;
      q.x = p.x + mu * alpha_;
      q.y = p.y + mu * p.x + static_cast<std::uint64_t>(tri) * alpha_;
      break;
    }
    case SystemKind::cyclic: {
      __int128 r = (static_cast<__int128>(p.index) + m) % j_;
      if (r < 0) r += j_;
      q.index = static_cast<std::int64_t>(r);
      break;
    }
    case SystemKind::doubling:
      if (m < 0) throw InvertibilityError("doubling map is not invertible: negative iterate requested");
      if (p.index > std::numeric_limits<std::int64_t>::max() - m) {
        throw CapacityError("doubling: bit-stream offset overflows");
      }
      q.index = p.index + m;
      q.x = stream_window(seed_, q.index);
      break;
  }
  return q;
}

Point DynSystem::seeded_point(std::uint64_t seed) const {
  Rng rng(seed);
  Point p;
  switch (kind_) {
    case SystemKind::rotation:
      p.x = rng.next_u64();
      break;
    case SystemKind::skew_product:
      p.x = rng.next_u64();
      p.y = rng.next_u64();
      break;
    case SystemKind::cyclic:
      p.index = rng.integer(0, j_ - 1);
      break;
    case SystemKind::doubling:
      p.index = rng.integer(0, std::int64_t{1} << 40);
      p.x = stream_window(seed_, p.index);
      break;
  }
  return p;
}

Observable Observable::constant(Complex c) {
  if (std::abs(c) > 1.0 + 1e-12) throw BoundViolation("observable constant exceeds modulus 1");
  Observable f;
  f.kind = ObservableKind::constant;
  f.value = c;
  return f;
}

Observable Observable::trig(std::int64_t k, Complex amplitude) {
  if (std::abs(amplitude) > 1.0 + 1e-12) throw BoundViolation("trig observable amplitude exceeds 1");
  Observable f;
  f.kind = ObservableKind::trig;
  f.frequency = k;
  f.value = amplitude;
  return f;
}

Observable Observable::indicator(double lo, double hi) {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) throw DomainError("indicator: need 0 <= lo <= hi <= 1");
  Observable f;
  f.kind = ObservableKind::indicator;
  f.lo = lo;
  f.hi = hi;
  return f;
}

Observable Observable::from_table(std::vector<Complex> values) {
  if (values.empty()) throw DegenerateError("table observable needs at least one value");
  for (const auto& v : values) {
    if (std::abs(v) > 1.0 + 1e-12) throw BoundViolation("table observable value exceeds modulus 1");
  }
  Observable f;
  f.kind = ObservableKind::table;
  f.table = std::move(values);
  return f;
}

bool Observable::mean_zero() const {
  switch (kind) {
    case ObservableKind::constant: return value == Complex{};
    case ObservableKind::trig: return frequency != 0 || value == Complex{};
    case ObservableKind::indicator: return hi == lo;
    case ObservableKind::table: {
      Complex s = 0.0;
      for (const auto& v : table) s += v;
      return s == Complex{};
    }
  }
  return false;
}

Complex Observable::mean(const DynSystem& system) const {
  switch (kind) {
    case ObservableKind::constant: return value;
    case ObservableKind::trig: {
      if (system.kind() == SystemKind::cyclic) {
        return frequency % system.cycle_length() == 0 ? value : Complex{};
      }
      return frequency == 0 ? value : Complex{};
    }
    case ObservableKind::indicator: {
      if (system.kind() == SystemKind::cyclic) {
        const auto j = system.cycle_length();
        std::int64_t count = 0;
        for (std::int64_t i = 0; i < j; ++i) {
          const double t = static_cast<double>(i) / static_cast<double>(j);
          count += (t >= lo && t < hi) ? 1 : 0;
        }
        return static_cast<double>(count) / static_cast<double>(j);
      }
      return hi - lo;
    }
    case ObservableKind::table: {
      if (system.kind() == SystemKind::cyclic) {
        const auto j = system.cycle_length();
        Complex s = 0.0;
        for (std::int64_t i = 0; i < j; ++i) s += table[static_cast<std::size_t>(i) % table.size()];
        return s / static_cast<double>(j);
      }
      Complex s = 0.0;
      for (const auto& v : table) s += v;
      return s / static_cast<double>(table.size());
    }
  }
  return 0.0;
}

Complex Observable::operator()(const DynSystem& system, const Point& p) const {
  if (kind == ObservableKind::constant) return value;
  if (system.kind() == SystemKind::cyclic) {
    const std::int64_t j = system.cycle_length();
    switch (kind) {
      case ObservableKind::trig: {
        __int128 r = static_cast<__int128>(frequency % j) * p.index % j;
        if (r < 0) r += j;
        return value * cis_turns(static_cast<double>(static_cast<std::int64_t>(r)) / static_cast<double>(j));
      }
      case ObservableKind::indicator: {
        const double t = static_cast<double>(p.index) / static_cast<double>(j);
        return (t >= lo && t < hi) ? 1.0 : 0.0;
      }
      case ObservableKind::table: return table[static_cast<std::size_t>(p.index) % table.size()];
      default: break;
    }
  }
  const std::uint64_t coord = system.kind() == SystemKind::skew_product ? p.y : p.x;
  switch (kind) {
    case ObservableKind::trig:
      return value * cis_turns(to_unit(static_cast<std::uint64_t>(frequency) * coord));
    case ObservableKind::indicator: {
      const double t = to_unit(coord);
      return (t >= lo && t < hi) ? 1.0 : 0.0;
    }
    case ObservableKind::table: {
      const auto k = static_cast<std::size_t>(
          (static_cast<unsigned __int128>(coord) * table.size()) >> 64);
      return table[k];
    }
    default: break;
  }
  return 0.0;
}

std::vector<Point> orbit(const DynSystem& system, const Point& x0, std::int64_t len) {
  if (len < 0) throw PreconditionError("orbit: length must be >= 0");
  system.check_point(x0);
  std::vector<Point> out(static_cast<std::size_t>(len));
  for (std::int64_t m = 0; m < len; ++m) out[m] = system.iterate(x0, m);
  return out;
}

std::vector<Complex> sample_observable(const DynSystem& system, const Observable& f, const Point& x0,
                                       std::int64_t a, std::int64_t len) {
  if (len < 0) throw PreconditionError("sample_observable: length must be >= 0");
  system.check_point(x0);
  if (a < 0 && !system.invertible()) {
    throw InvertibilityError("sample_observable: negative a on the non-invertible doubling map");
  }
  std::vector<Complex> out(static_cast<std::size_t>(len));
  for (std::int64_t n = 0; n < len; ++n) out[n] = f(system, system.iterate(x0, a * n));
  return out;
}

CalderonTransfer calderon_transfer(const DynSystem& system, const Point& x0, const Observable& f,
                                   const Observable& g, std::int64_t a, std::int64_t b, std::int64_t n) {
  if (n < 1) throw PreconditionError("calderon_transfer: N must be >= 1");
  system.check_point(x0);
  const std::int64_t lo = std::min({a, b, std::int64_t{0}});
  const std::int64_t hi = std::max({a, b, std::int64_t{0}});
  const __int128 span_a = (static_cast<__int128>(std::max(std::abs(a), std::abs(b))) + 1) * n;
  const __int128 span_b = static_cast<__int128>(hi - lo) * n;
  const __int128 window = std::max(span_a, span_b);
  if (window > (std::int64_t{1} << 28)) throw CapacityError("calderon_transfer: window exceeds 2^28 points");
  CalderonTransfer t;
  t.window = static_cast<std::int64_t>(window);
  t.anchor = -lo * n;
  if (t.anchor > 0 && !system.invertible()) {
    throw InvertibilityError("calderon_transfer: negative a or b on the non-invertible doubling map");
  }
  t.phi.resize(static_cast<std::size_t>(t.window + 1));
  t.psi.resize(static_cast<std::size_t>(t.window + 1));
  for (std::int64_t j = 0; j <= t.window; ++j) {
    const Point p = system.iterate(x0, j - t.anchor);
    t.phi[j] = f(system, p);
    t.psi[j] = g(system, p);
  }
  return t;
}

std::vector<Complex> shift_samples(const std::vector<Complex>& phi, std::int64_t j, std::int64_t a, std::int64_t n) {
  std::vector<Complex> out(static_cast<std::size_t>(n + 1));
  const auto size = static_cast<std::int64_t>(phi.size());
  for (std::int64_t k = 0; k <= n; ++k) {
    const std::int64_t idx = j + a * k;
    out[k] = (idx >= 0 && idx < size) ? phi[idx] : Complex{};
  }
  return out;
}

}  // namespace ergolab
