#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sqperm/errors.hpp"

namespace sqperm {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest admissible characteristic; keeps p^2 - 1 inside 64 bits.
inline constexpr u64 kMaxPrime = (u64{1} << 31) - 1;

u64 mul_mod(u64 a, u64 b, u64 m);
u64 pow_mod(u64 base, u64 exp, u64 m);
/// Canonical representative of a in [0, m).
u64 reduce(i64 a, u64 m);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 n);

enum class Validate { yes, no };

/// Legendre symbol (a/p) by Euler's criterion. With Validate::yes an even
/// or composite p throws InvalidArgument.
int legendre(i64 a, u64 p, Validate validate = Validate::yes);

struct Factorization {
  std::vector<std::pair<u64, unsigned>> factors;  // strictly increasing primes

  u64 value() const;
};

/// Trial division. n >= 2.
Factorization factorize(u64 n);

/// a + b*sqrt(Delta) with both coefficients in [0, p).
struct Fp2 {
  u64 a = 0;
  u64 b = 0;

  friend bool operator==(const Fp2&, const Fp2&) = default;
  friend auto operator<=>(const Fp2&, const Fp2&) = default;
};

std::string to_string(const Fp2& x);

/// The field F_{p^2} = Z[sqrt(Delta)]/(p) for an odd prime p and a
/// non-residue Delta = 3 (mod 4). Immutable once built.
class FieldCtx {
 public:
  FieldCtx(u64 p, i64 delta);

  u64 p() const { return p_; }
  i64 delta() const { return delta_; }
  u64 delta_mod_p() const { return delta_mod_p_; }
  u64 n() const { return (p_ - 1) / 2; }
  u64 m() const { return (p_ * p_ - 1) / 2; }
  u64 q() const { return p_ * p_ - 1; }
  /// Distinct primes dividing p^2 - 1.
  const std::vector<u64>& order_primes() const { return order_primes_; }

  Fp2 zero() const { return {}; }
  Fp2 one() const { return {1, 0}; }
  Fp2 minus_one() const { return {p_ - 1, 0}; }
  Fp2 sqrt_delta() const { return {0, 1}; }
  Fp2 from_int(i64 v) const { return {reduce(v, p_), 0}; }
  /// Builds an element from arbitrary coefficients, reducing them mod p.
  Fp2 make(i64 a, i64 b) const { return {reduce(a, p_), reduce(b, p_)}; }

  Fp2 add(Fp2 x, Fp2 y) const;
  Fp2 sub(Fp2 x, Fp2 y) const;
  Fp2 neg(Fp2 x) const;
  Fp2 mul(Fp2 x, Fp2 y) const;
  Fp2 pow(Fp2 x, u64 e) const;
  /// Throws DivisionByZero on x = 0.
  Fp2 inv(Fp2 x) const;
  Fp2 div(Fp2 x, Fp2 y) const { return mul(x, inv(y)); }

  Fp2 conj(Fp2 x) const { return {x.a, x.b == 0 ? 0 : p_ - x.b}; }
  /// a^2 - Delta b^2, an element of F_p.
  u64 norm(Fp2 x) const;
  /// x^p. Computed as the conjugate; tests check it against pow(x, p).
  Fp2 frobenius(Fp2 x) const { return conj(x); }

  bool is_canonical(Fp2 x) const { return x.a < p_ && x.b < p_; }
  /// Multiplicative order exactly p^2 - 1.
  bool is_generator(Fp2 g) const;

 private:
  u64 p_;
  i64 delta_;
  u64 delta_mod_p_;
  std::vector<u64> order_primes_;
};

/// First admissible Delta in the scan -1, 3, -5, 7, -9, 11, ...
i64 find_delta(u64 p);
/// The first `count` admissible Delta values in scan order.
std::vector<i64> find_deltas(u64 p, std::size_t count);

/// First generator of F_{p^2}^x scanning b = 1, 2, ... (outer) and a = 0, 1, ... (inner).
Fp2 find_generator(const FieldCtx& ctx);
std::vector<Fp2> find_generators(const FieldCtx& ctx, std::size_t count);

}  // namespace sqperm
