#include "sqperm/field.hpp"

#include <algorithm>
#include <array>

namespace sqperm {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 reduce(i64 a, u64 m) {
  if (a >= 0) return static_cast<u64>(a) % m;
  // -(a + 1) avoids overflow at INT64_MIN.
  u64 r = static_cast<u64>(-(a + 1)) % m;
  return m - 1 - r;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 b : kBases) {
    if (n % b == 0) return n == b;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 b : kBases) {
    u64 x = pow_mod(b, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int legendre(i64 a, u64 p, Validate validate) {
  if (validate == Validate::yes && (p % 2 == 0 || !is_prime(p))) {
    throw InvalidArgument("legendre: modulus " + std::to_string(p) + " is not an odd prime");
  }
  const u64 r = reduce(a, p);
  if (r == 0) return 0;
  return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

u64 Factorization::value() const {
  u64 v = 1;
  for (auto [prime, exp] : factors) {
    for (unsigned i = 0; i < exp; ++i) v *= prime;
  }
  return v;
}

Factorization factorize(u64 n) {
  if (n < 2) throw InvalidArgument("factorize: n must be >= 2");
  Factorization f;
  auto strip = [&](u64 d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e != 0) f.factors.emplace_back(d, e);
  };
  strip(2);
  for (u64 d = 3; d <= n / d; d += 2) strip(d);
  if (n > 1) f.factors.emplace_back(n, 1);
  return f;
}

std::string to_string(const Fp2& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")";
}

FieldCtx::FieldCtx(u64 p, i64 delta) : p_(p), delta_(delta) {
  if (p < 3 || p % 2 == 0 || p > kMaxPrime || !is_prime(p)) {
    throw InvalidArgument("field: p = " + std::to_string(p) + " is not an odd prime <= 2^31-1");
  }
  if (((delta % 4) + 4) % 4 != 3) {
    throw InvalidArgument("field: Delta = " + std::to_string(delta) + " is not 3 mod 4");
  }
  if (legendre(delta, p, Validate::no) != -1) {
    throw InvalidArgument("field: Delta = " + std::to_string(delta) +
                          " is not a quadratic non-residue mod " + std::to_string(p));
  }
  delta_mod_p_ = reduce(delta, p);
  if (q() % 8 != 0) throw ContractViolation("field: 8 does not divide p^2 - 1");

  // p^2 - 1 = (p - 1)(p + 1); both halves stay below 2^32.
  for (u64 part : {p - 1, p + 1}) {
    for (auto [prime, exp] : factorize(part).factors) order_primes_.push_back(prime);
  }
  std::sort(order_primes_.begin(), order_primes_.end());
  order_primes_.erase(std::unique(order_primes_.begin(), order_primes_.end()),
                      order_primes_.end());
}

Fp2 FieldCtx::add(Fp2 x, Fp2 y) const {
  u64 a = x.a + y.a;
  u64 b = x.b + y.b;
  return {a >= p_ ? a - p_ : a, b >= p_ ? b - p_ : b};
}

Fp2 FieldCtx::sub(Fp2 x, Fp2 y) const {
  return {x.a >= y.a ? x.a - y.a : x.a + p_ - y.a, x.b >= y.b ? x.b - y.b : x.b + p_ - y.b};
}

Fp2 FieldCtx::neg(Fp2 x) const {
  return {x.a == 0 ? 0 : p_ - x.a, x.b == 0 ? 0 : p_ - x.b};
}

Fp2 FieldCtx::mul(Fp2 x, Fp2 y) const {
  // Each product is < 2^62, so the sums below fit in 64 bits.
  const u64 db = x.b * delta_mod_p_ % p_;
  return {(x.a * y.a + db * y.b) % p_, (x.a * y.b + x.b * y.a) % p_};
}

Fp2 FieldCtx::pow(Fp2 x, u64 e) const {
  Fp2 result = one();
  while (e != 0) {
    if (e & 1) result = mul(result, x);
    x = mul(x, x);
    e >>= 1;
  }
  return result;
}

u64 FieldCtx::norm(Fp2 x) const {
  const u64 a2 = x.a * x.a % p_;
  const u64 db2 = x.b * x.b % p_ * delta_mod_p_ % p_;
  return a2 >= db2 ? a2 - db2 : a2 + p_ - db2;
}

Fp2 FieldCtx::inv(Fp2 x) const {
  if (x == zero()) throw DivisionByZero("field: inverse of zero");
  const u64 n_inv = pow_mod(norm(x), p_ - 2, p_);
  const Fp2 c = conj(x);
  return {c.a * n_inv % p_, c.b * n_inv % p_};
}

bool FieldCtx::is_generator(Fp2 g) const {
  if (!is_canonical(g) || g == zero()) return false;
  if (pow(g, q()) != one()) return false;
  for (u64 ell : order_primes_) {
    if (pow(g, q() / ell) == one()) return false;
  }
  return true;
}

namespace {

// Delta candidates = 3 (mod 4) ordered by |Delta|: -1, 3, -5, 7, ...
i64 delta_candidate(u64 index) {
  const i64 magnitude = static_cast<i64>(2 * index + 1);
  return index % 2 == 0 ? -magnitude : magnitude;
}

}  // namespace

std::vector<i64> find_deltas(u64 p, std::size_t count) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument("find_delta: " + std::to_string(p) + " is not an odd prime");
  }
  std::vector<i64> out;
  for (u64 i = 0; out.size() < count; ++i) {
    const i64 d = delta_candidate(i);
    if (legendre(d, p, Validate::no) == -1) out.push_back(d);
  }
  return out;
}

i64 find_delta(u64 p) { return find_deltas(p, 1).front(); }

std::vector<Fp2> find_generators(const FieldCtx& ctx, std::size_t count) {
  std::vector<Fp2> out;
  for (u64 b = 1; b < ctx.p() && out.size() < count; ++b) {
    for (u64 a = 0; a < ctx.p() && out.size() < count; ++a) {
      if (ctx.is_generator({a, b})) out.push_back({a, b});
    }
  }
  return out;
}

Fp2 find_generator(const FieldCtx& ctx) {
  auto gens = find_generators(ctx, 1);
  if (gens.empty()) throw ContractViolation("find_generator: no generator found");
  return gens.front();
}

}  // namespace sqperm
