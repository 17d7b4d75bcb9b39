#include "sqperm/cyclotomic.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace sqperm {

namespace {

using boost::multiprecision::cpp_int;
using Poly = std::vector<cpp_int>;  // constant term first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly sub(Poly f, const Poly& g) {
  if (f.size() < g.size()) f.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f[i] -= g[i];
  trim(f);
  return f;
}

// Returns the remainder; `quotient` receives f div g. g must be monic.
Poly divmod_monic(Poly f, const Poly& g, Poly* quotient) {
  const std::size_t dg = g.size() - 1;
  if (quotient) quotient->clear();
  trim(f);
  if (f.size() <= dg) return f;
  Poly q(f.size() - dg);
  for (std::size_t i = f.size(); i-- > dg;) {
    const cpp_int c = f[i];
    if (c == 0) continue;
    const std::size_t shift = i - dg;
    q[shift] = c;
    for (std::size_t j = 0; j <= dg; ++j) f[shift + j] -= c * g[j];
  }
  trim(f);
  trim(q);
  if (quotient) *quotient = std::move(q);
  return f;
}

const Poly& cyclotomic_big(u64 n, std::map<u64, Poly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  Poly f(n + 1);
  f[0] = -1;
  f[n] = 1;
  for (u64 d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    Poly q;
    const Poly r = divmod_monic(f, cyclotomic_big(d, memo), &q);
    if (!r.empty()) throw ContractViolation("cyclotomic: inexact division");
    f = std::move(q);
  }
  return memo.emplace(n, std::move(f)).first->second;
}

}  // namespace

std::vector<i64> cyclotomic_polynomial(u64 n) {
  if (n == 0) throw InvalidArgument("cyclotomic_polynomial: n must be positive");
  std::map<u64, Poly> memo;
  const Poly& big = cyclotomic_big(n, memo);
  std::vector<i64> out;
  out.reserve(big.size());
  for (const auto& c : big) {
    if (c > std::numeric_limits<i64>::max() || c < std::numeric_limits<i64>::min()) {
      throw ContractViolation("cyclotomic_polynomial: coefficient overflow");
    }
    out.push_back(static_cast<i64>(c));
  }
  return out;
}

Fp2 evaluate(const FieldCtx& ctx, std::span<const i64> coeffs, Fp2 x) {
  Fp2 acc = ctx.zero();
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = ctx.add(ctx.mul(acc, x), ctx.from_int(*it));
  }
  return acc;
}

CyclotomicDivisibility check_cyclotomic_divisibility(u64 p, u64 max_p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("cyclotomic divisibility: p must be an odd prime");
  if (p > max_p) {
    throw SizeCapExceeded("cyclotomic divisibility: p = " + std::to_string(p) + " exceeds cap " +
                          std::to_string(max_p));
  }
  const u64 q = p * p - 1;
  const u64 m = q / 2;

  // Each factor x^{2t} - x^{2s} is a binomial, so multiply in place.
  Poly f{1};
  for (u64 t = 1; t <= m; ++t) {
    for (u64 s = 1; s < t; ++s) {
      Poly next(f.size() + 2 * t);
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (f[i] == 0) continue;
        next[i + 2 * t] += f[i];
        next[i + 2 * s] -= f[i];
      }
      f = std::move(next);
    }
  }
  trim(f);

  Poly t_poly(q / 4 + 1);
  cpp_int scalar = boost::multiprecision::pow(cpp_int(m), static_cast<unsigned>(q / 4));
  if (((p * p + 7) / 8) % 2 == 1) scalar = -scalar;
  t_poly[q / 4] = scalar;

  std::map<u64, Poly> memo;
  const Poly& phi = cyclotomic_big(q, memo);
  const Poly r = divmod_monic(sub(f, t_poly), phi, nullptr);

  CyclotomicDivisibility out;
  out.p = p;
  out.f_degree = f.size() - 1;
  out.phi_degree = phi.size() - 1;
  out.divides = r.empty();
  out.remainder_terms = static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](const cpp_int& c) { return c != 0; }));
  return out;
}

}  // namespace sqperm
