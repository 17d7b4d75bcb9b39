#include "sqperm/invariants.hpp"

#include <array>
#include <numeric>
#include <set>

#include "sqperm/perm.hpp"

namespace sqperm {

namespace {

LemmaReport make_report(LemmaId id, u64 p, std::optional<i64> delta, LemmaValue lhs, LemmaValue rhs,
                        std::string note = {}) {
  LemmaReport r;
  r.id = id;
  r.p = p;
  r.delta = delta;
  r.pass = lhs == rhs;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.note = std::move(note);
  return r;
}

void require_odd_prime(u64 p, const char* who) {
  if (p < 3 || p % 2 == 0 || !is_prime(p)) {
    throw InvalidArgument(std::string(who) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

i64 minus_one_pow(u64 e) { return e % 2 == 0 ? 1 : -1; }

// a_k = k + sqrt(Delta) for k = 0..p-1.
std::vector<Fp2> a_sequence(const FieldCtx& ctx) {
  std::vector<Fp2> a;
  a.reserve(ctx.p());
  for (u64 k = 0; k < ctx.p(); ++k) a.push_back({k, 1});
  return a;
}

constexpr std::array<std::pair<LemmaId, std::string_view>, 12> kLemmaNames = {{
    {LemmaId::A, "A"},
    {LemmaId::B, "B"},
    {LemmaId::C, "C"},
    {LemmaId::D, "D"},
    {LemmaId::cyclotomic, "cyclotomic"},
    {LemmaId::count_A, "count_A"},
    {LemmaId::count_B, "count_B"},
    {LemmaId::legendre_prod, "legendre_prod"},
    {LemmaId::eqH, "eqH"},
    {LemmaId::double_legendre, "double_legendre"},
    {LemmaId::sun_tau, "sun_tau"},
    {LemmaId::zolotarev, "zolotarev"},
}};

}  // namespace

std::string to_string(Formula f) { return f == Formula::stated ? "stated" : "corrected"; }

std::optional<Formula> formula_from_string(std::string_view s) {
  if (s == "stated") return Formula::stated;
  if (s == "corrected") return Formula::corrected;
  return std::nullopt;
}

std::string to_string(LemmaId id) {
  for (auto [k, name] : kLemmaNames) {
    if (k == id) return std::string(name);
  }
  return "unknown";
}

std::optional<LemmaId> lemma_from_string(std::string_view s) {
  for (auto [k, name] : kLemmaNames) {
    if (name == s) return k;
  }
  return std::nullopt;
}

const std::vector<LemmaId>& field_lemmas() {
  static const std::vector<LemmaId> ids = {
      LemmaId::A,       LemmaId::B,       LemmaId::C,
      LemmaId::D,       LemmaId::cyclotomic, LemmaId::count_A,
      LemmaId::count_B, LemmaId::legendre_prod, LemmaId::eqH,
      LemmaId::double_legendre,
  };
  return ids;
}

std::string to_string(const LemmaValue& v) {
  if (const auto* i = std::get_if<i64>(&v)) return std::to_string(*i);
  return to_string(std::get<Fp2>(v));
}

// ---------------------------------------------------------------------------
// Class numbers

std::vector<ReducedForm> reduced_forms(u64 p) {
  require_odd_prime(p, "reduced_forms");
  if (p % 4 != 3) throw InvalidArgument("reduced_forms: p must be 3 mod 4");
  const i64 disc = static_cast<i64>(p);
  std::vector<ReducedForm> forms;
  for (i64 a = 1; 3 * a * a <= disc; ++a) {
    for (i64 b = -a; b <= a; ++b) {
      if ((b & 1) == 0) continue;  // b = p (mod 2)
      const i64 num = b * b + disc;
      if (num % (4 * a) != 0) continue;
      const i64 c = num / (4 * a);
      if (c < a) continue;
      if ((b < 0) && (-b == a || a == c)) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      forms.push_back({a, b, c});
    }
  }
  return forms;
}

ClassNumberResult class_number(u64 p) {
  require_odd_prime(p, "class_number");
  if (p % 4 != 3 || p <= 3) throw InvalidArgument("class_number: need p = 3 (mod 4) and p > 3");
  const u64 n = (p - 1) / 2;
  i64 non_residues = 0;
  for (u64 w = 1; w <= n; ++w) {
    if (legendre(static_cast<i64>(w), p, Validate::no) == -1) ++non_residues;
  }
  const i64 num = static_cast<i64>(n) - 2 * non_residues;
  const i64 den = 2 - legendre(2, p, Validate::no);
  if (num % den != 0) {
    throw ContractViolation("class_number: " + std::to_string(num) + " is not divisible by " +
                            std::to_string(den) + " at p = " + std::to_string(p));
  }
  ClassNumberResult r;
  r.p = p;
  r.h_formula = num / den;
  r.h_forms = static_cast<i64>(reduced_forms(p).size());
  return r;
}

i64 class_number_checked(u64 p) {
  const auto r = class_number(p);
  if (!r.agree()) {
    throw ContractViolation("class_number: methods disagree at p = " + std::to_string(p) + " (" +
                            std::to_string(r.h_formula) + " vs " + std::to_string(r.h_forms) + ")");
  }
  return r.h_forms;
}

// ---------------------------------------------------------------------------
// Product identities over F_{p^2}

LemmaReport lemma_A(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  Fp2 prod = ctx.one();
  for (const Fp2& a : a_sequence(ctx)) prod = ctx.mul(prod, a);
  const Fp2 lhs = ctx.pow(prod, (p - 1) * (p - 3) / 4);
  const Fp2 rhs = p % 4 == 1 ? ctx.pow(ctx.inv(ctx.from_int(ctx.delta())), (p - 1) / 4)
                             : ctx.from_int(minus_one_pow((p - 3) / 4));
  return make_report(LemmaId::A, p, ctx.delta(), lhs, rhs);
}

LemmaReport lemma_B(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  Fp2 prod = ctx.one();
  for (const Fp2& a : a_sequence(ctx)) prod = ctx.mul(prod, ctx.sub(ctx.one(), ctx.pow(a, p - 1)));
  return make_report(LemmaId::B, p, ctx.delta(), ctx.pow(prod, ctx.n()), ctx.one());
}

LemmaReport lemma_C(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  Fp2 den = ctx.one();
  for (u64 t = 1; t < p; ++t) {
    for (u64 s = 1; s < t; ++s) den = ctx.mul(den, ctx.mul({t, 1}, {s, 1}));
  }
  const Fp2 lhs = ctx.pow(ctx.inv(den), ctx.n());
  return make_report(LemmaId::C, p, ctx.delta(), lhs, ctx.from_int(legendre(-2, p, Validate::no)));
}

LemmaReport lemma_D(const FieldCtx& ctx, Formula formula) {
  const u64 p = ctx.p();
  std::vector<Fp2> powers;
  powers.reserve(p);
  for (const Fp2& a : a_sequence(ctx)) powers.push_back(ctx.pow(a, p - 1));
  Fp2 prod = ctx.one();
  for (u64 t = 0; t < p; ++t) {
    for (u64 s = 0; s < t; ++s) prod = ctx.mul(prod, ctx.sub(powers[t], powers[s]));
  }
  const Fp2 lhs = ctx.pow(prod, ctx.n());

  const Fp2 inv_root = ctx.inv(ctx.sqrt_delta());
  std::string note;
  Fp2 rhs;
  if (p == 3) {
    rhs = ctx.neg(inv_root);
  } else if (p % 4 == 1) {
    rhs = ctx.pow(inv_root, (p - 1) * (p - 1) / 4);
  } else {
    const i64 h = class_number_checked(p);
    note = "h=" + std::to_string(h);
    const i64 sign = minus_one_pow(static_cast<u64>(h + 1) / 2) * legendre(2, p, Validate::no);
    rhs = ctx.mul(ctx.pow(inv_root, (p - 1) * (p - 1) / 4), ctx.from_int(sign));
  }
  if (formula == Formula::corrected) {
    rhs = ctx.mul(rhs, ctx.from_int(legendre(-2, p, Validate::no)));
  }
  return make_report(LemmaId::D, p, ctx.delta(), lhs, rhs, std::move(note));
}

LemmaReport lemma_cyclotomic(const FieldCtx& ctx, Fp2 g, u64 max_p) {
  const u64 p = ctx.p();
  if (p > max_p) {
    throw SizeCapExceeded("lemma_cyclotomic: p = " + std::to_string(p) + " exceeds cap " +
                          std::to_string(max_p));
  }
  if (!ctx.is_generator(g)) throw NotAGenerator("lemma_cyclotomic: " + to_string(g) + " is not a generator");
  const u64 m = ctx.m();
  const u64 q = ctx.q();

  std::vector<Fp2> even_powers;  // g^{2i}, i = 1..m
  even_powers.reserve(m);
  const Fp2 g2 = ctx.mul(g, g);
  Fp2 x = g2;
  for (u64 i = 0; i < m; ++i) {
    even_powers.push_back(x);
    x = ctx.mul(x, g2);
  }
  Fp2 f = ctx.one();
  for (u64 t = 0; t < m; ++t) {
    for (u64 s = 0; s < t; ++s) f = ctx.mul(f, ctx.sub(even_powers[t], even_powers[s]));
  }

  const i64 sign = minus_one_pow((p * p + 7) / 8);
  const u64 scalar = pow_mod(m % p, q / 4, p);
  const Fp2 t_val = ctx.mul(ctx.from_int(sign), ctx.mul({scalar, 0}, ctx.pow(g, q / 4)));
  return make_report(LemmaId::cyclotomic, p, ctx.delta(), f, t_val, "g=" + to_string(g));
}

namespace {

std::vector<u64> half_squares(u64 p) {
  std::vector<u64> sq;
  for (u64 x = 1; x <= (p - 1) / 2; ++x) sq.push_back(x * x % p);
  return sq;
}

}  // namespace

LemmaReport count_identity_A(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  const auto sq = half_squares(p);
  std::set<std::pair<u64, u64>> pairs;
  for (u64 x2 : sq) {
    for (u64 y2 : sq) {
      if ((x2 + y2) % p == ctx.delta_mod_p()) pairs.emplace(x2, y2);
    }
  }
  const i64 expected = static_cast<i64>(p % 4 == 1 ? (p - 1) / 4 : (p + 1) / 4);
  return make_report(LemmaId::count_A, p, ctx.delta(), static_cast<i64>(pairs.size()), expected);
}

LemmaReport count_identity_B(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  const u64 d = ctx.delta_mod_p();
  const auto sq = half_squares(p);
  std::set<std::pair<u64, u64>> pairs;
  for (u64 x2 : sq) {
    for (u64 y2 : sq) {
      if ((x2 + d * y2) % p == d) pairs.emplace(x2, y2);
    }
  }
  const i64 expected = static_cast<i64>(p % 4 == 1 ? (p - 1) / 4 : (p - 3) / 4);
  return make_report(LemmaId::count_B, p, ctx.delta(), static_cast<i64>(pairs.size()), expected);
}

LemmaReport legendre_product(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  const u64 n = ctx.n();
  i64 prod = 1;
  for (u64 t = 1; t <= n; ++t) {
    for (u64 s = 1; s < t; ++s) {
      const i64 dt = ctx.delta() - static_cast<i64>(t * t);
      const i64 ds = ctx.delta() - static_cast<i64>(s * s);
      prod *= legendre(dt, p, Validate::no) * legendre(ds, p, Validate::no);
    }
  }
  const i64 expected = p % 4 == 1 ? minus_one_pow((p - 1) / 4) : 1;
  return make_report(LemmaId::legendre_prod, p, ctx.delta(), prod, expected);
}

// ---------------------------------------------------------------------------
// Identities over F_p

LemmaReport eq_H_check(u64 p) {
  require_odd_prime(p, "eq_H_check");
  const u64 n = (p - 1) / 2;
  u64 prod = 1;
  for (u64 t = 1; t <= n; ++t) {
    for (u64 s = 1; s < t; ++s) {
      const u64 diff = (t * t - s * s) % p;
      prod = prod * (diff * diff % p) % p;
    }
  }
  return make_report(LemmaId::eqH, p, std::nullopt, static_cast<i64>(prod),
                     static_cast<i64>(reduce(minus_one_pow((p + 1) / 2), p)));
}

LemmaReport double_legendre_sum(u64 p) {
  require_odd_prime(p, "double_legendre_sum");
  const u64 n = (p - 1) / 2;
  i64 prod = 1;
  for (u64 s = 1; s <= n; ++s) {
    for (u64 t = 1; t <= n; ++t) prod *= legendre(static_cast<i64>(t + s), p, Validate::no);
  }
  std::string note;
  i64 expected;
  if (p == 3) {
    expected = -1;
  } else if (p % 4 == 1) {
    expected = minus_one_pow((p - 1) / 4);
  } else {
    const i64 h = class_number_checked(p);
    note = "h=" + std::to_string(h);
    expected = minus_one_pow(static_cast<u64>(h + 1) / 2) * legendre(2, p, Validate::no);
  }
  return make_report(LemmaId::double_legendre, p, std::nullopt, prod, expected, std::move(note));
}

LemmaReport sun_tau_check(u64 p) {
  require_odd_prime(p, "sun_tau_check");
  if (p % 4 != 3) throw InvalidArgument("sun_tau_check: need p = 3 (mod 4)");
  auto [domain, range] = build_tau_sequences(p);
  const int sign = sign_by_cycles(permutation_from(std::move(range), std::move(domain)));
  std::string note;
  i64 expected = 1;
  if (p % 8 == 7) {
    const i64 h = class_number_checked(p);
    note = "h=" + std::to_string(h);
    expected = minus_one_pow(static_cast<u64>(h + 1) / 2);
  }
  return make_report(LemmaId::sun_tau, p, std::nullopt, i64{sign}, expected, std::move(note));
}

LemmaReport zolotarev_check(u64 p, i64 a) {
  require_odd_prime(p, "zolotarev_check");
  const u64 ar = reduce(a, p);
  if (ar == 0) throw InvalidArgument("zolotarev_check: p divides a");
  SquareSequence source{SequenceKind::custom, p, {}};
  SquareSequence target{SequenceKind::custom, p, {}};
  for (u64 x = 0; x < p; ++x) {
    source.elems.push_back({x, 0});
    target.elems.push_back({mul_mod(ar, x, p), 0});
  }
  const int sign = sign_by_cycles(permutation_from(std::move(source), std::move(target)));
  return make_report(LemmaId::zolotarev, p, std::nullopt, i64{sign},
                     i64{legendre(a, p, Validate::no)}, "a=" + std::to_string(a));
}

std::vector<LemmaReport> run_field_lemmas(const FieldCtx& ctx, const std::vector<LemmaId>& ids,
                                          std::optional<Fp2> generator, Formula formula,
                                          u64 cyclotomic_cap) {
  const u64 p = ctx.p();
  std::vector<LemmaReport> out;
  auto skipped = [&](LemmaId id, std::string note) {
    LemmaReport r;
    r.id = id;
    r.p = p;
    r.delta = ctx.delta();
    r.skipped = true;
    r.note = std::move(note);
    out.push_back(std::move(r));
  };
  for (LemmaId id : ids) {
    switch (id) {
      case LemmaId::A: out.push_back(lemma_A(ctx)); break;
      case LemmaId::B: out.push_back(lemma_B(ctx)); break;
      case LemmaId::C: out.push_back(lemma_C(ctx)); break;
      case LemmaId::D: out.push_back(lemma_D(ctx, formula)); break;
      case LemmaId::cyclotomic: {
        if (p > cyclotomic_cap) {
          skipped(id, "size cap: p > " + std::to_string(cyclotomic_cap));
        } else {
          out.push_back(lemma_cyclotomic(ctx, generator ? *generator : find_generator(ctx), cyclotomic_cap));
        }
        break;
      }
      case LemmaId::count_A: out.push_back(count_identity_A(ctx)); break;
      case LemmaId::count_B: out.push_back(count_identity_B(ctx)); break;
      case LemmaId::legendre_prod: out.push_back(legendre_product(ctx)); break;
      case LemmaId::eqH: out.push_back(eq_H_check(p)); break;
      case LemmaId::double_legendre: out.push_back(double_legendre_sum(p)); break;
      case LemmaId::sun_tau:
        if (p % 4 == 3) {
          out.push_back(sun_tau_check(p));
        } else {
          skipped(id, "not applicable: p = 1 mod 4");
        }
        break;
      case LemmaId::zolotarev:
        for (u64 a = 1; a < p; ++a) out.push_back(zolotarev_check(p, static_cast<i64>(a)));
        break;
    }
  }
  return out;
}

}  // namespace sqperm
