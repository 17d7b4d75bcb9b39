#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqperm/field.hpp"

namespace sqperm {

/// Which right-hand side to use for the D-product identity and the sign
/// closed form. `stated` is the three-case formula; `corrected` multiplies
/// by (-2/p) for p > 3 and uses (-1)^beta0 at p = 3, which is what the
/// brute-force computation produces.
enum class Formula { stated, corrected };

std::string to_string(Formula f);
std::optional<Formula> formula_from_string(std::string_view s);

struct ReducedForm {
  i64 a = 0;
  i64 b = 0;
  i64 c = 0;

  friend bool operator==(const ReducedForm&, const ReducedForm&) = default;
};

/// Reduced primitive forms (a, b, c) with b^2 - 4ac = -p,
/// |b| <= a <= c and b >= 0 whenever |b| = a or a = c.
std::vector<ReducedForm> reduced_forms(u64 p);

struct ClassNumberResult {
  u64 p = 0;
  i64 h_formula = 0;  // from the count of non-residues in [1, (p-1)/2]
  i64 h_forms = 0;    // from reduced_forms

  bool agree() const { return h_formula == h_forms; }
};

/// Requires p = 3 (mod 4), p > 3. A non-exact division in the character
/// count is a ContractViolation.
ClassNumberResult class_number(u64 p);

/// h(-p) for p = 3 (mod 4), p > 3; throws ContractViolation if the two
/// methods disagree.
i64 class_number_checked(u64 p);

enum class LemmaId {
  A,
  B,
  C,
  D,
  cyclotomic,
  count_A,
  count_B,
  legendre_prod,
  eqH,
  double_legendre,
  sun_tau,
  zolotarev,
};

std::string to_string(LemmaId id);
std::optional<LemmaId> lemma_from_string(std::string_view s);
/// Every per-(p, Delta) check, i.e. everything except sun_tau and zolotarev.
const std::vector<LemmaId>& field_lemmas();

/// Integers, F_p residues, or F_{p^2} elements depending on the identity.
using LemmaValue = std::variant<i64, Fp2>;

std::string to_string(const LemmaValue& v);

struct LemmaReport {
  LemmaId id = LemmaId::A;
  u64 p = 0;
  std::optional<i64> delta;
  LemmaValue lhs = i64{0};
  LemmaValue rhs = i64{0};
  bool pass = false;
  bool skipped = false;  // size cap hit; lhs/rhs are meaningless
  std::string note;

  friend bool operator==(const LemmaReport&, const LemmaReport&) = default;
};

// Product identities over F_{p^2}, with a_k = k + sqrt(Delta).

/// A_p^{(p-1)(p-3)/4} against Delta^{-(p-1)/4} or (-1)^{(p-3)/4}.
LemmaReport lemma_A(const FieldCtx& ctx);
/// B_p^{(p-1)/2} = 1.
LemmaReport lemma_B(const FieldCtx& ctx);
/// C_p^{(p-1)/2} = (-2/p).
LemmaReport lemma_C(const FieldCtx& ctx);
/// D_p^{(p-1)/2} against the three-case right side.
LemmaReport lemma_D(const FieldCtx& ctx, Formula formula = Formula::stated);

inline constexpr u64 kDefaultCyclotomicCap = 50;

/// F(g) = T(g) in the residue field. O(p^4); throws SizeCapExceeded above max_p.
LemmaReport lemma_cyclotomic(const FieldCtx& ctx, Fp2 g, u64 max_p = kDefaultCyclotomicCap);

/// #{(x^2, y^2) : x^2 + y^2 = Delta}, 1 <= x, y <= (p-1)/2.
LemmaReport count_identity_A(const FieldCtx& ctx);
/// #{(x^2, y^2) : x^2 + Delta y^2 = Delta}, 1 <= x, y <= (p-1)/2.
LemmaReport count_identity_B(const FieldCtx& ctx);
/// prod_{s<t} ((Delta - t^2)/p)((Delta - s^2)/p).
LemmaReport legendre_product(const FieldCtx& ctx);

// Identities over F_p only.

/// prod_{1<=s<t<=n} (t^2 - s^2)^2 mod p against (-1)^{(p+1)/2}.
LemmaReport eq_H_check(u64 p);
/// prod_{s,t=1..n} ((t+s)/p).
LemmaReport double_legendre_sum(u64 p);
/// Sign of 1^2, ..., n^2 as a rearrangement of the ascending residues; p = 3 (mod 4).
LemmaReport sun_tau_check(u64 p);
/// Sign of x -> a x on F_p against (a/p).
LemmaReport zolotarev_check(u64 p, i64 a);

/// Runs the requested per-field identities for one (p, Delta).
/// cyclotomic needs a generator and is skipped (with a note) above the cap.
std::vector<LemmaReport> run_field_lemmas(const FieldCtx& ctx, const std::vector<LemmaId>& ids,
                                          std::optional<Fp2> generator, Formula formula,
                                          u64 cyclotomic_cap = kDefaultCyclotomicCap);

}  // namespace sqperm
