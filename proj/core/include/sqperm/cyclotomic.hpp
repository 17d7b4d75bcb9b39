#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sqperm/field.hpp"

namespace sqperm {

/// Coefficients of the n-th cyclotomic polynomial over Z, constant term
/// first. Throws ContractViolation if a coefficient leaves the i64 range.
std::vector<i64> cyclotomic_polynomial(u64 n);

/// Horner evaluation of an integer polynomial (constant term first) at x.
Fp2 evaluate(const FieldCtx& ctx, std::span<const i64> coeffs, Fp2 x);

struct CyclotomicDivisibility {
  u64 p = 0;
  std::size_t f_degree = 0;
  std::size_t phi_degree = 0;
  bool divides = false;
  std::size_t remainder_terms = 0;  // nonzero coefficients left after division
};

inline constexpr u64 kDefaultSymbolicCap = 7;

/// Expands F(x) = prod_{1<=s<t<=m} (x^{2t} - x^{2s}) and
/// T(x) = (-1)^{(p^2+7)/8} m^{(p^2-1)/4} x^{(p^2-1)/4} over Z, m = (p^2-1)/2,
/// and divides F - T by Phi_{p^2-1} exactly. Throws SizeCapExceeded above max_p.
CyclotomicDivisibility check_cyclotomic_divisibility(u64 p, u64 max_p = kDefaultSymbolicCap);

}  // namespace sqperm
