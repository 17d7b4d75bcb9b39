#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqperm/field.hpp"
#include "sqperm/invariants.hpp"

namespace sqperm {

/// (-1)^value = (sqrt Delta)^{(p-1)/2} / g^{(p^2-1)/4} in F_{p^2}.
struct Beta0 {
  int value = 0;
  Fp2 witness;
};

/// Throws NotAGenerator for a bad g and ContractViolation if the witness is not +-1.
Beta0 compute_beta0(const FieldCtx& ctx, Fp2 g);

/// Closed-form sign of the squares permutation. `h` must be present exactly
/// when p = 3 (mod 4) and p > 3; anything else is a ContractViolation.
int predicted_sign(u64 p, int beta0, std::optional<i64> h, Formula formula = Formula::stated);

struct Witness {
  i64 delta = 0;
  Fp2 g;
};

/// Witness j pairs the j-th Delta in scan order with the j-th generator of
/// that field. A Delta override fixes Delta for every witness; a g override
/// yields the single pair (Delta, g) and throws NotAGenerator if g is not one.
std::vector<Witness> select_witnesses(u64 p, std::size_t count, std::optional<i64> delta_override,
                                      std::optional<Fp2> g_override);

struct VerifyOptions {
  std::size_t witnesses = 3;
  std::vector<LemmaId> lemmas;
  bool ratio = false;  // also run sign_by_ratio when p <= ratio_cap
  u64 ratio_cap = 31;
  u64 cyclotomic_cap = kDefaultCyclotomicCap;
  Formula formula = Formula::stated;
  std::optional<i64> delta;
  std::optional<Fp2> g;
  bool timing = false;
};

enum class ReportErrorKind { set_mismatch, contract, other };

std::string to_string(ReportErrorKind k);

struct ReportError {
  ReportErrorKind kind = ReportErrorKind::other;
  std::string message;

  friend bool operator==(const ReportError&, const ReportError&) = default;
};

/// Phase durations in microseconds; zero when timing is disabled.
struct PhaseTiming {
  std::int64_t build_us = 0;
  std::int64_t sign_us = 0;
  std::int64_t lemma_us = 0;

  std::int64_t total_us() const { return build_us + sign_us + lemma_us; }
  friend bool operator==(const PhaseTiming&, const PhaseTiming&) = default;
};

struct SignReport {
  u64 p = 0;
  i64 delta = 0;
  Fp2 g;
  int beta0 = 0;
  Fp2 beta0_witness;
  std::optional<i64> h;
  int predicted = 0;
  int brute = 0;
  std::optional<int> ratio_sign;
  bool match = false;
  std::vector<LemmaReport> lemmas;
  PhaseTiming timing;
  std::optional<ReportError> error;

  /// No structured error, signs agree, no failed lemma.
  bool ok() const;
  friend bool operator==(const SignReport&, const SignReport&) = default;
};

/// Builds S and S*, signs the rearrangement, evaluates the closed form and
/// attaches the requested lemma reports, once per witness. Failures inside
/// a witness are recorded in SignReport::error.
std::vector<SignReport> verify_prime(u64 p, const VerifyOptions& options);

std::vector<u64> primes_in_range(u64 lo, u64 hi);

/// SQPERM_WORKERS if set and positive, else hardware concurrency.
unsigned default_worker_count();

struct Campaign {
  u64 lo = 3;
  u64 hi = 3;
  VerifyOptions options;
  unsigned workers = 1;
};

struct CampaignSummary {
  std::size_t primes = 0;
  std::size_t reports = 0;
  std::size_t matches = 0;
  std::size_t mismatches = 0;
  std::size_t errors = 0;
  std::size_t lemma_failures = 0;
  u64 slowest_prime = 0;
  std::int64_t slowest_us = 0;
};

struct CampaignResult {
  std::vector<SignReport> reports;  // sorted by (p, delta, g)
  CampaignSummary summary;
};

/// Throws InvalidArgument for lo < 3, hi > kMaxPrime, hi < lo or zero witnesses.
CampaignResult run_campaign(const Campaign& campaign);

}  // namespace sqperm
