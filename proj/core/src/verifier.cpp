#include "sqperm/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <thread>
#include <tuple>

#include "sqperm/parallel.hpp"
#include "sqperm/perm.hpp"

namespace sqperm {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t micros_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - start).count();
}

int minus_one_pow(u64 e) { return e % 2 == 0 ? 1 : -1; }

}  // namespace

Beta0 compute_beta0(const FieldCtx& ctx, Fp2 g) {
  if (!ctx.is_generator(g)) throw NotAGenerator("beta0: " + to_string(g) + " is not a generator");
  const Fp2 num = ctx.pow(ctx.sqrt_delta(), ctx.n());
  const Fp2 den = ctx.pow(g, ctx.q() / 4);
  const Fp2 witness = ctx.div(num, den);
  if (witness == ctx.one()) return {0, witness};
  if (witness == ctx.minus_one()) return {1, witness};
  throw ContractViolation("beta0: witness " + to_string(witness) + " is not +-1 at p = " +
                          std::to_string(ctx.p()) + ", Delta = " + std::to_string(ctx.delta()) +
                          ", g = " + to_string(g));
}

int predicted_sign(u64 p, int beta0, std::optional<i64> h, Formula formula) {
  if (beta0 != 0 && beta0 != 1) throw InvalidArgument("predicted_sign: beta0 must be 0 or 1");
  const bool needs_h = p % 4 == 3 && p > 3;
  if (needs_h != h.has_value()) {
    throw ContractViolation("predicted_sign: class number must be given exactly when p = 3 (mod 4), p > 3");
  }
  const u64 b = static_cast<u64>(beta0);
  if (p == 3) {
    return formula == Formula::stated ? minus_one_pow(1 + b) : minus_one_pow(b);
  }
  int sign;
  if (p % 4 == 1) {
    sign = minus_one_pow(b + (p + 3) / 4);
  } else {
    if (*h < 1 || *h % 2 == 0) throw InvalidArgument("predicted_sign: h(-p) must be odd and positive");
    sign = minus_one_pow(static_cast<u64>(*h + 1) / 2 + b);
  }
  if (formula == Formula::corrected) sign *= legendre(-2, p, Validate::no);
  return sign;
}

std::vector<Witness> select_witnesses(u64 p, std::size_t count, std::optional<i64> delta_override,
                                      std::optional<Fp2> g_override) {
  if (count == 0) throw InvalidArgument("witnesses: count must be at least 1");
  if (g_override) {
    const i64 delta = delta_override ? *delta_override : find_delta(p);
    const FieldCtx ctx(p, delta);
    if (!ctx.is_generator(*g_override)) {
      throw NotAGenerator("g = " + to_string(*g_override) + " is not a generator of F_" +
                          std::to_string(p) + "^2 with Delta = " + std::to_string(delta));
    }
    return {{delta, *g_override}};
  }
  std::vector<i64> deltas = delta_override ? std::vector<i64>(count, *delta_override) : find_deltas(p, count);
  std::vector<Witness> out;
  out.reserve(count);
  for (std::size_t j = 0; j < count; ++j) {
    const FieldCtx ctx(p, deltas[j]);
    const auto gens = find_generators(ctx, j + 1);
    if (gens.size() <= j) {
      throw InvalidArgument("witnesses: F_" + std::to_string(p) + "^2 has fewer than " +
                            std::to_string(j + 1) + " generators in scan range");
    }
    out.push_back({deltas[j], gens[j]});
  }
  return out;
}

std::string to_string(ReportErrorKind k) {
  switch (k) {
    case ReportErrorKind::set_mismatch: return "set_mismatch";
    case ReportErrorKind::contract: return "contract";
    case ReportErrorKind::other: return "other";
  }
  return "other";
}

bool SignReport::ok() const {
  if (error || !match) return false;
  return std::all_of(lemmas.begin(), lemmas.end(), [](const LemmaReport& l) { return l.pass || l.skipped; });
}

namespace {

ReportError classify(const std::exception& e) {
  if (dynamic_cast<const SetMismatch*>(&e)) return {ReportErrorKind::set_mismatch, e.what()};
  if (dynamic_cast<const ContractViolation*>(&e)) return {ReportErrorKind::contract, e.what()};
  return {ReportErrorKind::other, e.what()};
}

void check_one(SignReport& r, std::optional<i64> h, const VerifyOptions& options) {
  const FieldCtx ctx(r.p, r.delta);

  auto start = Clock::now();
  PermSpec perm = permutation_from(build_S_star(ctx, r.g), build_S(ctx));
  if (options.timing) r.timing.build_us = micros_since(start);

  start = Clock::now();
  r.brute = sign_by_cycles(perm);
  if (options.ratio && r.p <= options.ratio_cap) r.ratio_sign = sign_by_ratio(ctx, perm, options.ratio_cap);
  const Beta0 beta = compute_beta0(ctx, r.g);
  r.beta0 = beta.value;
  r.beta0_witness = beta.witness;
  r.h = h;
  r.predicted = predicted_sign(r.p, r.beta0, h, options.formula);
  r.match = r.predicted == r.brute;
  if (options.timing) r.timing.sign_us = micros_since(start);
  if (r.ratio_sign && *r.ratio_sign != r.brute) {
    throw ContractViolation("sign algorithms disagree: cycles " + std::to_string(r.brute) + ", ratio " +
                            std::to_string(*r.ratio_sign));
  }
}

}  // namespace

std::vector<SignReport> verify_prime(u64 p, const VerifyOptions& options) {
  if (p < 3 || p > kMaxPrime || !is_prime(p)) {
    throw InvalidArgument("verify_prime: " + std::to_string(p) + " is not an odd prime within the cap");
  }
  const auto witnesses = select_witnesses(p, options.witnesses, options.delta, options.g);

  std::optional<i64> h;
  std::optional<ReportError> h_error;
  if (p % 4 == 3 && p > 3) {
    try {
      h = class_number_checked(p);
    } catch (const Error& e) {
      h_error = classify(e);
    }
  }

  std::vector<SignReport> reports;
  reports.reserve(witnesses.size());
  for (const Witness& w : witnesses) {
    SignReport r;
    r.p = p;
    r.delta = w.delta;
    r.g = w.g;
    if (h_error) {
      r.error = h_error;
    } else {
      try {
        check_one(r, h, options);
      } catch (const Error& e) {
        r.error = classify(e);
      }
    }
    // Lemma failures are reported on their own and never mask the sign check.
    if (!options.lemmas.empty()) {
      const auto start = Clock::now();
      try {
        r.lemmas = run_field_lemmas(FieldCtx(p, w.delta), options.lemmas, w.g, options.formula,
                                    options.cyclotomic_cap);
      } catch (const Error& e) {
        if (!r.error) r.error = classify(e);
      }
      if (options.timing) r.timing.lemma_us = micros_since(start);
    }
    reports.push_back(std::move(r));
  }
  return reports;
}

std::vector<u64> primes_in_range(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 p = std::max<u64>(lo, 3); p <= hi; ++p) {
    if (p % 2 == 1 && is_prime(p)) out.push_back(p);
  }
  return out;
}

unsigned default_worker_count() {
  if (const char* env = std::getenv("SQPERM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

CampaignResult run_campaign(const Campaign& campaign) {
  if (campaign.lo < 3) throw InvalidArgument("campaign: lower bound must be at least 3");
  if (campaign.hi > kMaxPrime) throw InvalidArgument("campaign: upper bound exceeds 2^31-1");
  if (campaign.hi < campaign.lo) throw InvalidArgument("campaign: empty range");
  if (campaign.options.witnesses == 0) throw InvalidArgument("campaign: witnesses must be at least 1");

  const auto primes = primes_in_range(campaign.lo, campaign.hi);
  std::vector<std::vector<SignReport>> per_prime(primes.size());
  std::vector<std::int64_t> elapsed(primes.size(), 0);
  parallel_for_index(primes.size(), campaign.workers, [&](std::size_t i) {
    const auto start = Clock::now();
    per_prime[i] = verify_prime(primes[i], campaign.options);
    elapsed[i] = micros_since(start);
  });

  CampaignResult result;
  result.summary.primes = primes.size();
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (elapsed[i] > result.summary.slowest_us || result.summary.slowest_prime == 0) {
      result.summary.slowest_us = elapsed[i];
      result.summary.slowest_prime = primes[i];
    }
    for (auto& r : per_prime[i]) result.reports.push_back(std::move(r));
  }
  std::stable_sort(result.reports.begin(), result.reports.end(), [](const SignReport& x, const SignReport& y) {
    return std::tie(x.p, x.delta, x.g) < std::tie(y.p, y.delta, y.g);
  });

  auto& s = result.summary;
  s.reports = result.reports.size();
  for (const auto& r : result.reports) {
    if (r.error) {
      ++s.errors;
    } else if (r.match) {
      ++s.matches;
    } else {
      ++s.mismatches;
    }
    s.lemma_failures += static_cast<std::size_t>(std::count_if(
        r.lemmas.begin(), r.lemmas.end(), [](const LemmaReport& l) { return !l.pass && !l.skipped; }));
  }
  return result;
}

}  // namespace sqperm
