#include <benchmark/benchmark.h>

#include "sqperm/field.hpp"
#include "sqperm/invariants.hpp"
#include "sqperm/perm.hpp"
#include "sqperm/verifier.hpp"

namespace {

using namespace sqperm;

u64 prime_at_least(u64 n) {
  while (!is_prime(n)) ++n;
  return n;
}

void BM_Fp2Mul(benchmark::State& state) {
  const FieldCtx ctx(kMaxPrime, find_delta(kMaxPrime));
  Fp2 x{123456789, 987654321};
  const Fp2 y{31415926, 27182818};
  for (auto _ : state) {
    x = ctx.mul(x, y);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_Fp2Mul);

void BM_FindGenerator(benchmark::State& state) {
  const u64 p = prime_at_least(static_cast<u64>(state.range(0)));
  const FieldCtx ctx(p, find_delta(p));
  for (auto _ : state) benchmark::DoNotOptimize(find_generator(ctx));
}
BENCHMARK(BM_FindGenerator)->Arg(199)->Arg(10007)->Arg(1000003);

void BM_BuildSequences(benchmark::State& state) {
  const u64 p = prime_at_least(static_cast<u64>(state.range(0)));
  const FieldCtx ctx(p, find_delta(p));
  const Fp2 g = find_generator(ctx);
  for (auto _ : state) {
    auto s = build_S(ctx);
    auto t = build_S_star(ctx, g);
    benchmark::DoNotOptimize(s.elems.data());
    benchmark::DoNotOptimize(t.elems.data());
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ctx.q()));
}
BENCHMARK(BM_BuildSequences)->Arg(199)->Arg(1009)->Arg(4001);

void BM_PermutationFrom(benchmark::State& state) {
  const u64 p = prime_at_least(static_cast<u64>(state.range(0)));
  const FieldCtx ctx(p, find_delta(p));
  const auto s = build_S(ctx);
  const auto t = build_S_star(ctx, find_generator(ctx));
  for (auto _ : state) benchmark::DoNotOptimize(permutation_from(t, s).mapping.data());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ctx.m()));
}
BENCHMARK(BM_PermutationFrom)->Arg(199)->Arg(1009)->Arg(4001);

void BM_SignByCycles(benchmark::State& state) {
  const u64 p = prime_at_least(static_cast<u64>(state.range(0)));
  const FieldCtx ctx(p, find_delta(p));
  const auto perm = permutation_from(build_S_star(ctx, find_generator(ctx)), build_S(ctx));
  for (auto _ : state) benchmark::DoNotOptimize(sign_by_cycles(perm));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * ctx.m()));
}
BENCHMARK(BM_SignByCycles)->Arg(199)->Arg(4001);

void BM_SignByRatio(benchmark::State& state) {
  const u64 p = static_cast<u64>(state.range(0));
  const FieldCtx ctx(p, find_delta(p));
  const auto perm = permutation_from(build_S_star(ctx, find_generator(ctx)), build_S(ctx));
  for (auto _ : state) benchmark::DoNotOptimize(sign_by_ratio(ctx, perm));
}
BENCHMARK(BM_SignByRatio)->Arg(13)->Arg(31);

void BM_LemmaCyclotomic(benchmark::State& state) {
  const u64 p = static_cast<u64>(state.range(0));
  const FieldCtx ctx(p, find_delta(p));
  const Fp2 g = find_generator(ctx);
  for (auto _ : state) benchmark::DoNotOptimize(lemma_cyclotomic(ctx, g).pass);
}
BENCHMARK(BM_LemmaCyclotomic)->Arg(23)->Arg(47)->Unit(benchmark::kMillisecond);

void BM_ClassNumber(benchmark::State& state) {
  u64 p = prime_at_least(static_cast<u64>(state.range(0)));
  while (p % 4 != 3) p = prime_at_least(p + 1);
  for (auto _ : state) benchmark::DoNotOptimize(class_number(p));
}
BENCHMARK(BM_ClassNumber)->Arg(1000)->Arg(100000);

void BM_Campaign(benchmark::State& state) {
  Campaign c;
  c.lo = 3;
  c.hi = 199;
  c.workers = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_campaign(c).summary.reports);
}
BENCHMARK(BM_Campaign)->Arg(1)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
