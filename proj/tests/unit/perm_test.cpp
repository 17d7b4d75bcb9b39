#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "sqperm/field.hpp"
#include "sqperm/perm.hpp"
#include "test_support.hpp"

namespace sqperm {
namespace {

// Parity of the inversion count, O(n^2).
int sign_by_inversions(const std::vector<std::size_t>& perm) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) inversions += perm[i] > perm[j];
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::set<Fp2> all_squares(const FieldCtx& ctx) {
  std::set<Fp2> out;
  for (u64 a = 0; a < ctx.p(); ++a) {
    for (u64 b = 0; b < ctx.p(); ++b) {
      if (a == 0 && b == 0) continue;
      out.insert(ctx.mul({a, b}, {a, b}));
    }
  }
  return out;
}

std::vector<std::size_t> random_permutation(std::size_t n, std::mt19937_64& gen) {
  std::vector<std::size_t> v(n);
  std::iota(v.begin(), v.end(), 0);
  std::shuffle(v.begin(), v.end(), gen);
  return v;
}

SquareSequence custom(u64 p, std::vector<Fp2> elems) {
  return {SequenceKind::custom, p, std::move(elems)};
}

TEST(BuildS, PThreeHandExpansion) {
  const FieldCtx ctx(3, -1);
  EXPECT_EQ(build_S(ctx).elems, (std::vector<Fp2>{{2, 0}, {0, 2}, {0, 1}, {1, 0}}));
  EXPECT_EQ(build_S(ctx).kind, SequenceKind::S);
}

TEST(BuildS, Length) {
  for (u64 p : {3, 5, 7, 11}) {
    const FieldCtx ctx(p, find_delta(p));
    EXPECT_EQ(build_S(ctx).elems.size(), (p * p - 1) / 2);
  }
}

TEST(BuildS, FollowsTheProductOrder) {
  const FieldCtx ctx(11, -5);
  const auto s = build_S(ctx).elems;
  const u64 n = ctx.n();
  for (u64 k = 0; k < ctx.p(); ++k) {
    const Fp2 ak{k, 1};
    for (u64 j = 1; j <= n; ++j) {
      const Fp2 aj = ctx.mul(ak, ctx.from_int(static_cast<i64>(j)));
      ASSERT_EQ(s[k * n + (j - 1)], ctx.mul(aj, aj));
    }
  }
  for (u64 j = 1; j <= n; ++j) ASSERT_EQ(s[ctx.p() * n + (j - 1)], (Fp2{j * j % ctx.p(), 0}));
}

TEST(BuildSStar, PThreeGoldenValues) {
  const FieldCtx ctx(3, -1);
  EXPECT_EQ(build_S_star(ctx, {1, 1}).elems, (std::vector<Fp2>{{0, 2}, {2, 0}, {0, 1}, {1, 0}}));
  EXPECT_EQ(build_S_star(ctx, {2, 1}).elems, (std::vector<Fp2>{{0, 1}, {2, 0}, {0, 2}, {1, 0}}));
}

TEST(BuildSStar, EndpointsAndMinusOne) {
  for (u64 p : {3, 5, 7, 11, 13, 101}) {
    const FieldCtx ctx(p, find_delta(p));
    for (const Fp2& g : find_generators(ctx, 3)) {
      const auto s = build_S_star(ctx, g).elems;
      EXPECT_EQ(s.front(), ctx.mul(g, g));
      EXPECT_EQ(s.back(), ctx.one());
      EXPECT_EQ(s[ctx.q() / 4 - 1], ctx.minus_one());
      EXPECT_EQ(std::count(s.begin(), s.end(), ctx.minus_one()), 1);
      for (std::size_t i = 0; i < s.size(); i += 97) EXPECT_EQ(s[i], ctx.pow(g, 2 * (i + 1)));
    }
  }
}

TEST(BuildSStar, RejectsNonGenerators) {
  const FieldCtx ctx(3, -1);
  EXPECT_THROW(build_S_star(ctx, {0, 1}), NotAGenerator);
  EXPECT_THROW(build_S_star(ctx, {1, 0}), NotAGenerator);
  EXPECT_THROW(build_S_star(ctx, {0, 0}), NotAGenerator);
}

TEST(Squares, SAndSStarAreTheSquareSetUpToThirtyOne) {
  for (u64 p = 3; p <= 31; p += 2) {
    if (!is_prime(p)) continue;
    for (i64 d : find_deltas(p, 2)) {
      const FieldCtx ctx(p, d);
      const auto expected = all_squares(ctx);
      ASSERT_EQ(expected.size(), ctx.m());
      const auto s = build_S(ctx).elems;
      const std::set<Fp2> s_set(s.begin(), s.end());
      EXPECT_EQ(s.size(), s_set.size()) << "duplicates in S at p=" << p;
      EXPECT_EQ(s_set, expected);
      for (const Fp2& g : find_generators(ctx, 2)) {
        const auto t = build_S_star(ctx, g).elems;
        EXPECT_EQ(std::set<Fp2>(t.begin(), t.end()), expected);
        EXPECT_EQ(t.size(), expected.size());
      }
    }
  }
}

TEST(PermutationFrom, IdentityAndTransposition) {
  const auto x = custom(7, {{1, 0}, {2, 3}, {4, 5}, {6, 6}});
  const auto id = permutation_from(x, x);
  EXPECT_EQ(id.mapping, (std::vector<std::size_t>{0, 1, 2, 3}));
  EXPECT_EQ(sign_by_cycles(id), 1);

  auto swapped = x;
  std::swap(swapped.elems[1], swapped.elems[3]);
  const auto t = permutation_from(x, swapped);
  EXPECT_EQ(t.mapping, (std::vector<std::size_t>{0, 3, 2, 1}));
  EXPECT_EQ(sign_by_cycles(t), -1);
}

TEST(PermutationFrom, MappingReproducesTarget) {
  for (u64 p : {3, 5, 7, 13, 257}) {
    const FieldCtx ctx(p, find_delta(p));
    const auto perm = permutation_from(build_S_star(ctx, find_generator(ctx)), build_S(ctx));
    std::vector<bool> hit(perm.mapping.size(), false);
    for (std::size_t i = 0; i < perm.mapping.size(); ++i) {
      ASSERT_EQ(perm.target.elems[i], perm.source.elems[perm.mapping[i]]);
      ASSERT_FALSE(hit[perm.mapping[i]]);
      hit[perm.mapping[i]] = true;
    }
  }
}

TEST(PermutationFrom, ReportsTheFirstOffendingElement) {
  const auto a = custom(7, {{1, 0}, {2, 0}, {4, 0}});
  const auto b = custom(7, {{1, 0}, {3, 0}, {4, 0}});
  try {
    permutation_from(a, b);
    FAIL() << "expected SetMismatch";
  } catch (const SetMismatch& e) {
    EXPECT_EQ(e.element(), (Fp2{3, 0}));
    EXPECT_EQ(e.position(), 1u);
    EXPECT_TRUE(e.in_target());
  }
}

TEST(PermutationFrom, RejectsDuplicatesAndLengthMismatch) {
  const auto dup = custom(7, {{1, 0}, {1, 0}, {4, 0}});
  const auto ok = custom(7, {{1, 0}, {2, 0}, {4, 0}});
  EXPECT_THROW(permutation_from(dup, ok), SetMismatch);
  EXPECT_THROW(permutation_from(ok, dup), SetMismatch);
  EXPECT_THROW(permutation_from(ok, custom(7, {{1, 0}, {2, 0}})), Error);
}

TEST(PermutationFrom, LargePrimeUsesTheHashedIndex) {
  const u64 p = 65537;  // above the direct-table bound
  const FieldCtx ctx(p, find_delta(p));
  std::vector<Fp2> elems;
  for (u64 i = 1; i <= 500; ++i) elems.push_back({i * 131 % p, i * 7919 % p});
  auto shuffled = elems;
  auto gen = testing::rng(10);
  std::shuffle(shuffled.begin(), shuffled.end(), gen);
  const auto perm = permutation_from(custom(p, elems), custom(p, shuffled));
  for (std::size_t i = 0; i < shuffled.size(); ++i) ASSERT_EQ(elems[perm.mapping[i]], shuffled[i]);
}

TEST(SignByCycles, SmallCases) {
  EXPECT_EQ(sign_by_cycles(std::vector<std::size_t>{}), 1);
  EXPECT_EQ(sign_by_cycles(std::vector<std::size_t>{0, 1, 2}), 1);
  EXPECT_EQ(sign_by_cycles(std::vector<std::size_t>{1, 0, 2}), -1);
  EXPECT_EQ(sign_by_cycles(std::vector<std::size_t>{1, 2, 0}), 1);
  EXPECT_EQ(sign_by_cycles(std::vector<std::size_t>{1, 2, 3, 0}), -1);
}

TEST(SignByCycles, RejectsNonPermutations) {
  EXPECT_THROW(sign_by_cycles(std::vector<std::size_t>{0, 0}), InvalidArgument);
  EXPECT_THROW(sign_by_cycles(std::vector<std::size_t>{0, 5}), InvalidArgument);
}

TEST(SignByCycles, MatchesInversionParity) {
  auto gen = testing::rng(11);
  std::uniform_int_distribution<std::size_t> len(0, 300);
  for (int i = 0; i < 300; ++i) {
    const auto v = random_permutation(len(gen), gen);
    ASSERT_EQ(sign_by_cycles(v), sign_by_inversions(v));
  }
}

TEST(SignByCycles, CompositionLaw) {
  auto gen = testing::rng(12);
  for (int i = 0; i < 300; ++i) {
    const std::size_t n = 1 + i % 64;
    const auto a = random_permutation(n, gen);
    const auto b = random_permutation(n, gen);
    std::vector<std::size_t> ab(n);
    for (std::size_t k = 0; k < n; ++k) ab[k] = a[b[k]];
    ASSERT_EQ(sign_by_cycles(ab), sign_by_cycles(a) * sign_by_cycles(b));
  }
}

TEST(SignByCycles, InverseHasTheSameSign) {
  for (u64 p : {5, 7, 11, 13}) {
    const FieldCtx ctx(p, find_delta(p));
    const auto fwd = permutation_from(build_S_star(ctx, find_generator(ctx)), build_S(ctx));
    const auto back = permutation_from(build_S(ctx), build_S_star(ctx, find_generator(ctx)));
    EXPECT_EQ(sign_by_cycles(fwd), sign_by_cycles(back));
  }
}

TEST(SignByRatio, AgreesWithCyclesOnSquaresPermutation) {
  for (u64 p : {3, 5, 7, 11, 13}) {
    for (i64 d : find_deltas(p, 2)) {
      const FieldCtx ctx(p, d);
      for (const Fp2& g : find_generators(ctx, 2)) {
        const auto perm = permutation_from(build_S_star(ctx, g), build_S(ctx));
        EXPECT_EQ(sign_by_ratio(ctx, perm), sign_by_cycles(perm)) << p << " " << d << " " << to_string(g);
      }
    }
  }
}

TEST(SignByRatio, AgreesWithCyclesOnRandomPermutations) {
  auto gen = testing::rng(13);
  for (u64 p : {5, 7, 13}) {
    const FieldCtx ctx(p, find_delta(p));
    std::vector<Fp2> pool;
    for (u64 a = 0; a < p; ++a) {
      for (u64 b = 0; b < p; ++b) pool.push_back({a, b});
    }
    for (int trial = 0; trial < 200; ++trial) {
      std::shuffle(pool.begin(), pool.end(), gen);
      std::uniform_int_distribution<std::size_t> len(1, std::min<std::size_t>(pool.size(), 40));
      std::vector<Fp2> elems(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len(gen)));
      const auto order = random_permutation(elems.size(), gen);
      std::vector<Fp2> target(elems.size());
      for (std::size_t i = 0; i < elems.size(); ++i) target[i] = elems[order[i]];
      const auto perm = permutation_from(custom(p, elems), custom(p, target));
      ASSERT_EQ(perm.mapping, order);
      ASSERT_EQ(sign_by_ratio(ctx, perm), sign_by_cycles(perm));
    }
  }
}

TEST(SignByRatio, IdentityAndCap) {
  const FieldCtx ctx(37, find_delta(37));
  const auto s = build_S(ctx);
  EXPECT_THROW(sign_by_ratio(ctx, permutation_from(s, s)), SizeCapExceeded);
  EXPECT_EQ(sign_by_ratio(ctx, permutation_from(s, s), 37), 1);
}

TEST(TauSequences, SmallPrimes) {
  const auto [d7, r7] = build_tau_sequences(7);
  EXPECT_EQ(d7.elems, (std::vector<Fp2>{{1, 0}, {4, 0}, {2, 0}}));
  EXPECT_EQ(r7.elems, (std::vector<Fp2>{{1, 0}, {2, 0}, {4, 0}}));
  EXPECT_EQ(d7.kind, SequenceKind::tau_domain);
  EXPECT_EQ(r7.kind, SequenceKind::tau_range);
  const auto [d3, r3] = build_tau_sequences(3);
  EXPECT_EQ(d3.elems, (std::vector<Fp2>{{1, 0}}));
  EXPECT_EQ(r3.elems, (std::vector<Fp2>{{1, 0}}));
}

TEST(TauSequences, SetEqualityUpToTenThousand) {
  for (u64 p = 3; p <= 10000; p += 2) {
    if (!is_prime(p)) continue;
    const auto [dom, rng] = build_tau_sequences(p);
    ASSERT_EQ(dom.elems.size(), (p - 1) / 2);
    ASSERT_TRUE(std::is_sorted(rng.elems.begin(), rng.elems.end()));
    ASSERT_EQ(std::set<Fp2>(dom.elems.begin(), dom.elems.end()), std::set<Fp2>(rng.elems.begin(), rng.elems.end()));
    ASSERT_EQ(std::set<Fp2>(rng.elems.begin(), rng.elems.end()).size(), (p - 1) / 2);
  }
}

TEST(PrimitiveRoot, SmallestAndSequence) {
  EXPECT_EQ(find_fp_primitive_root(7), 3u);
  EXPECT_EQ(find_fp_primitive_root(23), 5u);
  EXPECT_EQ(find_fp_primitive_root(41), 6u);
  const auto s = build_proot_sequence(7, 3);
  EXPECT_EQ(s.elems, (std::vector<Fp2>{{2, 0}, {4, 0}, {1, 0}}));
}

}  // namespace
}  // namespace sqperm
