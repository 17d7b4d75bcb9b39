#include "sqperm/perm.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace sqperm {

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::S: return "S";
    case SequenceKind::S_star: return "S_star";
    case SequenceKind::tau_domain: return "tau_domain";
    case SequenceKind::tau_range: return "tau_range";
    case SequenceKind::proot_fp: return "proot_fp";
    case SequenceKind::custom: return "custom";
  }
  return "unknown";
}

SquareSequence build_S(const FieldCtx& ctx) {
  const u64 p = ctx.p();
  const u64 n = ctx.n();
  SquareSequence seq{SequenceKind::S, p, {}};
  seq.elems.reserve(ctx.m());

  std::vector<Fp2> j_squares;
  j_squares.reserve(n);
  for (u64 j = 1; j <= n; ++j) j_squares.push_back({j * j % p, 0});

  for (u64 k = 0; k < p; ++k) {
    const Fp2 a_k{k, 1};
    const Fp2 a_k2 = ctx.mul(a_k, a_k);
    for (const Fp2& j2 : j_squares) seq.elems.push_back(ctx.mul(a_k2, j2));
  }
  seq.elems.insert(seq.elems.end(), j_squares.begin(), j_squares.end());
  return seq;
}

SquareSequence build_S_star(const FieldCtx& ctx, Fp2 g) {
  if (!ctx.is_generator(g)) {
    throw NotAGenerator("S*: " + to_string(g) + " does not generate F_" +
                        std::to_string(ctx.p()) + "^2 (Delta = " + std::to_string(ctx.delta()) +
                        ")");
  }
  SquareSequence seq{SequenceKind::S_star, ctx.p(), {}};
  seq.elems.reserve(ctx.m());
  const Fp2 g2 = ctx.mul(g, g);
  Fp2 x = g2;
  for (u64 i = 0; i < ctx.m(); ++i) {
    seq.elems.push_back(x);
    x = ctx.mul(x, g2);
  }
  return seq;
}

std::pair<SquareSequence, SquareSequence> build_tau_sequences(u64 p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("tau: " + std::to_string(p) + " is not an odd prime");
  const u64 n = (p - 1) / 2;
  SquareSequence domain{SequenceKind::tau_domain, p, {}};
  std::vector<bool> is_residue(p, false);
  for (u64 j = 1; j <= n; ++j) {
    const u64 r = j * j % p;
    domain.elems.push_back({r, 0});
    is_residue[r] = true;
  }
  SquareSequence range{SequenceKind::tau_range, p, {}};
  for (u64 b = 1; b < p; ++b) {
    if (is_residue[b]) range.elems.push_back({b, 0});
  }
  return {std::move(domain), std::move(range)};
}

u64 find_fp_primitive_root(u64 p) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("primitive root: " + std::to_string(p) + " is not an odd prime");
  const auto f = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = true;
    for (auto [ell, e] : f.factors) {
      if (pow_mod(g, (p - 1) / ell, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw ContractViolation("primitive root: none found mod " + std::to_string(p));
}

SquareSequence build_proot_sequence(u64 p, u64 g) {
  if (p < 3 || !is_prime(p)) throw InvalidArgument("proot: " + std::to_string(p) + " is not an odd prime");
  SquareSequence seq{SequenceKind::proot_fp, p, {}};
  const u64 g2 = mul_mod(g, g, p);
  u64 x = g2;
  for (u64 i = 0; i < (p - 1) / 2; ++i) {
    seq.elems.push_back({x, 0});
    x = mul_mod(x, g2, p);
  }
  return seq;
}

namespace {

// Position lookup keyed on canonical (a, b). Direct-addressed for small p.
class ElementIndex {
 public:
  explicit ElementIndex(u64 p, std::size_t expected) : p_(p) {
    if (p <= (u64{1} << 16) && expected < kEmpty) {
      direct_.assign(p * p, kEmpty);
    } else {
      hashed_.reserve(expected);
    }
  }

  // False if the key was already present.
  bool insert(Fp2 x, std::size_t pos) {
    if (!direct_.empty()) {
      auto& slot = direct_[key(x)];
      if (slot != kEmpty) return false;
      slot = static_cast<std::uint32_t>(pos);
      return true;
    }
    return hashed_.emplace(key(x), pos).second;
  }

  // kAbsent when missing.
  std::size_t find(Fp2 x) const {
    if (!direct_.empty()) {
      const auto v = direct_[key(x)];
      return v == kEmpty ? kAbsent : v;
    }
    auto it = hashed_.find(key(x));
    return it == hashed_.end() ? kAbsent : it->second;
  }

  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();

 private:
  static constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

  u64 key(Fp2 x) const { return x.b * p_ + x.a; }

  u64 p_;
  std::vector<std::uint32_t> direct_;
  std::unordered_map<u64, std::size_t> hashed_;
};

}  // namespace

PermSpec permutation_from(SquareSequence source, SquareSequence target) {
  if (source.p != target.p) throw InvalidArgument("permutation_from: sequences over different fields");
  const std::size_t len = source.elems.size();
  if (target.elems.size() != len) {
    throw InvalidArgument("permutation_from: lengths differ (" + std::to_string(len) + " vs " +
                          std::to_string(target.elems.size()) + ")");
  }
  const u64 p = source.p;
  ElementIndex index(p, len);
  for (std::size_t i = 0; i < len; ++i) {
    const Fp2 x = source.elems[i];
    if (x.a >= p || x.b >= p) {
      throw SetMismatch("permutation_from: non-canonical element " + to_string(x), x, i, false);
    }
    if (!index.insert(x, i)) {
      throw SetMismatch("permutation_from: duplicate element " + to_string(x) + " in source", x, i,
                        false);
    }
  }

  std::vector<std::size_t> mapping(len);
  std::vector<bool> hit(len, false);
  for (std::size_t i = 0; i < len; ++i) {
    const Fp2 x = target.elems[i];
    const std::size_t j = (x.a < p && x.b < p) ? index.find(x) : ElementIndex::kAbsent;
    if (j == ElementIndex::kAbsent) {
      throw SetMismatch("permutation_from: target element " + to_string(x) + " at " +
                            std::to_string(i) + " is missing from source",
                        x, i, true);
    }
    if (hit[j]) {
      throw SetMismatch("permutation_from: duplicate element " + to_string(x) + " in target", x, i,
                        true);
    }
    hit[j] = true;
    mapping[i] = j;
  }
  return {std::move(source), std::move(target), std::move(mapping)};
}

int sign_by_cycles(std::span<const std::size_t> mapping) {
  const std::size_t len = mapping.size();
  if (std::any_of(mapping.begin(), mapping.end(), [len](std::size_t j) { return j >= len; })) {
    throw InvalidArgument("sign_by_cycles: index out of range");
  }
  std::vector<bool> visited(len, false);
  for (std::size_t j : mapping) {
    if (visited[j]) throw InvalidArgument("sign_by_cycles: mapping is not a bijection");
    visited[j] = true;
  }
  visited.assign(len, false);
  std::size_t cycles = 0;
  for (std::size_t start = 0; start < len; ++start) {
    if (visited[start]) continue;
    ++cycles;
    for (std::size_t i = start; !visited[i]; i = mapping[i]) visited[i] = true;
  }
  return (len - cycles) % 2 == 0 ? 1 : -1;
}

int sign_by_ratio(const FieldCtx& ctx, const PermSpec& perm, u64 max_p) {
  if (ctx.p() > max_p) {
    throw SizeCapExceeded("sign_by_ratio: p = " + std::to_string(ctx.p()) + " exceeds cap " +
                          std::to_string(max_p));
  }
  if (perm.source.p != ctx.p()) throw InvalidArgument("sign_by_ratio: field mismatch");
  const auto& alpha = perm.source.elems;
  const auto& image = perm.target.elems;
  Fp2 num = ctx.one();
  Fp2 den = ctx.one();
  for (std::size_t t = 0; t < alpha.size(); ++t) {
    for (std::size_t s = 0; s < t; ++s) {
      num = ctx.mul(num, ctx.sub(image[t], image[s]));
      den = ctx.mul(den, ctx.sub(alpha[t], alpha[s]));
    }
  }
  if (den == ctx.zero()) throw ContractViolation("sign_by_ratio: source has repeated elements");
  const Fp2 ratio = ctx.div(num, den);
  if (ratio == ctx.one()) return 1;
  if (ratio == ctx.minus_one()) return -1;
  throw ContractViolation("sign_by_ratio: product is " + to_string(ratio) +
                          ", not +-1 (target is not a rearrangement of source)");
}

}  // namespace sqperm
