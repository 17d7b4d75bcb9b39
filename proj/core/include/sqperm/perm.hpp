#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqperm/field.hpp"

namespace sqperm {

enum class SequenceKind { S, S_star, tau_domain, tau_range, proot_fp, custom };

std::string to_string(SequenceKind kind);

/// An ordered list of distinct nonzero field elements. Sequences over F_p
/// are stored with b = 0.
struct SquareSequence {
  SequenceKind kind = SequenceKind::custom;
  u64 p = 0;
  std::vector<Fp2> elems;
};

/// target.elems[i] == source.elems[mapping[i]] for every i.
struct PermSpec {
  SquareSequence source;
  SquareSequence target;
  std::vector<std::size_t> mapping;
};

/// Raised when two sequences fail to be rearrangements of each other.
/// `position` indexes `element` inside the sequence named by `in_target`.
class SetMismatch : public Error {
 public:
  SetMismatch(std::string what, Fp2 element, std::size_t position, bool in_target)
      : Error(std::move(what)), element_(element), position_(position), in_target_(in_target) {}

  Fp2 element() const { return element_; }
  std::size_t position() const { return position_; }
  bool in_target() const { return in_target_; }

 private:
  Fp2 element_;
  std::size_t position_;
  bool in_target_;
};

/// a_k^2 j^2 for k = 0..p-1 (outer), j = 1..n (inner), then j^2 for j = 1..n,
/// with a_k = k + sqrt(Delta).
SquareSequence build_S(const FieldCtx& ctx);

/// g^2, g^4, ..., g^{p^2-1}. Throws NotAGenerator unless g generates F_{p^2}^x.
SquareSequence build_S_star(const FieldCtx& ctx, Fp2 g);

/// (1^2, ..., n^2 mod p) and the quadratic residues of F_p in ascending order.
std::pair<SquareSequence, SquareSequence> build_tau_sequences(u64 p);

/// Smallest primitive root of F_p^x.
u64 find_fp_primitive_root(u64 p);
/// g^2, g^4, ..., g^{p-1} mod p.
SquareSequence build_proot_sequence(u64 p, u64 g);

/// Index map from elements of `source` to their positions. Throws
/// SetMismatch on duplicates or on any element of `target` missing from
/// `source`.
PermSpec permutation_from(SquareSequence source, SquareSequence target);

/// (-1)^(len - #cycles).
int sign_by_cycles(std::span<const std::size_t> mapping);
inline int sign_by_cycles(const PermSpec& perm) { return sign_by_cycles(perm.mapping); }

inline constexpr u64 kDefaultRatioCap = 31;

/// prod_{s<t} (target[t] - target[s]) / prod_{s<t} (source[t] - source[s])
/// evaluated in F_{p^2}. O(len^2); throws SizeCapExceeded when ctx.p()
/// exceeds max_p and ContractViolation if the value is not +-1.
int sign_by_ratio(const FieldCtx& ctx, const PermSpec& perm, u64 max_p = kDefaultRatioCap);

}  // namespace sqperm
