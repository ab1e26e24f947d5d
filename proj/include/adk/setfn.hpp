#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "adk/rational.hpp"

namespace adk {

/// Order sentinel: check alternating differences of every order up to n.
inline constexpr int k_unbounded = std::numeric_limits<int>::max();

inline int popcount(std::uint32_t mask) { return __builtin_popcount(mask); }

/// Ordered ground set of at most 20 distinct labels; element i is bit i in
/// every subset mask.  Empty grounds are allowed (constant functions), which
/// is what threshold tables of in-degree-0 nodes live on.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  int size() const { return static_cast<int>(labels_.size()); }
  std::uint32_t full_mask() const { return (size() == 0) ? 0u : ((1u << size()) - 1u); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(int i) const { return labels_.at(i); }

  /// Index of a label, or -1.
  int index_of(const std::string& label) const;

  std::string mask_to_string(std::uint32_t mask) const;

  bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
};

/// Total set function as a dense table of 2^n exact rationals, indexed by
/// subset bitmask.
class SetFunction {
 public:
  SetFunction() : values_(1, Rational(0)) {}
  SetFunction(GroundSet ground, std::vector<Rational> values);

  /// All-zero function on the given ground.
  static SetFunction zero(GroundSet ground);

  int n() const { return ground_.size(); }
  std::uint32_t table_size() const { return 1u << n(); }
  const GroundSet& ground() const { return ground_; }
  const std::vector<Rational>& values() const { return values_; }
  std::vector<Rational>& values() { return values_; }

  const Rational& at(std::uint32_t mask) const { return values_.at(mask); }
  void set(std::uint32_t mask, Rational v) {
    v.canonicalize();
    values_.at(mask) = std::move(v);
  }

  bool is_monotone() const;
  bool values_in_unit_interval() const;

 private:
  GroundSet ground_;
  std::vector<Rational> values_;
};

/// Point in [0,1]^n aligned with a ground set.
struct PointVector {
  std::vector<Rational> coords;

  int size() const { return static_cast<int>(coords.size()); }
  bool in_unit_cube() const;
};

/// Witness of a sign failure: the alternating difference of f at seed set S
/// (`s_mask`) in direction A (`a_mask`) has the wrong sign; `value` is the
/// raw difference.
struct AdkWitness {
  std::uint32_t a_mask = 0;
  std::uint32_t s_mask = 0;
  Rational value;
};

struct AdkReport {
  bool holds = true;
  int order_checked = 0;  // min(k, n) actually examined
  std::optional<AdkWitness> witness;
};

/// Set partition of {0, .., l-1}; each block is a bitmask over those l
/// positions, blocks listed in increasing order of their minimum element.
struct Partition {
  std::vector<std::uint32_t> blocks;

  int block_count() const { return static_cast<int>(blocks.size()); }
};

/// Alternating difference of f at S in direction A:
///   sum over B subseteq A of (-1)^|B| f(S u (A \ B)).
/// Total in both masks; evaluates to 0 whenever A and S overlap.
Rational difference(const SetFunction& f, std::uint32_t a_mask, std::uint32_t s_mask);

/// Checks sign((-1)^(|A|+1) * difference(f, A, S)) >= 0 for all disjoint
/// pairs with 1 <= |A| <= min(k, n).  k >= 1 (k_unbounded means n).  The
/// witness, when present, is the first failure in lexicographic order of
/// (|A|, A as mask, S as mask).
AdkReport is_adk(const SetFunction& f, int k);

/// Moebius transform g of h: g(S) = sum_{T subseteq S} (-1)^(|S|-|T|) h(T),
/// i.e. g(S) = difference(h, S, emptyset).
SetFunction mobius(const SetFunction& h);

/// Inverse transform: h(S) = sum_{T subseteq S} g(T).
SetFunction mobius_inverse(const SetFunction& g);

/// Multilinear extension G(x) = sum_T f(T) prod_{v in T} x_v
/// prod_{v notin T} (1 - x_v).  Exact; x must lie in [0,1]^n.
Rational multilinear_eval(const SetFunction& f, const PointVector& x);

/// Partial derivative of the multilinear extension with respect to all
/// coordinates in A (each appears with degree <= 1, so the mixed partial is
/// the coefficient sum):
///   sum_{T subseteq V \ A} difference(f, A, T) prod_{v in T} x_v
///   prod_{v in V \ (A u T)} (1 - x_v).
/// Independent of the coordinates x_v for v in A.
Rational multilinear_partial(const SetFunction& f, std::uint32_t a_mask,
                             const PointVector& x);

/// Compound function h(S) = G_f(g_1(S), .., g_n(S)): plugs the inner values
/// into the multilinear extension of f.  inner[i] corresponds to element i
/// of f's ground; all inner functions must share one ground (the result's)
/// and take values in [0,1], as must f.
SetFunction compound(const SetFunction& f, const std::vector<SetFunction>& inner);

/// Continuous version: H(x) = G_f(G_{g_1}(x), .., G_{g_n}(x)).
Rational compound_eval_continuous(const SetFunction& f,
                                  const std::vector<SetFunction>& inner,
                                  const PointVector& x);

/// All set partitions of {0, .., l-1}, 1 <= l <= 6, in a fixed deterministic
/// order (restricted-growth-string order).
std::vector<Partition> enumerate_partitions(int l);

/// Mixed partial of the compound extension H with respect to the distinct
/// coordinates in `coords` (1 <= |coords| <= 6), expanded over set
/// partitions of the differentiation variables:
///   sum over partitions P of coords, over injective assignments of inner
///   functions g_{v_1}, .., g_{v_s} to P's blocks, of
///   [prod_i d^(B_i) G_{g_{v_i}}(x)] * sum_{T subseteq V \ {v_i}}
///     difference(f, {v_i}, T) prod_{w in T} G_{g_w}(x)
///     prod_{w notin T u {v_i}} (1 - G_{g_w}(x)).
Rational partition_derivative(const SetFunction& f,
                              const std::vector<SetFunction>& inner,
                              const std::vector<int>& coords,
                              const PointVector& x);

}  // namespace adk
