#include "adk/setfn.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace adk {

namespace {

/// Next submask of `universe` above `sub` in increasing numeric order;
/// wraps to 0 after `universe`.
inline std::uint32_t next_submask(std::uint32_t sub, std::uint32_t universe) {
  return (sub - universe) & universe;
}

void check_point(const SetFunction& f, const PointVector& x) {
  if (x.size() != f.n()) {
    throw std::invalid_argument("point dimension does not match ground set");
  }
  if (!x.in_unit_cube()) {
    throw std::invalid_argument("point outside the unit cube");
  }
}

/// In-place difference step: after the call, t[m] holds the directional
/// difference of the original table in direction `bit` at m, for every m
/// with the bit clear.
void diff_by_bit(std::vector<Rational>& t, std::uint32_t bit) {
  for (std::uint32_t m = 0; m < t.size(); ++m) {
    if (!(m & bit)) t[m] = t[m | bit] - t[m];
  }
}

}  // namespace

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  if (labels_.size() > 20) {
    throw std::invalid_argument("ground set larger than 20 elements");
  }
  std::set<std::string> seen;
  for (const auto& l : labels_) {
    if (l.empty()) throw std::invalid_argument("empty label");
    if (!seen.insert(l).second) {
      throw std::invalid_argument("duplicate label '" + l + "'");
    }
  }
}

int GroundSet::index_of(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return -1;
}

std::string GroundSet::mask_to_string(std::uint32_t mask) const {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < size(); ++i) {
    if (mask & (1u << i)) {
      if (!first) out += ",";
      out += labels_[i];
      first = false;
    }
  }
  out += "}";
  return out;
}

SetFunction::SetFunction(GroundSet ground, std::vector<Rational> values)
    : ground_(std::move(ground)), values_(std::move(values)) {
  if (values_.size() != (1u << ground_.size())) {
    throw std::invalid_argument("value table size must be 2^n");
  }
  for (Rational& v : values_) v.canonicalize();
}

SetFunction SetFunction::zero(GroundSet ground) {
  const std::size_t size = 1u << ground.size();
  return SetFunction(std::move(ground), std::vector<Rational>(size, Rational(0)));
}

bool SetFunction::is_monotone() const {
  for (std::uint32_t m = 0; m < table_size(); ++m) {
    for (int i = 0; i < n(); ++i) {
      const std::uint32_t bit = 1u << i;
      if (!(m & bit) && values_[m | bit] < values_[m]) return false;
    }
  }
  return true;
}

bool SetFunction::values_in_unit_interval() const {
  return std::all_of(values_.begin(), values_.end(),
                     [](const Rational& v) { return in_unit_interval(v); });
}

bool PointVector::in_unit_cube() const {
  return std::all_of(coords.begin(), coords.end(),
                     [](const Rational& v) { return in_unit_interval(v); });
}

Rational difference(const SetFunction& f, std::uint32_t a_mask, std::uint32_t s_mask) {
  const std::uint32_t full = f.ground().full_mask();
  if ((a_mask | full) != full || (s_mask | full) != full) {
    throw std::invalid_argument("mask outside the ground set");
  }
  Rational acc(0);
  std::uint32_t b = 0;
  while (true) {
    const Rational& term = f.at(s_mask | (a_mask ^ b));
    if (popcount(b) & 1) {
      acc -= term;
    } else {
      acc += term;
    }
    b = next_submask(b, a_mask);
    if (b == 0) break;
  }
  return acc;
}

AdkReport is_adk(const SetFunction& f, int k) {
  if (k < 1) throw std::invalid_argument("order must be >= 1");
  const int n = f.n();
  const int max_order = std::min(k, n);
  const std::uint32_t full = f.ground().full_mask();

  // Clear denominators once so the inner loops run on integers.
  mpz_class lcm_den(1);
  for (const auto& v : f.values()) {
    mpz_class den = v.get_den();
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), den.get_mpz_t());
  }
  std::vector<mpz_class> scaled(f.table_size());
  for (std::uint32_t m = 0; m < f.table_size(); ++m) {
    scaled[m] = f.at(m).get_num() * (lcm_den / f.at(m).get_den());
  }

  AdkReport report;
  report.order_checked = max_order;
  mpz_class sum;
  for (int order = 1; order <= max_order; ++order) {
    const bool want_nonneg = (order & 1) != 0;  // sign of (-1)^(|A|+1)
    for (std::uint32_t a = 1; a <= full; ++a) {
      if (popcount(a) != order) continue;
      const std::uint32_t comp = full & ~a;
      std::uint32_t s = 0;
      while (true) {
        sum = 0;
        std::uint32_t b = 0;
        while (true) {
          if (popcount(b) & 1) {
            sum -= scaled[s | (a ^ b)];
          } else {
            sum += scaled[s | (a ^ b)];
          }
          b = next_submask(b, a);
          if (b == 0) break;
        }
        const int sign = sgn(sum);
        if (want_nonneg ? sign < 0 : sign > 0) {
          report.holds = false;
          report.witness = AdkWitness{a, s, difference(f, a, s)};
          return report;
        }
        s = next_submask(s, comp);
        if (s == 0) break;
      }
    }
  }
  return report;
}

SetFunction mobius(const SetFunction& h) {
  SetFunction g = h;
  auto& t = g.values();
  for (int i = 0; i < h.n(); ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t m = 0; m < t.size(); ++m) {
      if (m & bit) t[m] -= t[m ^ bit];
    }
  }
  return g;
}

SetFunction mobius_inverse(const SetFunction& g) {
  SetFunction h = g;
  auto& t = h.values();
  for (int i = 0; i < g.n(); ++i) {
    const std::uint32_t bit = 1u << i;
    for (std::uint32_t m = 0; m < t.size(); ++m) {
      if (m & bit) t[m] += t[m ^ bit];
    }
  }
  return h;
}

Rational multilinear_eval(const SetFunction& f, const PointVector& x) {
  check_point(f, x);
  std::vector<Rational> table = f.values();
  for (int i = f.n() - 1; i >= 0; --i) {
    const std::uint32_t half = 1u << i;
    for (std::uint32_t m = 0; m < half; ++m) {
      table[m] += x.coords[i] * (table[m | half] - table[m]);
    }
    table.resize(half);
  }
  return table[0];
}

Rational multilinear_partial(const SetFunction& f, std::uint32_t a_mask,
                             const PointVector& x) {
  check_point(f, x);
  const std::uint32_t full = f.ground().full_mask();
  if ((a_mask | full) != full) {
    throw std::invalid_argument("mask outside the ground set");
  }
  std::vector<Rational> table = f.values();
  for (int i = 0; i < f.n(); ++i) {
    if (a_mask & (1u << i)) diff_by_bit(table, 1u << i);
  }
  // Fold out the remaining coordinates; entries touching a_mask bits are
  // stale but never read below m = 0's lattice.
  for (int i = 0; i < f.n(); ++i) {
    const std::uint32_t bit = 1u << i;
    if (a_mask & bit) continue;
    for (std::uint32_t m = 0; m < table.size(); ++m) {
      if (!(m & bit)) table[m] += x.coords[i] * (table[m | bit] - table[m]);
    }
  }
  return table[0];
}

namespace {

void check_compound_args(const SetFunction& f, const std::vector<SetFunction>& inner) {
  if (static_cast<int>(inner.size()) != f.n()) {
    throw std::invalid_argument("need one inner function per outer element");
  }
  if (!f.values_in_unit_interval()) {
    throw std::invalid_argument("outer function must map into [0,1]");
  }
  for (const auto& g : inner) {
    if (!(g.ground() == inner.front().ground())) {
      throw std::invalid_argument("inner functions must share a ground set");
    }
    if (!g.values_in_unit_interval()) {
      throw std::invalid_argument("inner functions must map into [0,1]");
    }
  }
}

}  // namespace

SetFunction compound(const SetFunction& f, const std::vector<SetFunction>& inner) {
  check_compound_args(f, inner);
  if (f.n() == 0) return SetFunction(GroundSet(), {f.at(0)});
  SetFunction h = SetFunction::zero(inner.front().ground());
  PointVector p;
  p.coords.resize(f.n());
  for (std::uint32_t s = 0; s < h.table_size(); ++s) {
    for (int i = 0; i < f.n(); ++i) p.coords[i] = inner[i].at(s);
    h.set(s, multilinear_eval(f, p));
  }
  return h;
}

Rational compound_eval_continuous(const SetFunction& f,
                                  const std::vector<SetFunction>& inner,
                                  const PointVector& x) {
  check_compound_args(f, inner);
  PointVector p;
  p.coords.reserve(f.n());
  for (const auto& g : inner) {
    if (g.n() != x.size()) {
      throw std::invalid_argument("point dimension does not match inner ground");
    }
    p.coords.push_back(multilinear_eval(g, x));
  }
  return multilinear_eval(f, p);
}

std::vector<Partition> enumerate_partitions(int l) {
  if (l < 1 || l > 6) throw std::invalid_argument("partition size must be in 1..6");
  std::vector<Partition> out;
  std::vector<int> rgs(l, 0);
  // Restricted growth strings in lexicographic order.
  while (true) {
    Partition p;
    const int blocks = 1 + *std::max_element(rgs.begin(), rgs.end());
    p.blocks.assign(blocks, 0);
    for (int i = 0; i < l; ++i) p.blocks[rgs[i]] |= 1u << i;
    out.push_back(std::move(p));

    int i = l - 1;
    for (; i >= 1; --i) {
      const int cap = 1 + *std::max_element(rgs.begin(), rgs.begin() + i);
      if (rgs[i] < cap) {
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
        break;
      }
      // else carry: reset handled by the fill above once a digit moves
    }
    if (i == 0) break;
  }
  return out;
}

Rational partition_derivative(const SetFunction& f,
                              const std::vector<SetFunction>& inner,
                              const std::vector<int>& coords,
                              const PointVector& x) {
  check_compound_args(f, inner);
  const int outer_n = f.n();
  if (outer_n == 0) return Rational(0);
  const GroundSet& domain = inner.front().ground();
  if (x.size() != domain.size()) {
    throw std::invalid_argument("point dimension does not match inner ground");
  }
  const int l = static_cast<int>(coords.size());
  if (l < 1 || l > 6) throw std::invalid_argument("need 1..6 derivative coordinates");
  std::uint32_t coord_mask = 0;
  for (int c : coords) {
    if (c < 0 || c >= domain.size()) throw std::invalid_argument("coordinate out of range");
    if (coord_mask & (1u << c)) throw std::invalid_argument("repeated coordinate");
    coord_mask |= 1u << c;
  }

  PointVector outer_point;
  outer_point.coords.reserve(outer_n);
  for (const auto& g : inner) outer_point.coords.push_back(multilinear_eval(g, x));

  // partials[v][block] = mixed partial of inner v's extension over the
  // coordinates selected by `block` (a mask over positions of `coords`).
  const std::uint32_t block_limit = 1u << l;
  std::vector<std::vector<Rational>> partials(outer_n,
                                              std::vector<Rational>(block_limit));
  std::vector<std::vector<bool>> have(outer_n, std::vector<bool>(block_limit, false));
  auto partial_of = [&](int v, std::uint32_t block) -> const Rational& {
    if (!have[v][block]) {
      std::uint32_t mask = 0;
      for (int j = 0; j < l; ++j) {
        if (block & (1u << j)) mask |= 1u << coords[j];
      }
      partials[v][block] = multilinear_partial(inner[v], mask, x);
      have[v][block] = true;
    }
    return partials[v][block];
  };

  // inner_sums[vp] = partial of f's extension in directions vp, evaluated at
  // the vector of inner extension values; shared by every partition whose
  // blocks get assigned exactly the node set vp.
  std::vector<Rational> inner_sums(1u << outer_n);
  std::vector<bool> have_inner(1u << outer_n, false);
  auto inner_sum_of = [&](std::uint32_t vp) -> const Rational& {
    if (!have_inner[vp]) {
      inner_sums[vp] = multilinear_partial(f, vp, outer_point);
      have_inner[vp] = true;
    }
    return inner_sums[vp];
  };

  Rational total(0);
  for (const Partition& part : enumerate_partitions(l)) {
    const int s = part.block_count();
    // Injective assignments of outer elements to the partition's blocks.
    auto recurse = [&](auto&& self, int depth, std::uint32_t used,
                       const Rational& factor) -> void {
      if (depth == s) {
        total += factor * inner_sum_of(used);
        return;
      }
      for (int v = 0; v < outer_n; ++v) {
        if (used & (1u << v)) continue;
        const Rational& p = partial_of(v, part.blocks[depth]);
        if (sgn(p) == 0) continue;
        self(self, depth + 1, used | (1u << v), factor * p);
      }
    };
    recurse(recurse, 0, 0u, Rational(1));
  }
  return total;
}

}  // namespace adk
