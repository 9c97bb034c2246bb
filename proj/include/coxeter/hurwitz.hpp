#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "coxeter/budget.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/group.hpp"
#include "coxeter/reflength.hpp"
#include "coxeter/subgroup.hpp"

namespace coxeter {

/// A tuple of reflections together with its product, read left to right.
struct Factorization {
  ReflectionTuple factors;
  ElementId product = 0;

  std::size_t length() const { return factors.size(); }
  friend bool operator==(const Factorization&, const Factorization&) = default;
};

inline Factorization make_factorization(const CoxeterGroup& g, ReflectionTuple factors) {
  ElementId p = g.identity_id();
  for (auto t : factors) {
    if (t >= g.reflection_count()) throw IndexOutOfRange("reflection index " + std::to_string(t));
    p = g.mul_reflection(p, t);
  }
  return {std::move(factors), p};
}

enum class Direction { Left, Right };

namespace detail {

inline void move_in_place(const CoxeterGroup& g, std::span<ReflectionIndex> f, std::size_t i, Direction d) {
  const ReflectionIndex a = f[i], b = f[i + 1];
  if (d == Direction::Left) {
    // (a, b) -> (b, b^-1 a b)
    f[i] = b;
    f[i + 1] = g.conj_reflection(a, b);
  } else {
    // (a, b) -> (a b a^-1, a)
    f[i] = g.conj_reflection(b, a);
    f[i + 1] = a;
  }
}

}  // namespace detail

/// The braid generator sigma_i (Left) or its inverse (Right), acting on
/// factors i and i+1 (1-based, 1 <= i <= N-1).
inline Factorization hurwitz_move(const CoxeterGroup& g, const Factorization& f, std::size_t i, Direction d) {
  if (i < 1 || i >= f.length())
    throw IndexOutOfRange("Hurwitz move at index " + std::to_string(i) + " on a tuple of length " +
                          std::to_string(f.length()));
  Factorization r = f;
  detail::move_in_place(g, r.factors, i - 1, d);
  return r;
}

/// The Hurwitz-invariant pair: the subgroup generated by the factors and the
/// multiset of H-conjugacy classes of the factors.
struct OrbitInvariant {
  SubgroupKey subgroup_key;
  std::vector<ElementId> class_multiset;  // sorted class labels
  friend bool operator==(const OrbitInvariant&, const OrbitInvariant&) = default;
  friend auto operator<=>(const OrbitInvariant&, const OrbitInvariant&) = default;
};

struct HurwitzOrbit {
  Factorization representative;  // lexicographically least member
  std::size_t size = 0;
  OrbitInvariant invariant;
  bool full = false;               // factors generate W
  bool invariant_constant = true;  // checked on every member during BFS
  bool product_constant = true;
  /// Least member of the form (s1, s1, s2, s2, ..., u_1, ..., u_k) with the
  /// suffix reduced; empty when the orbit has none.
  std::optional<ReflectionTuple> lr_shape;
};

/// Open-addressing set of fixed-length reflection tuples.
class TupleSet {
 public:
  TupleSet(std::size_t length, const Budget& budget) : len_(length), budget_(&budget) { rehash(1024); }

  std::size_t size() const { return count_; }
  std::size_t length() const { return len_; }
  std::span<const ReflectionIndex> at(std::size_t i) const { return {data_.data() + i * len_, len_}; }

  /// Index of the tuple, inserting if needed. Second is true when inserted.
  std::pair<std::size_t, bool> insert(std::span<const ReflectionIndex> t) {
    if (2 * (count_ + 1) > slots_.size()) rehash(slots_.size() * 2);
    std::size_t s = hash(t) & (slots_.size() - 1);
    while (slots_[s] != kEmpty) {
      if (equal(slots_[s], t)) return {slots_[s], false};
      s = (s + 1) & (slots_.size() - 1);
    }
    budget_->charge_tuples(count_ + 1);
    slots_[s] = static_cast<std::uint32_t>(count_);
    data_.insert(data_.end(), t.begin(), t.end());
    ++count_;
    if ((count_ & 0xffff) == 0) {
      budget_->charge_bytes(data_.capacity() * sizeof(ReflectionIndex) + slots_.size() * 4);
      budget_->check_time();
    }
    return {count_ - 1, true};
  }

  std::optional<std::size_t> find(std::span<const ReflectionIndex> t) const {
    std::size_t s = hash(t) & (slots_.size() - 1);
    while (slots_[s] != kEmpty) {
      if (equal(slots_[s], t)) return slots_[s];
      s = (s + 1) & (slots_.size() - 1);
    }
    return std::nullopt;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xFFFFFFFFu;

  std::uint64_t hash(std::span<const ReflectionIndex> t) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    for (auto x : t) {
      h ^= x;
      h *= 0xff51afd7ed558ccdULL;
      h ^= h >> 32;
    }
    return h;
  }
  bool equal(std::uint32_t idx, std::span<const ReflectionIndex> t) const {
    return std::equal(t.begin(), t.end(), data_.begin() + static_cast<std::ptrdiff_t>(idx * len_));
  }
  void rehash(std::size_t n) {
    budget_->charge_bytes(n * 4 + data_.size() * sizeof(ReflectionIndex));
    slots_.assign(n, kEmpty);
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t s = hash(at(i)) & (n - 1);
      while (slots_[s] != kEmpty) s = (s + 1) & (n - 1);
      slots_[s] = static_cast<std::uint32_t>(i);
    }
  }

  std::size_t len_;
  const Budget* budget_;
  std::size_t count_ = 0;
  std::vector<ReflectionIndex> data_;
  std::vector<std::uint32_t> slots_;
};

/// Computes orbit invariants, memoized per reflection subgroup.
class InvariantOracle {
 public:
  explicit InvariantOracle(const CoxeterGroup& g) : g_(&g), subgroups_(g) {}

  ReflectionSubgroups& subgroups() { return subgroups_; }

  struct Cheap {
    ReflectionSubgroups::Id subgroup;
    std::vector<ElementId> classes;
    friend bool operator==(const Cheap&, const Cheap&) = default;
  };

  Cheap cheap(std::span<const ReflectionIndex> f) {
    Cheap c;
    c.subgroup = subgroups_.generated_by(f);
    for (auto t : f) c.classes.push_back(subgroups_.class_label(c.subgroup, t));
    std::sort(c.classes.begin(), c.classes.end());
    return c;
  }

  /// The full invariant, with the subgroup identified by the canonical key
  /// of its element closure.
  OrbitInvariant full(std::span<const ReflectionIndex> f) {
    Cheap c = cheap(f);
    auto it = keys_.find(c.subgroup);
    if (it == keys_.end()) {
      ReflectionTuple gens(f.begin(), f.end());
      it = keys_.emplace(c.subgroup, closure_of_reflections(*g_, gens).key).first;
    }
    return {it->second, std::move(c.classes)};
  }

 private:
  const CoxeterGroup* g_;
  ReflectionSubgroups subgroups_;
  std::map<ReflectionSubgroups::Id, SubgroupKey> keys_;
};

namespace detail {

inline bool has_lr_shape(const CoxeterGroup& g, std::span<const ReflectionIndex> f, ElementId product) {
  const std::size_t k = static_cast<std::size_t>(g.reflection_length(product));
  const std::size_t pairs = (f.size() - k) / 2;
  for (std::size_t j = 0; j < pairs; ++j)
    if (f[2 * j] != f[2 * j + 1]) return false;
  // the pairs multiply to the identity, so the k-factor suffix has product
  // `product` and is therefore reduced
  return true;
}

/// Breadth-first closure of the orbit of `start` inside `set` (which must
/// contain it), inserting newly reached tuples when `grow` is set. Marks
/// members in `seen` and returns their indices.
inline std::vector<std::size_t> orbit_indices(const CoxeterGroup& g, TupleSet& set, std::size_t start,
                                              std::vector<char>& seen, bool grow) {
  std::vector<std::size_t> members{start};
  if (seen.size() <= start) seen.resize(start + 1, 0);
  seen[start] = 1;
  const std::size_t n = set.length();
  ReflectionTuple buf(n);
  for (std::size_t q = 0; q < members.size(); ++q) {
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (Direction d : {Direction::Left, Direction::Right}) {
        auto cur = set.at(members[q]);
        std::copy(cur.begin(), cur.end(), buf.begin());
        move_in_place(g, buf, i, d);
        std::size_t idx;
        if (grow) {
          idx = set.insert(buf).first;
        } else {
          auto found = set.find(buf);
          if (!found) throw std::logic_error("Hurwitz move left the factorization set");
          idx = *found;
        }
        if (seen.size() <= idx) seen.resize(idx + 1, 0);
        if (!seen[idx]) {
          seen[idx] = 1;
          members.push_back(idx);
        }
      }
  }
  return members;
}

inline HurwitzOrbit summarize_orbit(const CoxeterGroup& g, const TupleSet& set,
                                    const std::vector<std::size_t>& members, ElementId product,
                                    InvariantOracle& oracle) {
  HurwitzOrbit orbit;
  orbit.size = members.size();
  std::size_t best = members[0];
  std::optional<std::size_t> best_shape;
  for (auto m : members) {
    auto t = set.at(m);
    auto b = set.at(best);
    if (std::lexicographical_compare(t.begin(), t.end(), b.begin(), b.end())) best = m;
    if (has_lr_shape(g, t, product)) {
      if (!best_shape) best_shape = m;
      else {
        auto s = set.at(*best_shape);
        if (std::lexicographical_compare(t.begin(), t.end(), s.begin(), s.end())) best_shape = m;
      }
    }
  }
  auto rep = set.at(best);
  orbit.representative = {ReflectionTuple(rep.begin(), rep.end()), product};
  if (best_shape) {
    auto s = set.at(*best_shape);
    orbit.lr_shape = ReflectionTuple(s.begin(), s.end());
  }
  orbit.invariant = oracle.full(rep);
  const auto ref = oracle.cheap(rep);
  orbit.full = oracle.subgroups().is_whole(ref.subgroup);
  for (auto m : members) {
    auto t = set.at(m);
    if (!(oracle.cheap(t) == ref)) orbit.invariant_constant = false;
    ElementId p = g.identity_id();
    for (auto x : t) p = g.mul_reflection(p, x);
    if (p != product) orbit.product_constant = false;
  }
  return orbit;
}

}  // namespace detail

/// Orbit of f under all 2(N-1) Hurwitz moves.
inline HurwitzOrbit orbit_of(const CoxeterGroup& g, const Factorization& f, const Budget& budget = Budget{}) {
  InvariantOracle oracle(g);
  if (f.length() == 0) {
    HurwitzOrbit o;
    o.representative = f;
    o.size = 1;
    o.invariant = oracle.full(f.factors);
    o.full = g.order() == 1;
    o.lr_shape = ReflectionTuple{};
    return o;
  }
  TupleSet set(f.length(), budget);
  set.insert(f.factors);
  std::vector<char> seen;
  auto members = detail::orbit_indices(g, set, 0, seen, true);
  return detail::summarize_orbit(g, set, members, f.product, oracle);
}

/// All length-N reflection factorizations of x, in lexicographic order.
/// Depth-first over the first factor with the pruning rule
/// l(t x) <= remaining slots, same parity.
inline void for_each_factorization(const CoxeterGroup& g, ElementId x, std::size_t n,
                                   const std::function<void(const ReflectionTuple&)>& visit,
                                   const Budget& budget = Budget{}) {
  ReflectionTuple prefix;
  std::size_t count = 0;
  std::function<void(ElementId, std::size_t)> rec = [&](ElementId rest, std::size_t slots) {
    if (slots == 0) {
      if (rest == g.identity_id()) {
        budget.charge_tuples(++count);
        visit(prefix);
      }
      return;
    }
    for (std::size_t t = 0; t < g.reflection_count(); ++t) {
      ElementId next = g.reflection_mul(t, rest);
      const auto l = static_cast<std::size_t>(g.reflection_length(next));
      if (l > slots - 1 || (slots - 1 - l) % 2 != 0) continue;
      prefix.push_back(static_cast<ReflectionIndex>(t));
      rec(next, slots - 1);
      prefix.pop_back();
    }
  };
  const auto k = static_cast<std::size_t>(g.reflection_length(x));
  if (n < k || (n - k) % 2 != 0) return;
  rec(x, n);
}

struct Partition {
  Element product;
  std::size_t length = 0;
  std::size_t tuple_count = 0;
  std::vector<HurwitzOrbit> orbits;  // sorted by representative

  std::size_t distinct_invariants() const {
    std::vector<OrbitInvariant> inv;
    for (const auto& o : orbits) inv.push_back(o.invariant);
    std::sort(inv.begin(), inv.end());
    return static_cast<std::size_t>(std::unique(inv.begin(), inv.end()) - inv.begin());
  }
  /// Orbits and invariant values correspond one to one.
  bool invariants_complete() const { return distinct_invariants() == orbits.size(); }
};

/// Enumerates every length-N reflection factorization of x and splits them
/// into Hurwitz orbits.
inline Partition partition_factorizations(const CoxeterGroup& g, const Element& x, std::size_t n,
                                          const Budget& budget = Budget{},
                                          InvariantOracle* oracle = nullptr) {
  g.check(x);
  std::optional<InvariantOracle> local;
  if (!oracle) oracle = &local.emplace(g);
  Partition p;
  p.product = x;
  p.length = n;
  if (n == 0) {
    if (x.id == g.identity_id()) p.orbits.push_back(orbit_of(g, make_factorization(g, {}), budget));
    p.tuple_count = p.orbits.size();
    return p;
  }
  TupleSet set(n, budget);
  for_each_factorization(
      g, x.id, n, [&](const ReflectionTuple& f) { set.insert(f); }, budget);
  p.tuple_count = set.size();
  std::vector<char> seen(set.size(), 0);
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (seen[i]) continue;
    auto members = detail::orbit_indices(g, set, i, seen, false);
    p.orbits.push_back(detail::summarize_orbit(g, set, members, x.id, *oracle));
    budget.check_time();
  }
  std::sort(p.orbits.begin(), p.orbits.end(), [](const HurwitzOrbit& a, const HurwitzOrbit& b) {
    return a.representative.factors < b.representative.factors;
  });
  return p;
}

struct ConjectureReport {
  Element product;
  std::size_t length = 0;
  bool product_is_pqc = false;
  std::size_t tuple_count = 0;
  std::size_t orbit_count = 0;
  std::size_t invariant_count = 0;
  bool bijection = false;
  bool invariants_constant = true;
  bool shape_found_everywhere = true;
  std::vector<HurwitzOrbit> orbits;
};

/// Checks that the invariants separate the Hurwitz orbits of length-N
/// factorizations of x. For pqC products this is guaranteed; otherwise the
/// verdict is recorded as data.
inline ConjectureReport verify_conjecture(const CoxeterGroup& g, const Element& x, std::size_t n,
                                          const Budget& budget = Budget{}, InvariantOracle* oracle = nullptr) {
  ConjectureReport r;
  r.product = x;
  r.length = n;
  r.product_is_pqc = classify_pqc(g, x, false, budget).is_parabolic_quasi_coxeter;
  Partition p = partition_factorizations(g, x, n, budget, oracle);
  r.tuple_count = p.tuple_count;
  r.orbit_count = p.orbits.size();
  r.invariant_count = p.distinct_invariants();
  r.bijection = r.orbit_count == r.invariant_count;
  for (const auto& o : p.orbits) {
    r.invariants_constant = r.invariants_constant && o.invariant_constant && o.product_constant;
    r.shape_found_everywhere = r.shape_found_everywhere && o.lr_shape.has_value();
  }
  r.orbits = std::move(p.orbits);
  return r;
}

/// A member of the orbit of f shaped as duplicated pairs followed by a
/// reduced factorization of the product (the least such member).
inline Factorization lr_normal_form(const CoxeterGroup& g, const Factorization& f, const Budget& budget = Budget{}) {
  HurwitzOrbit o = orbit_of(g, f, budget);
  if (!o.lr_shape)
    throw ShapeNotFound("no pairs-then-reduced member in the orbit of a length-" + std::to_string(f.length()) +
                        " factorization of " + g.serialize(f.product));
  return {*o.lr_shape, f.product};
}

/// All reduced factorizations of x form a single Hurwitz orbit.
inline bool transitivity_on_reduced(const CoxeterGroup& g, const Element& x, const Budget& budget = Budget{}) {
  g.check(x);
  auto n = static_cast<std::size_t>(g.reflection_length(x.id));
  return partition_factorizations(g, x, n, budget).orbits.size() == 1;
}

/// All full factorizations of x of minimum length form a single orbit.
inline bool transitivity_on_min_full(const CoxeterGroup& g, const Element& x, const Budget& budget = Budget{}) {
  g.check(x);
  InvariantOracle oracle(g);
  auto n = static_cast<std::size_t>(full_reflection_length(g, x, budget, &oracle.subgroups()));
  Partition p = partition_factorizations(g, x, n, budget, &oracle);
  std::size_t full = 0;
  for (const auto& o : p.orbits)
    if (o.full) ++full;
  return full == 1;
}

}  // namespace coxeter
