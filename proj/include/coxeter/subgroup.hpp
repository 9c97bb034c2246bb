#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coxeter/budget.hpp"
#include "coxeter/group.hpp"

namespace coxeter {

/// Bitset over the reflections of a group.
class ReflectionSet {
 public:
  ReflectionSet() = default;
  explicit ReflectionSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t universe() const { return size_; }
  void insert(std::size_t t) { words_[t >> 6] |= std::uint64_t{1} << (t & 63); }
  bool contains(std::size_t t) const { return (words_[t >> 6] >> (t & 63)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool full() const { return count() == size_; }

  std::vector<ReflectionIndex> members() const {
    std::vector<ReflectionIndex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<ReflectionIndex>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto w : words_) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }

  friend bool operator==(const ReflectionSet&, const ReflectionSet&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ReflectionSetHash {
  std::size_t operator()(const ReflectionSet& s) const { return s.hash(); }
};

/// T ∩ <X> for a set X of reflections: the closure of X under mutual
/// conjugation. A subgroup generated by reflections is determined by its
/// reflections, so this is an exact fingerprint for reflection subgroups.
inline ReflectionSet reflection_closure(const CoxeterGroup& g, std::span<const ReflectionIndex> gens) {
  ReflectionSet set(g.reflection_count());
  std::vector<ReflectionIndex> members;
  auto add = [&](ReflectionIndex t) {
    if (set.contains(t)) return;
    set.insert(t);
    members.push_back(t);
  };
  for (auto t : gens) add(t);
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      add(g.conj_reflection(members[i], members[j]));
      add(g.conj_reflection(members[j], members[i]));
    }
  }
  return set;
}

/// Generation test through reflection closure: <X> = W iff T ∩ <X> = T.
inline bool reflections_generate(const CoxeterGroup& g, std::span<const ReflectionIndex> gens) {
  return reflection_closure(g, gens).full();
}

/// Canonical subgroup key: order plus two independent 64-bit digests of the
/// sorted canonical serializations of the elements.
struct SubgroupKey {
  std::size_t order = 0;
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;

  std::string hex() const {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(h1),
                  static_cast<unsigned long long>(h2));
    return std::to_string(order) + ":" + buf;
  }
  friend bool operator==(const SubgroupKey&, const SubgroupKey&) = default;
  friend auto operator<=>(const SubgroupKey&, const SubgroupKey&) = default;
};

struct Subgroup {
  std::vector<Element> generators;
  std::vector<ElementId> elements;  // ascending, i.e. canonical order
  ReflectionSet reflections_inside;
  SubgroupKey key;

  std::size_t order() const { return elements.size(); }
  bool contains(ElementId g) const { return std::binary_search(elements.begin(), elements.end(), g); }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }
};

inline SubgroupKey canonical_key(const CoxeterGroup& g, std::span<const ElementId> sorted_elements) {
  SubgroupKey k;
  k.order = sorted_elements.size();
  std::uint64_t h1 = 1469598103934665603ULL, h2 = 0x243f6a8885a308d3ULL;
  for (ElementId e : sorted_elements) {
    std::uint64_t f = g.fingerprint(e);
    for (int b = 0; b < 8; ++b) {
      h1 ^= (f >> (8 * b)) & 0xff;
      h1 *= 1099511628211ULL;
    }
    h2 += f * 0x9e3779b97f4a7c15ULL;
    h2 ^= h2 >> 31;
    h2 *= 0xbf58476d1ce4e5b9ULL;
  }
  k.h1 = h1;
  k.h2 = h2;
  return k;
}

inline SubgroupKey canonical_key(const CoxeterGroup& g, const Subgroup& h) {
  return canonical_key(g, h.elements);
}

/// Breadth-first closure of a generating set.
inline Subgroup closure(const CoxeterGroup& g, std::span<const Element> gens,
                        const Budget& budget = Budget{}) {
  Subgroup h;
  h.generators.assign(gens.begin(), gens.end());
  std::vector<ElementId> gen_ids;
  std::vector<ReflectionIndex> gen_refl;
  bool all_reflections = true;
  for (const auto& e : gens) {
    g.check(e);
    gen_ids.push_back(e.id);
    if (auto t = g.reflection_index_of(e.id)) gen_refl.push_back(*t);
    else all_reflections = false;
  }
  std::vector<char> seen(g.order(), 0);
  std::vector<ElementId>& out = h.elements;
  out.push_back(g.identity_id());
  seen[g.identity_id()] = 1;
  for (std::size_t q = 0; q < out.size(); ++q) {
    for (std::size_t i = 0; i < gen_ids.size(); ++i) {
      ElementId x = all_reflections ? g.mul_reflection(out[q], gen_refl[i]) : g.mul(out[q], gen_ids[i]);
      if (seen[x]) continue;
      seen[x] = 1;
      out.push_back(x);
    }
    if (out.size() > budget.max_elements) budget.charge_elements(out.size());
  }
  std::sort(out.begin(), out.end());
  h.reflections_inside = ReflectionSet(g.reflection_count());
  for (std::size_t t = 0; t < g.reflection_count(); ++t)
    if (seen[g.reflection_id(t)]) h.reflections_inside.insert(t);
  h.key = canonical_key(g, out);
  return h;
}

inline Subgroup closure_of_reflections(const CoxeterGroup& g, std::span<const ReflectionIndex> refl,
                                       const Budget& budget = Budget{}) {
  std::vector<Element> gens;
  for (auto t : refl) gens.push_back(g.reflection(t));
  return closure(g, gens, budget);
}

inline Subgroup whole_group(const CoxeterGroup& g) {
  std::vector<Element> gens;
  for (auto t : g.simple_reflections()) gens.push_back(g.reflection(t));
  return closure(g, gens);
}

/// Orbit of h under conjugation by the generators of H.
inline std::vector<ElementId> conjugacy_class(const CoxeterGroup& g, const Element& h, const Subgroup& sub) {
  g.check(h);
  if (!sub.contains(h.id)) throw NotInSubgroup("element " + g.serialize(h.id) + " is not in the subgroup");
  std::vector<ElementId> orbit{h.id};
  std::vector<char> seen(g.order(), 0);
  seen[h.id] = 1;
  for (std::size_t q = 0; q < orbit.size(); ++q)
    for (const auto& s : sub.generators) {
      ElementId x = g.mul(g.mul(s.id, orbit[q]), g.inv(s.id));
      if (!seen[x]) {
        seen[x] = 1;
        orbit.push_back(x);
      }
    }
  std::sort(orbit.begin(), orbit.end());
  return orbit;
}

/// Interns reflection subgroups (by their reflection sets) and memoizes the
/// operations the search engines need: adding a reflection, the rank of the
/// subgroup, and H-conjugacy class labels of reflections. Not thread-safe;
/// use one instance per worker.
class ReflectionSubgroups {
 public:
  using Id = std::uint32_t;

  explicit ReflectionSubgroups(const CoxeterGroup& g) : g_(&g) {
    trivial_ = intern(ReflectionSet(g.reflection_count()));
  }

  const CoxeterGroup& group() const { return *g_; }
  Id trivial() const { return trivial_; }
  std::size_t size() const { return sets_.size(); }

  Id intern(const ReflectionSet& s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    Id id = static_cast<Id>(sets_.size());
    sets_.push_back(s);
    ids_.emplace(s, id);
    ranks_.push_back(-1);
    return id;
  }

  const ReflectionSet& reflections(Id h) const { return sets_[h]; }
  bool is_whole(Id h) const { return sets_[h].full(); }

  Id join(Id h, std::size_t t) {
    if (sets_[h].contains(t)) return h;
    std::uint64_t key = (std::uint64_t{h} << 16) | t;
    auto it = joins_.find(key);
    if (it != joins_.end()) return it->second;
    auto gens = sets_[h].members();
    gens.push_back(static_cast<ReflectionIndex>(t));
    Id r = intern(reflection_closure(*g_, gens));
    joins_.emplace(key, r);
    return r;
  }

  Id generated_by(std::span<const ReflectionIndex> refl) {
    Id h = trivial_;
    for (auto t : refl) h = join(h, t);
    return h;
  }

  /// Rank of the reflection subgroup: dimension of the span of its roots.
  int rank(Id h) {
    if (ranks_[h] < 0) {
      std::vector<ElementId> elems;
      for (auto t : sets_[h].members()) elems.push_back(g_->reflection_id(t));
      ranks_[h] = static_cast<int>(g_->moved_space(elems).dimension());
    }
    return ranks_[h];
  }

  /// Label of the H-conjugacy class of reflection t in H: the least element
  /// id (canonical order) among the class members.
  ElementId class_label(Id h, std::size_t t) {
    std::uint64_t key = (std::uint64_t{h} << 16) | t;
    auto it = labels_.find(key);
    if (it != labels_.end()) return it->second;
    const auto hs = sets_[h].members();
    std::vector<ReflectionIndex> orbit{static_cast<ReflectionIndex>(t)};
    ReflectionSet seen(g_->reflection_count());
    seen.insert(t);
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (auto s : hs) {
        auto x = g_->conj_reflection(orbit[q], s);
        if (!seen.contains(x)) {
          seen.insert(x);
          orbit.push_back(x);
        }
      }
    ElementId best = g_->reflection_id(orbit[0]);
    for (auto x : orbit) best = std::min(best, g_->reflection_id(x));
    for (auto x : orbit) labels_.emplace((std::uint64_t{h} << 16) | x, best);
    return best;
  }

 private:
  const CoxeterGroup* g_;
  Id trivial_ = 0;
  std::vector<ReflectionSet> sets_;
  std::unordered_map<ReflectionSet, Id, ReflectionSetHash> ids_;
  std::unordered_map<std::uint64_t, Id> joins_;
  std::unordered_map<std::uint64_t, ElementId> labels_;
  std::vector<int> ranks_;
};

}  // namespace coxeter
