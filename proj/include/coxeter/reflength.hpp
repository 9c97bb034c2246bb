#pragma once

#include <functional>
#include <optional>
#include <unordered_set>
#include <vector>

#include "coxeter/budget.hpp"
#include "coxeter/group.hpp"
#include "coxeter/subgroup.hpp"

namespace coxeter {

using ReflectionTuple = std::vector<ReflectionIndex>;

inline int reflection_length(const CoxeterGroup& g, const Element& x) { return g.reflection_length(x); }

/// Absolute order: u <=_T v iff l(u) + l(u^-1 v) = l(v).
inline bool leq_T(const CoxeterGroup& g, const Element& u, const Element& v) {
  g.check(u);
  g.check(v);
  return g.reflection_length(u.id) + g.reflection_length(g.mul(g.inv(u.id), v.id)) ==
         g.reflection_length(v.id);
}

/// Reflections t with V^t containing V^x, in canonical order.
inline ReflectionTuple reflections_below(const CoxeterGroup& g, ElementId x) {
  const ElementId one[1] = {x};
  const MovedSpace ms = g.moved_space(one);
  ReflectionTuple out;
  for (std::size_t t = 0; t < g.reflection_count(); ++t)
    if (g.moved_space_contains(ms, t)) out.push_back(static_cast<ReflectionIndex>(t));
  return out;
}

/// W_x: the subgroup generated by the reflections whose hyperplanes contain
/// V^x, which is the pointwise stabilizer of V^x.
inline Subgroup parabolic_closure(const CoxeterGroup& g, const Element& x) {
  g.check(x);
  return closure_of_reflections(g, reflections_below(g, x.id));
}

/// H is parabolic iff it equals the reflection subgroup fixing its common
/// fixed space pointwise.
inline bool is_parabolic(const CoxeterGroup& g, const Subgroup& h, const Budget& budget = Budget{}) {
  std::vector<ElementId> gens;
  for (const auto& e : h.generators) gens.push_back(e.id);
  const MovedSpace ms = g.moved_space(gens);
  ReflectionTuple fixing;
  for (std::size_t t = 0; t < g.reflection_count(); ++t)
    if (g.moved_space_contains(ms, t)) fixing.push_back(static_cast<ReflectionIndex>(t));
  // a parabolic subgroup is generated by reflections, so compare reflection sets first
  if (fixing.size() != h.reflections_inside.count()) return false;
  return closure_of_reflections(g, fixing, budget).elements == h.elements;
}

/// Visits every reduced reflection factorization of x in lexicographic
/// order of reflection indices. The visitor returns false to stop early.
inline void for_each_reduced_factorization(const CoxeterGroup& g, ElementId x,
                                           const std::function<bool(const ReflectionTuple&)>& visit,
                                           const Budget& budget = Budget{}) {
  ReflectionTuple prefix;
  std::size_t visited = 0;
  std::function<bool(ElementId)> rec = [&](ElementId rest) -> bool {
    const int k = g.reflection_length(rest);
    if (k == 0) {
      budget.charge_tuples(++visited);
      return visit(prefix);
    }
    for (std::size_t t = 0; t < g.reflection_count(); ++t) {
      ElementId next = g.reflection_mul(t, rest);
      if (g.reflection_length(next) != k - 1) continue;
      prefix.push_back(static_cast<ReflectionIndex>(t));
      bool go = rec(next);
      prefix.pop_back();
      if (!go) return false;
    }
    return true;
  };
  rec(x);
}

inline std::vector<ReflectionTuple> reduced_factorizations(const CoxeterGroup& g, const Element& x,
                                                           const Budget& budget = Budget{}) {
  g.check(x);
  std::vector<ReflectionTuple> out;
  for_each_reduced_factorization(
      g, x.id,
      [&](const ReflectionTuple& f) {
        out.push_back(f);
        return true;
      },
      budget);
  return out;
}

struct PqcVerdict {
  Element subject;
  bool is_quasi_coxeter = false;
  bool is_parabolic_quasi_coxeter = false;
  Subgroup parabolic_closure;
  ReflectionTuple witness;
  /// Set in strict mode: every reduced factorization agrees with the witness
  /// verdict (all generate W_g for pqC elements; none generates a parabolic
  /// subgroup otherwise).
  std::optional<bool> strict_consistent;
};

/// Classifies x using one reduced factorization as witness; every reduced
/// factorization of a pqC element generates W_x, so one suffices. Strict
/// mode re-checks the definition on all reduced factorizations.
inline PqcVerdict classify_pqc(const CoxeterGroup& g, const Element& x, bool strict = false,
                               const Budget& budget = Budget{}) {
  g.check(x);
  PqcVerdict v;
  v.subject = x;
  for_each_reduced_factorization(
      g, x.id,
      [&](const ReflectionTuple& f) {
        v.witness = f;
        return false;
      },
      budget);
  v.parabolic_closure = parabolic_closure(g, x);
  const Subgroup h = closure_of_reflections(g, v.witness, budget);
  v.is_parabolic_quasi_coxeter = h == v.parabolic_closure && is_parabolic(g, h, budget);
  v.is_quasi_coxeter = h.order() == g.order();
  if (strict) {
    bool consistent = true;
    for_each_reduced_factorization(
        g, x.id,
        [&](const ReflectionTuple& f) {
          const Subgroup hf = closure_of_reflections(g, f, budget);
          bool generates_parabolic = is_parabolic(g, hf, budget);
          if (v.is_parabolic_quasi_coxeter) {
            if (!(hf == v.parabolic_closure)) consistent = false;
          } else if (generates_parabolic) {
            consistent = false;
          }
          return consistent;
        },
        budget);
    v.strict_consistent = consistent;
  }
  return v;
}

/// Least N admitting a reflection factorization of x of length N whose
/// factors generate W. Depth-first search over the first factor with two
/// prunings: the remaining quotient must have reflection length at most the
/// remaining slots with the same parity (every reflection has determinant
/// -1, so lengths of factorizations of x all have the parity of l(x)), and
/// the subgroup generated so far plus the remaining slots must be able to
/// reach full rank. Failed (quotient, subgroup, slots) states are memoized.
inline int full_reflection_length(const CoxeterGroup& g, const Element& x, const Budget& budget = Budget{},
                                  ReflectionSubgroups* cache = nullptr) {
  g.check(x);
  std::optional<ReflectionSubgroups> local;
  if (!cache) cache = &local.emplace(g);
  const int n = static_cast<int>(g.rank());
  const int k = g.reflection_length(x.id);
  std::unordered_set<std::uint64_t> failed;
  std::size_t nodes = 0;

  std::function<bool(ElementId, ReflectionSubgroups::Id, int)> search =
      [&](ElementId rest, ReflectionSubgroups::Id h, int slots) -> bool {
    if (slots == 0) return rest == g.identity_id() && cache->is_whole(h);
    const int l = g.reflection_length(rest);
    if (l > slots || (slots - l) % 2 != 0) return false;
    if (cache->rank(h) + slots < n) return false;
    const std::uint64_t key = (std::uint64_t{rest} << 32) ^ (std::uint64_t{h} << 8) ^ std::uint64_t(slots);
    if (failed.count(key)) return false;
    if ((++nodes & 0xfff) == 0) {
      budget.charge_tuples(nodes);
      budget.check_time();
    }
    for (std::size_t t = 0; t < g.reflection_count(); ++t)
      if (search(g.reflection_mul(t, rest), cache->join(h, t), slots - 1)) return true;
    failed.insert(key);
    return false;
  };

  // a reduced factorization followed by t t for each simple reflection is
  // always full, so the search terminates by k + 2n
  for (int len = k; len <= k + 2 * n; len += 2) {
    failed.clear();
    if (search(x.id, cache->trivial(), len)) return len;
  }
  throw std::logic_error("no full factorization found within k + 2n");
}

/// For n reflections generating W, reports whether their product is
/// quasi-Coxeter.
inline bool product_of_genset_is_qc(const CoxeterGroup& g, const ReflectionTuple& tuple) {
  if (tuple.size() != g.rank())
    throw WrongArity("expected " + std::to_string(g.rank()) + " reflections, got " +
                     std::to_string(tuple.size()));
  if (!reflections_generate(g, tuple)) throw NotGenerating("reflections do not generate the group");
  ElementId w = g.identity_id();
  for (auto t : tuple) w = g.mul_reflection(w, t);
  return classify_pqc(g, g.element(w)).is_quasi_coxeter;
}

/// mask[id] != 0 iff the element is quasi-Coxeter.
inline std::vector<char> quasi_coxeter_mask(const CoxeterGroup& g, const Budget& budget = Budget{}) {
  std::vector<char> mask(g.order(), 0);
  for (ElementId w = 0; w < g.order(); ++w) {
    if (g.reflection_length(w) != static_cast<int>(g.rank())) continue;
    mask[w] = classify_pqc(g, g.element(w), false, budget).is_quasi_coxeter ? 1 : 0;
  }
  return mask;
}

/// Some quasi-Coxeter w satisfies x <=_T w.
inline bool below_quasi_coxeter(const CoxeterGroup& g, const Element& x, const std::vector<char>& qc_mask) {
  g.check(x);
  for (ElementId w = 0; w < g.order(); ++w)
    if (qc_mask[w] && leq_T(g, x, g.element(w))) return true;
  return false;
}

/// Cayley-graph distances from the identity over T (breadth-first search).
/// Independent of the fixed-space computation of reflection lengths.
inline std::vector<int> cayley_distances(const CoxeterGroup& g) {
  std::vector<int> dist(g.order(), -1);
  std::vector<ElementId> queue{g.identity_id()};
  dist[g.identity_id()] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t t = 0; t < g.reflection_count(); ++t) {
      ElementId y = g.mul(queue[q], g.reflection_id(t));
      if (dist[y] < 0) {
        dist[y] = dist[queue[q]] + 1;
        queue.push_back(y);
      }
    }
  return dist;
}

}  // namespace coxeter
