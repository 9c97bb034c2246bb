#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "coxeter/budget.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/group.hpp"
#include "coxeter/reflength.hpp"
#include "coxeter/subgroup.hpp"

namespace coxeter {

// ---------------------------------------------------------------------------
// combinatorics

/// Visits the k-subsets of {0..n-1} in lexicographic order; the visitor
/// returns false to stop.
inline void for_each_combination(std::size_t n, std::size_t k,
                                 const std::function<bool(std::span<const std::size_t>)>& visit) {
  if (k > n) return;
  std::vector<std::size_t> c(k);
  std::iota(c.begin(), c.end(), std::size_t{0});
  while (true) {
    if (!visit(c)) return;
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// True when the sorted reflection set is the lexicographically least among
/// its W-conjugates.
inline bool is_conjugation_canonical(const CoxeterGroup& g, std::span<const ReflectionIndex> sorted) {
  std::vector<ReflectionIndex> image(sorted.size());
  for (ElementId w = 0; w < g.order(); ++w) {
    for (std::size_t i = 0; i < sorted.size(); ++i) image[i] = g.conj_reflection_by(w, sorted[i]);
    std::sort(image.begin(), image.end());
    if (std::lexicographical_compare(image.begin(), image.end(), sorted.begin(), sorted.end())) return false;
  }
  return true;
}

/// Label of the W-conjugacy class of each reflection (least reflection
/// index in the class).
inline std::vector<ReflectionIndex> reflection_class_labels(const CoxeterGroup& g) {
  const std::size_t nt = g.reflection_count();
  std::vector<ReflectionIndex> label(nt, 0xFFFF);
  for (std::size_t t = 0; t < nt; ++t) {
    if (label[t] != 0xFFFF) continue;
    std::vector<ReflectionIndex> orbit{static_cast<ReflectionIndex>(t)};
    label[t] = static_cast<ReflectionIndex>(t);
    for (std::size_t q = 0; q < orbit.size(); ++q)
      for (auto s : g.simple_reflections()) {
        auto x = g.conj_reflection(orbit[q], s);
        if (label[x] == 0xFFFF) {
          label[x] = static_cast<ReflectionIndex>(t);
          orbit.push_back(x);
        }
      }
  }
  return label;
}

// ---------------------------------------------------------------------------
// generating-set analysis

struct GenSetReport {
  ReflectionTuple input;
  bool generates_W = false;
  bool is_minimal = false;
  bool contains_minimum = false;
  std::optional<ReflectionTuple> minimum_witness;  // an n-subset generating W
  ReflectionTuple shrink_chain;                    // removals leading to a minimal generating subset
  /// Orders of the subgroups generated by each subset omitting one element,
  /// in the order of the omitted element.
  std::vector<std::size_t> drop_one_orders;
};

inline GenSetReport analyze_genset(const CoxeterGroup& g, ReflectionTuple x, const Budget& budget = Budget{}) {
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  GenSetReport r;
  r.input = x;
  r.generates_W = closure_of_reflections(g, x, budget).order() == g.order();
  bool some_drop_generates = false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    ReflectionTuple y;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (j != i) y.push_back(x[j]);
    std::size_t ord = closure_of_reflections(g, y, budget).order();
    r.drop_one_orders.push_back(ord);
    if (ord == g.order()) some_drop_generates = true;
  }
  r.is_minimal = r.generates_W && !some_drop_generates;
  if (!r.generates_W) return r;

  const std::size_t n = g.rank();
  for_each_combination(x.size(), n, [&](std::span<const std::size_t> c) {
    ReflectionTuple y;
    for (auto i : c) y.push_back(x[i]);
    if (reflections_generate(g, y) && closure_of_reflections(g, y, budget).order() == g.order()) {
      r.minimum_witness = y;
      return false;
    }
    return true;
  });
  r.contains_minimum = r.minimum_witness.has_value();

  ReflectionTuple current = x;
  bool shrunk = true;
  while (shrunk) {
    shrunk = false;
    for (std::size_t i = 0; i < current.size(); ++i) {
      ReflectionTuple y = current;
      y.erase(y.begin() + static_cast<std::ptrdiff_t>(i));
      if (reflections_generate(g, y)) {
        r.shrink_chain.push_back(current[i]);
        current = std::move(y);
        shrunk = true;
        break;
      }
    }
  }
  return r;
}

struct MinEqualsMinResult {
  bool verdict = true;
  std::size_t checked = 0;  // generating (n+1)-subsets examined
  std::vector<ReflectionTuple> counterexamples;
};

namespace detail {

inline void sweep_rank_plus_one(const CoxeterGroup& g, std::span<const ReflectionIndex> universe, std::size_t r,
                                const ReflectionSet& target, bool conj_reduce, const Budget& budget,
                                MinEqualsMinResult& out) {
  budget.charge_tuples(static_cast<std::size_t>(binomial(universe.size(), r + 1)));
  for_each_combination(universe.size(), r + 1, [&](std::span<const std::size_t> c) {
    ReflectionTuple s;
    for (auto i : c) s.push_back(universe[i]);
    if (conj_reduce && !is_conjugation_canonical(g, s)) return true;
    if (!(reflection_closure(g, s) == target)) return true;
    ++out.checked;
    bool has_smaller = false;
    for (std::size_t drop = 0; drop < s.size() && !has_smaller; ++drop) {
      ReflectionTuple y;
      for (std::size_t j = 0; j < s.size(); ++j)
        if (j != drop) y.push_back(s[j]);
      has_smaller = reflection_closure(g, y) == target;
    }
    if (!has_smaller) {
      out.verdict = false;
      out.counterexamples.push_back(s);
    }
    if ((out.checked & 0x3ff) == 0) budget.check_time();
    return true;
  });
}

}  // namespace detail

/// Every generating set of rank+1 reflections contains a generating subset
/// of rank reflections. Checking size rank+1 suffices once every reflection
/// subgroup is swept; `subgroup_sweep` also runs the check inside every
/// reflection subgroup (with W-conjugacy reduction disabled there).
inline MinEqualsMinResult check_min_equals_min(const CoxeterGroup& g, bool conj_reduce = true,
                                               bool subgroup_sweep = false, const Budget& budget = Budget{}) {
  MinEqualsMinResult out;
  ReflectionTuple all(g.reflection_count());
  std::iota(all.begin(), all.end(), ReflectionIndex{0});
  ReflectionSet whole(g.reflection_count());
  for (auto t : all) whole.insert(t);
  detail::sweep_rank_plus_one(g, all, g.rank(), whole, conj_reduce, budget, out);
  if (!subgroup_sweep) return out;

  ReflectionSubgroups lattice(g);
  std::vector<ReflectionSubgroups::Id> queue{lattice.trivial()};
  std::set<ReflectionSubgroups::Id> seen{lattice.trivial()};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t t = 0; t < g.reflection_count(); ++t) {
      auto h = lattice.join(queue[q], t);
      if (seen.insert(h).second) queue.push_back(h);
    }
  for (auto h : queue) {
    if (lattice.is_whole(h) || h == lattice.trivial()) continue;
    auto members = lattice.reflections(h).members();
    detail::sweep_rank_plus_one(g, members, static_cast<std::size_t>(lattice.rank(h)), lattice.reflections(h),
                                false, budget, out);
  }
  return out;
}

/// The classification: irreducible factors are non-dihedral or I2(m) with m
/// having at most two distinct prime factors.
inline bool predicted_min_equals_min(const CoxeterDatum& d) {
  for (const auto& f : d.factors) {
    if (!f.is_dihedral()) continue;
    int m = f.m, primes = 0;
    for (int p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      ++primes;
      while (m % p == 0) m /= p;
    }
    if (m > 1) ++primes;
    if (primes >= 3) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// dihedral machinery

/// Angles (in units of pi/m) between roots chosen for three distinct
/// reflections of I2(m) so that the three roots are not in a half-plane;
/// the angles then sum to 2m.
struct DihedralTriple {
  int m = 0;
  int a12 = 0, a13 = 0, a23 = 0;
  friend bool operator==(const DihedralTriple&, const DihedralTriple&) = default;
};

inline int mod(int a, int m) { return ((a % m) + m) % m; }

/// Triple for the reflections across the lines at angles k*pi/m, l*pi/m,
/// p*pi/m (indices taken mod m).
inline DihedralTriple dihedral_triple_of(int m, int k, int l, int p) {
  k = mod(k, m);
  l = mod(l, m);
  p = mod(p, m);
  if (k == l || k == p || l == p) throw NotDistinct("dihedral reflections must be distinct");
  // root directions in units of pi/m on a circle of length 2m; fix the first
  // and choose signs for the others so every cyclic gap is below m
  const int d1 = k;
  for (int s2 = 0; s2 < 2; ++s2)
    for (int s3 = 0; s3 < 2; ++s3) {
      const int d2 = l + s2 * m, d3 = p + s3 * m;
      auto gap = [&](int from, int to) { return mod(to - from, 2 * m); };
      // going counterclockwise from d1, find the order of the other two
      int g12 = gap(d1, d2), g13 = gap(d1, d3);
      int a12, a13, a23;
      if (g12 < g13) {
        a12 = g12;
        a23 = g13 - g12;
        a13 = 2 * m - g13;
      } else {
        a13 = g13;
        a23 = g12 - g13;
        a12 = 2 * m - g12;
      }
      if (a12 < m && a13 < m && a23 < m) return {m, a12, a13, a23};
    }
  throw std::logic_error("no admissible root choice");
}

/// Overload for reflections of a group whose only factor is I2(m).
inline DihedralTriple dihedral_triple_of(const CoxeterGroup& g, std::size_t r1, std::size_t r2, std::size_t r3) {
  const auto& d = g.datum();
  if (d.factors.size() != 1 || !d.factors[0].is_dihedral()) throw TypeMismatch("group is not I2(m)");
  return dihedral_triple_of(d.factors[0].m, static_cast<int>(r1), static_cast<int>(r2), static_cast<int>(r3));
}

/// Line indices (mod m) of three reflections realizing the triple, with the
/// first root at direction 0 and the others placed counterclockwise.
inline std::array<int, 3> dihedral_reflections_of(const DihedralTriple& t) {
  return {0, mod(t.a12, t.m), mod(t.a12 + t.a23, t.m)};
}

inline bool dihedral_pair_generates(int a, int m) { return std::gcd(a, m) == 1; }

/// The three reflections generate I2(m) iff gcd(A12, A13, A23, m) = 1.
inline bool dihedral_generates(const DihedralTriple& t) {
  return std::gcd(std::gcd(t.a12, t.a13), std::gcd(t.a23, t.m)) == 1;
}

namespace detail {

// x with x = r1 (mod n1), x = r2 (mod n2) for coprime n1, n2; result mod n1*n2
inline long crt2(long r1, long n1, long r2, long n2) {
  // extended Euclid for the inverse of n1 modulo n2
  long old_r = n1 % n2, r = n2, old_s = 1, s = 0;
  while (r != 0) {
    long q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  const long inv = ((old_s % n2) + n2) % n2;
  const long n = n1 * n2;
  long x = r1 + n1 * ((((r2 - r1) % n2 + n2) % n2) * inv % n2);
  return ((x % n) + n) % n;
}

}  // namespace detail

/// For m = p q r with p, q, r > 1 pairwise coprime: a triple in which no
/// pair of reflections generates I2(m) but the three together do.
inline DihedralTriple crt_construct(int m, int p, int q, int r) {
  if (p <= 1 || q <= 1 || r <= 1 || static_cast<long>(p) * q * r != m || std::gcd(p, q) != 1 ||
      std::gcd(p, r) != 1 || std::gcd(q, r) != 1)
    throw BadFactorization("need m = p*q*r with p, q, r > 1 pairwise coprime");
  // a = 0 (p), 1 (q), 1 (r);  b = 1 (p), 0 (q), -1 (r)
  const long a = detail::crt2(detail::crt2(0, p, 1, q), static_cast<long>(p) * q, 1, r);
  const long b = detail::crt2(detail::crt2(1, p, 0, q), static_cast<long>(p) * q, r - 1, r);
  DihedralTriple t{m, 0, 0, 0};
  if (a + b > m) {
    t.a12 = static_cast<int>(a);
    t.a13 = static_cast<int>(b);
    t.a23 = static_cast<int>(2 * m - a - b);
  } else {
    t.a12 = static_cast<int>(m - a);
    t.a13 = static_cast<int>(m - b);
    t.a23 = static_cast<int>(a + b);
  }
  return t;
}

/// Ordered factorizations m = p q r into pairwise coprime factors > 1.
inline std::vector<std::array<int, 3>> coprime_factorizations(int m) {
  std::vector<std::array<int, 3>> out;
  for (int p = 2; p <= m; ++p) {
    if (m % p) continue;
    for (int q = 2; q <= m / p; ++q) {
      if ((m / p) % q) continue;
      int r = m / p / q;
      if (r > 1 && std::gcd(p, q) == 1 && std::gcd(p, r) == 1 && std::gcd(q, r) == 1) out.push_back({p, q, r});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// signed graphs for types A, B, D

enum class GraphType { A, B, D };

/// Vertices 0..n-1. A loop (u == v) is the diagonal reflection in e_u; an
/// edge with sign +1 is the reflection in e_u - e_v and sign -1 is e_u + e_v.
struct SignedEdge {
  int u = 0, v = 0;
  int sign = 1;
  bool is_loop() const { return u == v; }
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

struct SignedGraph {
  int vertices = 0;
  std::vector<SignedEdge> edges;
  std::size_t loops() const {
    return static_cast<std::size_t>(std::count_if(edges.begin(), edges.end(), [](auto& e) { return e.is_loop(); }));
  }
};

namespace detail {

inline void require_graph_type(const CoxeterGroup& g, GraphType type) {
  const auto& d = g.datum();
  Family want = type == GraphType::A ? Family::A : type == GraphType::B ? Family::B : Family::D;
  if (d.factors.size() != 1 || d.factors[0].family != want)
    throw TypeMismatch("group " + d.name() + " does not match the signed-graph type");
}

inline int graph_vertices(const CoxeterGroup& g, GraphType type) {
  return static_cast<int>(g.rank()) + (type == GraphType::A ? 1 : 0);
}

inline SignedEdge edge_of_root(const Vector& v) {
  std::vector<std::pair<int, int>> nz;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) nz.emplace_back(static_cast<int>(i), v[i].sign());
  if (nz.size() == 1) return {nz[0].first, nz[0].first, -1};
  if (nz.size() != 2) throw TypeMismatch("root is not of signed-graph form");
  return {nz[0].first, nz[1].first, nz[0].second == nz[1].second ? -1 : 1};
}

}  // namespace detail

inline SignedGraph signed_graph_of(const CoxeterGroup& g, std::span<const ReflectionIndex> x, GraphType type) {
  detail::require_graph_type(g, type);
  SignedGraph gr;
  gr.vertices = detail::graph_vertices(g, type);
  for (auto t : x) gr.edges.push_back(detail::edge_of_root(g.root_vector(g.reflection_root(t))));
  std::sort(gr.edges.begin(), gr.edges.end());
  return gr;
}

/// Inverse of signed_graph_of.
inline ReflectionTuple reflections_of_graph(const CoxeterGroup& g, const SignedGraph& gr, GraphType type) {
  detail::require_graph_type(g, type);
  ReflectionTuple out;
  for (const auto& e : gr.edges) {
    bool found = false;
    for (std::size_t t = 0; t < g.reflection_count() && !found; ++t) {
      SignedEdge f = detail::edge_of_root(g.root_vector(g.reflection_root(t)));
      SignedEdge e2 = e;
      if (e2.u > e2.v) std::swap(e2.u, e2.v);
      if (f.is_loop()) f.sign = e2.sign;
      if (f == e2) {
        out.push_back(static_cast<ReflectionIndex>(t));
        found = true;
      }
    }
    if (!found) throw TypeMismatch("edge has no reflection in this group");
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

struct Balance {
  bool connected = false;
  std::optional<std::vector<std::size_t>> negative_cycle;  // edge indices
};

// BFS spanning forest with switching potentials; an edge violating the
// potentials closes a negative cycle (odd number of negative edges).
inline Balance analyze_balance(const SignedGraph& gr) {
  const int n = gr.vertices;
  std::vector<std::vector<std::size_t>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < gr.edges.size(); ++i) {
    const auto& e = gr.edges[i];
    if (e.is_loop()) continue;
    adj[static_cast<std::size_t>(e.u)].push_back(i);
    adj[static_cast<std::size_t>(e.v)].push_back(i);
  }
  std::vector<int> pot(static_cast<std::size_t>(n), 0), depth(static_cast<std::size_t>(n), -1);
  std::vector<std::ptrdiff_t> parent_edge(static_cast<std::size_t>(n), -1);
  Balance b;
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (depth[static_cast<std::size_t>(s)] >= 0) continue;
    ++components;
    depth[static_cast<std::size_t>(s)] = 0;
    pot[static_cast<std::size_t>(s)] = 1;
    std::vector<int> queue{s};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      int u = queue[q];
      for (auto ei : adj[static_cast<std::size_t>(u)]) {
        const auto& e = gr.edges[ei];
        int w = e.u == u ? e.v : e.u;
        auto wu = static_cast<std::size_t>(w), uu = static_cast<std::size_t>(u);
        if (depth[wu] < 0) {
          depth[wu] = depth[uu] + 1;
          pot[wu] = pot[uu] * e.sign;
          parent_edge[wu] = static_cast<std::ptrdiff_t>(ei);
          queue.push_back(w);
        } else if (!b.negative_cycle && pot[wu] != pot[uu] * e.sign) {
          // tree paths to the common ancestor plus this edge
          std::vector<std::size_t> cyc{ei};
          int x = u, y = w;
          while (x != y) {
            if (depth[static_cast<std::size_t>(x)] >= depth[static_cast<std::size_t>(y)]) {
              auto pe = static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(x)]);
              cyc.push_back(pe);
              x = gr.edges[pe].u == x ? gr.edges[pe].v : gr.edges[pe].u;
            } else {
              auto pe = static_cast<std::size_t>(parent_edge[static_cast<std::size_t>(y)]);
              cyc.push_back(pe);
              y = gr.edges[pe].u == y ? gr.edges[pe].v : gr.edges[pe].u;
            }
          }
          b.negative_cycle = std::move(cyc);
        }
      }
    }
  }
  b.connected = components == 1;
  return b;
}

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

}  // namespace detail

/// A: connected. B: connected with a loop. D: connected with a negative
/// cycle (and no loops).
inline bool graph_generation_test(const SignedGraph& gr, GraphType type) {
  if (type == GraphType::D && gr.loops() > 0) throw TypeMismatch("type D graphs have no loops");
  if (type == GraphType::A && gr.loops() > 0) throw TypeMismatch("type A graphs have no loops");
  auto b = detail::analyze_balance(gr);
  switch (type) {
    case GraphType::A: return b.connected;
    case GraphType::B: return b.connected && gr.loops() > 0;
    case GraphType::D: return b.connected && b.negative_cycle.has_value();
  }
  return false;
}

/// A spanning tree (A), a spanning tree plus one loop (B), or a unicycle on
/// a negative cycle (D).
inline SignedGraph extract_minimum_subset(const SignedGraph& gr, GraphType type) {
  if (!graph_generation_test(gr, type)) throw NotGenerating("graph does not correspond to a generating set");
  SignedGraph out;
  out.vertices = gr.vertices;
  detail::DisjointSets dsu(gr.vertices);
  if (type == GraphType::D) {
    auto b = detail::analyze_balance(gr);
    for (auto ei : *b.negative_cycle) {
      out.edges.push_back(gr.edges[ei]);
      dsu.unite(gr.edges[ei].u, gr.edges[ei].v);
    }
  }
  if (type == GraphType::B) {
    for (const auto& e : gr.edges)
      if (e.is_loop()) {
        out.edges.push_back(e);
        break;
      }
  }
  for (const auto& e : gr.edges)
    if (!e.is_loop() && dsu.unite(e.u, e.v)) out.edges.push_back(e);
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

// ---------------------------------------------------------------------------
// conjugacy classes of size-n generating sets

struct ClassMultisetResult {
  bool verdict = true;
  std::size_t checked = 0;  // generating n-subsets examined
  std::vector<std::vector<ReflectionIndex>> multisets;  // distinct multisets of class labels
};

/// All generating sets of n = rank reflections carry the same multiset of
/// W-conjugacy classes.
inline ClassMultisetResult genset_class_multiset_invariance(const CoxeterGroup& g, bool conj_reduce = true,
                                                            const Budget& budget = Budget{}) {
  ClassMultisetResult out;
  const auto labels = reflection_class_labels(g);
  std::set<std::vector<ReflectionIndex>> seen;
  budget.charge_tuples(static_cast<std::size_t>(binomial(g.reflection_count(), g.rank())));
  for_each_combination(g.reflection_count(), g.rank(), [&](std::span<const std::size_t> c) {
    ReflectionTuple s(c.begin(), c.end());
    if (conj_reduce && !is_conjugation_canonical(g, s)) return true;
    if (!reflections_generate(g, s)) return true;
    ++out.checked;
    std::vector<ReflectionIndex> ms;
    for (auto t : s) ms.push_back(labels[t]);
    std::sort(ms.begin(), ms.end());
    seen.insert(ms);
    if ((out.checked & 0x3ff) == 0) budget.check_time();
    return true;
  });
  out.multisets.assign(seen.begin(), seen.end());
  out.verdict = out.multisets.size() <= 1;
  return out;
}

}  // namespace coxeter
