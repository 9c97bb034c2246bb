#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "coxeter/datum.hpp"
#include "coxeter/linalg.hpp"

namespace coxeter {

using Perm = std::vector<std::uint16_t>;

/// Roots of one irreducible factor, in factor-local indexing.
///
/// Layout: indices [0, P) are the positive roots (the first `rank` of them
/// simple for vector types), and index P + i is the negative of root i.
/// Reflection k is the reflection in positive root k.
///
/// I2(m) is realized combinatorially: root d in Z_{2m} is the unit vector at
/// angle d*pi/m + pi/2, so reflection k is the reflection across the line at
/// angle k*pi/m and the positive roots are d = 0..m-1.
struct ComponentRoots {
  Factor factor;
  std::size_t dim = 0;          // ambient dimension, 0 for dihedral
  std::vector<Vector> vectors;  // empty for dihedral
  std::size_t positive = 0;
  std::vector<std::size_t> simple;  // reflection indices of simple generators
  std::vector<Perm> reflections;    // permutation of local roots, one per positive root

  std::size_t root_count() const { return 2 * positive; }
  std::size_t negation(std::size_t r) const { return r < positive ? r + positive : r - positive; }
  std::size_t positive_of(std::size_t r) const { return r < positive ? r : r - positive; }
  bool is_vector_type() const { return !factor.is_dihedral(); }
};

namespace detail {

inline Rational half(long n) { return make_rational(n, 2); }

inline Vector unit_difference(std::size_t dim, std::size_t i, std::size_t j) {
  Vector v(dim);
  v[i] = Scalar(1);
  v[j] = Scalar(-1);
  return v;
}

/// Simple roots in classical coordinates.
inline std::vector<Vector> simple_roots(const Factor& f, std::size_t& dim) {
  const auto n = static_cast<std::size_t>(f.rank);
  std::vector<Vector> s;
  switch (f.family) {
    case Family::A:
      dim = n + 1;
      for (std::size_t i = 0; i < n; ++i) s.push_back(unit_difference(dim, i, i + 1));
      break;
    case Family::B:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(unit_difference(dim, i, i + 1));
      s.emplace_back(dim);
      s.back()[n - 1] = Scalar(1);
      break;
    case Family::D:
      dim = n;
      for (std::size_t i = 0; i + 1 < n; ++i) s.push_back(unit_difference(dim, i, i + 1));
      s.emplace_back(dim);
      s.back()[n - 2] = Scalar(1);
      s.back()[n - 1] = Scalar(1);
      break;
    case Family::F: {
      dim = 4;
      s.push_back(unit_difference(4, 1, 2));
      s.push_back(unit_difference(4, 2, 3));
      s.emplace_back(4);
      s.back()[3] = Scalar(1);
      s.push_back(Vector{Scalar(half(1)), Scalar(half(-1)), Scalar(half(-1)), Scalar(half(-1))});
      break;
    }
    case Family::E: {
      // Bourbaki labelling in R^8
      dim = 8;
      Vector a1(8);
      a1[0] = Scalar(half(1));
      a1[7] = Scalar(half(1));
      for (std::size_t i = 1; i < 7; ++i) a1[i] = Scalar(half(-1));
      s.push_back(a1);
      Vector a2(8);
      a2[0] = Scalar(1);
      a2[1] = Scalar(1);
      s.push_back(a2);
      for (std::size_t i = 0; i + 2 < n; ++i) s.push_back(unit_difference(8, i + 1, i));
      break;
    }
    case Family::H: {
      // |alpha|^2 = 4, (alpha_i, alpha_j) = -4 cos(pi / m_ij); m = 5, 3, 3
      dim = n;
      const Scalar phi = Scalar::phi();
      const Scalar phi_inv = phi - Scalar(1);
      Vector a1(dim), a2(dim), a3(dim);
      a1[0] = Scalar(2);
      a2[0] = -phi;
      a2[1] = Scalar(1);
      a2[2] = -phi_inv;
      a3[1] = Scalar(-2);
      s = {a1, a2, a3};
      if (n == 4) s.push_back(Vector{Scalar(0), Scalar(1), phi, phi_inv});
      break;
    }
    case Family::I2:
      throw std::logic_error("dihedral factors have no vector realization");
  }
  return s;
}

inline ComponentRoots build_vector_roots(const Factor& f) {
  ComponentRoots c;
  c.factor = f;
  const std::vector<Vector> simple = simple_roots(f, c.dim);
  const std::size_t n = simple.size();

  struct Found {
    Vector v;
    Vector coef;  // coordinates in the simple-root basis
  };
  std::vector<Found> found;
  std::map<Vector, std::size_t, VectorLess> index;
  for (std::size_t i = 0; i < n; ++i) {
    Vector coef(n);
    coef[i] = Scalar(1);
    index.emplace(simple[i], found.size());
    found.push_back({simple[i], coef});
  }
  std::vector<Scalar> norms;
  for (const auto& a : simple) norms.push_back(dot(a, a));
  for (std::size_t q = 0; q < found.size(); ++q) {
    for (std::size_t i = 0; i < n; ++i) {
      Scalar c2 = Scalar(2) * dot(found[q].v, simple[i]) / norms[i];
      if (c2.is_zero()) continue;
      Vector v = found[q].v;
      for (std::size_t k = 0; k < c.dim; ++k)
        if (!simple[i][k].is_zero()) v[k] -= c2 * simple[i][k];
      if (index.count(v)) continue;
      Vector coef = found[q].coef;
      coef[i] -= c2;
      index.emplace(v, found.size());
      found.push_back({std::move(v), std::move(coef)});
      if (found.size() > 1000) throw std::logic_error("root closure diverged");
    }
  }

  auto is_positive = [](const Vector& coef) {
    for (const auto& x : coef) {
      int s = x.sign();
      if (s != 0) return s > 0;
    }
    return false;
  };
  std::vector<std::size_t> pos_order;
  for (std::size_t i = 0; i < found.size(); ++i)
    if (is_positive(found[i].coef)) pos_order.push_back(i);
  c.positive = pos_order.size();
  if (2 * c.positive != found.size()) throw std::logic_error("roots not paired by negation");
  c.vectors.resize(found.size());
  for (std::size_t k = 0; k < c.positive; ++k) {
    const Vector& v = found[pos_order[k]].v;
    Vector neg(v);
    for (auto& x : neg) x = -x;
    c.vectors[k] = v;
    c.vectors[k + c.positive] = std::move(neg);
  }
  for (std::size_t i = 0; i < n; ++i) c.simple.push_back(i);

  std::map<Vector, std::size_t, VectorLess> final_index;
  for (std::size_t r = 0; r < c.vectors.size(); ++r) final_index.emplace(c.vectors[r], r);
  for (std::size_t k = 0; k < c.positive; ++k) {
    Perm p(c.vectors.size());
    for (std::size_t r = 0; r < c.vectors.size(); ++r) {
      auto it = final_index.find(reflect(c.vectors[r], c.vectors[k]));
      if (it == final_index.end()) throw std::logic_error("roots not closed under reflection");
      p[r] = static_cast<std::uint16_t>(it->second);
    }
    c.reflections.push_back(std::move(p));
  }
  return c;
}

inline ComponentRoots build_dihedral_roots(const Factor& f) {
  ComponentRoots c;
  c.factor = f;
  const int m = f.m;
  c.positive = static_cast<std::size_t>(m);
  // reflection across the line at angle k*pi/m sends root d to 2k - d - m
  for (int k = 0; k < m; ++k) {
    Perm p(2 * static_cast<std::size_t>(m));
    for (int d = 0; d < 2 * m; ++d) {
      int img = ((2 * k - d - m) % (2 * m) + 2 * m) % (2 * m);
      p[static_cast<std::size_t>(d)] = static_cast<std::uint16_t>(img);
    }
    c.reflections.push_back(std::move(p));
  }
  // the positive system {0, ..., m-1} has extremal roots 0 and m-1
  c.simple = {0, static_cast<std::size_t>(m - 1)};
  return c;
}

}  // namespace detail

inline ComponentRoots build_component_roots(const Factor& f) {
  return f.is_dihedral() ? detail::build_dihedral_roots(f) : detail::build_vector_roots(f);
}

/// The root system of a (possibly reducible) datum: the disjoint union of the
/// factors' roots, laid out factor by factor.
struct RootSystem {
  CoxeterDatum datum;
  std::vector<ComponentRoots> components;
  std::vector<std::size_t> root_offset;        // per component
  std::vector<std::size_t> reflection_offset;  // per component

  std::size_t root_count() const {
    return root_offset.empty() ? 0 : root_offset.back() + components.back().root_count();
  }
  std::size_t reflection_count() const {
    return reflection_offset.empty() ? 0 : reflection_offset.back() + components.back().positive;
  }
};

inline RootSystem build_root_system(const CoxeterDatum& d) {
  RootSystem rs;
  rs.datum = d;
  std::size_t roots = 0, refl = 0;
  for (const auto& f : d.factors) {
    rs.components.push_back(build_component_roots(f));
    rs.root_offset.push_back(roots);
    rs.reflection_offset.push_back(refl);
    roots += rs.components.back().root_count();
    refl += rs.components.back().positive;
  }
  if (roots > 65535) throw UnsupportedType("root system too large for 16-bit root indices");
  return rs;
}

}  // namespace coxeter
