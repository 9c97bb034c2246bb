#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <compare>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coxeter/datum.hpp"
#include "coxeter/errors.hpp"
#include "coxeter/linalg.hpp"
#include "coxeter/root_system.hpp"

namespace coxeter {

using ElementId = std::uint32_t;
using ReflectionIndex = std::uint16_t;

/// A group element: an index into the owning group's canonical element
/// table, tagged with the group's identity so that mixing groups is caught.
struct Element {
  std::uint32_t group = 0;
  ElementId id = 0;
  friend auto operator<=>(const Element&, const Element&) = default;
};

/// Fixed-space data for a set of elements: the span of all displacements
/// g(v) - v, which is the orthogonal complement of the common fixed space.
/// Dihedral factors track it combinatorially (dimension, and the line index
/// when the dimension is one).
class MovedSpace {
 public:
  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& s : spans_) d += s.dimension();
    for (const auto& x : dihedral_) d += static_cast<std::size_t>(x.dim);
    return d;
  }

 private:
  friend class CoxeterGroup;
  struct Dihedral {
    int dim = 0;
    int line = -1;
  };
  // indexed by component; only the entry matching the component kind is used
  std::vector<Span> spans_;
  std::vector<Dihedral> dihedral_;
};

struct GroupOptions {
  std::size_t max_elements = 200'000;
};

namespace detail {

inline std::uint64_t census_order(const Factor& f) {
  auto fact = [](std::uint64_t n) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= i;
    return r;
  };
  const auto n = static_cast<std::uint64_t>(f.rank);
  switch (f.family) {
    case Family::A: return fact(n + 1);
    case Family::B: return (std::uint64_t{1} << n) * fact(n);
    case Family::D: return (std::uint64_t{1} << (n - 1)) * fact(n);
    case Family::E: return n == 6 ? 51840 : n == 7 ? 2903040 : 696729600;
    case Family::F: return 1152;
    case Family::H: return n == 3 ? 120 : 14400;
    case Family::I2: return 2 * static_cast<std::uint64_t>(f.m);
  }
  return 0;
}

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::atomic<std::uint32_t>& group_counter() {
  static std::atomic<std::uint32_t> counter{0};
  return counter;
}

}  // namespace detail

/// Classical group order from the type census.
inline std::uint64_t census_order(const CoxeterDatum& d) {
  std::uint64_t r = 1;
  for (const auto& f : d.factors) r *= detail::census_order(f);
  return r;
}

/// A materialized finite Coxeter group. Elements are permutations of the
/// roots, stored once in canonical (serialization) order; all arithmetic runs
/// on element ids. Immutable after construction.
class CoxeterGroup {
 public:
  static constexpr std::size_t kMaxRank = 32;

  explicit CoxeterGroup(const CoxeterDatum& datum, GroupOptions opts = {})
      : uid_(++detail::group_counter()) {
    if (!datum.whole_group_supported())
      throw UnsupportedType("whole-group enumeration is not supported for " + datum.name());
    if (datum.rank() > static_cast<int>(kMaxRank))
      throw UnsupportedType("rank above " + std::to_string(kMaxRank));
    const std::uint64_t expected = census_order(datum);
    if (expected > opts.max_elements)
      throw CapExceeded("elements", datum.name() + " has order " + std::to_string(expected));
    roots_ = build_root_system(datum);
    setup_roots();
    enumerate_elements();
    build_tables();
  }

  // ---- structure ----------------------------------------------------------

  const CoxeterDatum& datum() const { return roots_.datum; }
  const RootSystem& root_system() const { return roots_; }
  std::string name() const { return roots_.datum.name(); }
  std::uint32_t uid() const { return uid_; }
  std::size_t rank() const { return simple_roots_.size(); }
  std::size_t order() const { return count_; }
  std::size_t reflection_count() const { return refl_root_.size(); }
  std::size_t root_count() const { return root_count_; }

  // ---- elements -----------------------------------------------------------

  Element element(ElementId id) const { return {uid_, id}; }
  Element identity() const { return {uid_, identity_}; }
  ElementId identity_id() const { return identity_; }
  Element reflection(std::size_t t) const { return {uid_, refl_elem_.at(t)}; }
  ElementId reflection_id(std::size_t t) const { return refl_elem_[t]; }
  /// Reflection index of the i-th simple generator.
  ReflectionIndex simple_reflection(std::size_t i) const { return simple_refl_.at(i); }
  const std::vector<ReflectionIndex>& simple_reflections() const { return simple_refl_; }

  void check(const Element& e) const {
    if (e.group != uid_ || e.id >= count_) throw GroupMismatch();
  }

  Element multiply(const Element& g, const Element& h) const {
    check(g);
    check(h);
    return {uid_, mul(g.id, h.id)};
  }
  Element inverse(const Element& g) const {
    check(g);
    return {uid_, inv_[g.id]};
  }
  Element conjugate(const Element& by, const Element& g) const {
    check(by);
    check(g);
    return {uid_, mul(mul(by.id, g.id), inv_[by.id])};
  }

  /// Composition as functions: (g h)(v) = g(h(v)).
  ElementId mul(ElementId g, ElementId h) const {
    const std::uint16_t* pg = perm(g);
    const std::uint16_t* ph = perm(h);
    std::array<std::uint16_t, kMaxRank> img{};
    for (std::size_t i = 0; i < simple_roots_.size(); ++i) img[i] = pg[ph[simple_roots_[i]]];
    return find(img.data());
  }
  ElementId inv(ElementId g) const { return inv_[g]; }
  /// g * t
  ElementId mul_reflection(ElementId g, std::size_t t) const {
    return right_refl_[static_cast<std::size_t>(g) * refl_root_.size() + t];
  }
  /// t * g
  ElementId reflection_mul(std::size_t t, ElementId g) const {
    return inv_[mul_reflection(inv_[g], t)];
  }
  /// t_b t_a t_b
  ReflectionIndex conj_reflection(std::size_t a, std::size_t b) const {
    return refl_conj_[a * refl_root_.size() + b];
  }
  /// g t g^-1
  ReflectionIndex conj_reflection_by(ElementId g, std::size_t t) const {
    return root_to_refl_[perm(g)[refl_root_[t]]];
  }
  std::optional<ReflectionIndex> reflection_index_of(ElementId g) const {
    if (refl_of_elem_[g] == kNoReflection) return std::nullopt;
    return refl_of_elem_[g];
  }

  /// Reflection length, computed as codim V^g (dimension of the moved space).
  int reflection_length(ElementId g) const { return lengths_[g]; }
  int reflection_length(const Element& g) const {
    check(g);
    return lengths_[g.id];
  }

  /// Root permutation of an element (global root indices).
  std::span<const std::uint16_t> root_permutation(ElementId g) const {
    return {perm(g), root_count_};
  }
  /// Global root index of the positive root of reflection t.
  std::size_t reflection_root(std::size_t t) const { return refl_root_[t]; }
  /// Component that owns reflection t.
  std::size_t component_of_reflection(std::size_t t) const { return refl_component_[t]; }

  // ---- serialization ------------------------------------------------------

  /// Numeric serialization tuple; the canonical element order sorts by it.
  std::vector<int> serial_tuple(ElementId g) const {
    std::vector<int> out;
    const std::uint16_t* p = perm(g);
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      const auto& comp = roots_.components[c];
      const std::size_t off = roots_.root_offset[c];
      if (comp.is_vector_type()) {
        for (auto s : comp.simple) out.push_back(p[off + s]);
      } else {
        auto [rot, flip] = dihedral_pair(p, c);
        out.push_back(rot);
        out.push_back(flip);
      }
    }
    return out;
  }

  /// Canonical text: vector factors as comma-separated images of the simple
  /// roots, dihedral factors as "rot,flip"; factors joined by '|'.
  std::string serialize(ElementId g) const {
    std::string s;
    const std::uint16_t* p = perm(g);
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      if (c) s += '|';
      const auto& comp = roots_.components[c];
      const std::size_t off = roots_.root_offset[c];
      if (comp.is_vector_type()) {
        for (std::size_t i = 0; i < comp.simple.size(); ++i) {
          if (i) s += ',';
          s += std::to_string(p[off + comp.simple[i]]);
        }
      } else {
        auto [rot, flip] = dihedral_pair(p, c);
        s += std::to_string(rot) + "," + std::to_string(flip);
      }
    }
    return s;
  }
  std::string serialize(const Element& g) const {
    check(g);
    return serialize(g.id);
  }
  std::uint64_t fingerprint(ElementId g) const { return fingerprints_[g]; }

  /// Inverse of serialize().
  Element parse_element(std::string_view text) const {
    for (ElementId g = 0; g < count_; ++g)
      if (serialize(g) == text) return element(g);
    throw ParseError("no such element", 0, std::string(text));
  }

  /// (rotation, flip) for the dihedral factor c of g: g restricted to that
  /// factor is rho^rot * r_0^flip, rho the rotation by 2 pi / m.
  std::pair<int, int> dihedral_pair(ElementId g, std::size_t c) const {
    return dihedral_pair(perm(g), c);
  }

  // ---- geometry -----------------------------------------------------------

  MovedSpace moved_space(std::span<const ElementId> elems) const {
    MovedSpace ms;
    ms.spans_.resize(roots_.components.size());
    ms.dihedral_.resize(roots_.components.size());
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      const auto& comp = roots_.components[c];
      if (comp.is_vector_type()) ms.spans_[c] = Span(comp.dim);
    }
    for (ElementId g : elems) {
      const std::uint16_t* p = perm(g);
      for (std::size_t c = 0; c < roots_.components.size(); ++c) {
        const auto& comp = roots_.components[c];
        const std::size_t off = roots_.root_offset[c];
        if (comp.is_vector_type()) {
          auto& span = ms.spans_[c];
          for (auto s : comp.simple) {
            if (span.dimension() == comp.dim) break;
            std::size_t img = p[off + s] - off;
            if (img == s) continue;
            span.insert(comp.vectors[img] - comp.vectors[s]);
          }
        } else {
          auto [rot, flip] = dihedral_pair(p, c);
          auto& dh = ms.dihedral_[c];
          if (flip) {
            int line = rot;  // rho^k r_0 is the reflection r_k
            if (dh.dim == 0) dh = {1, line};
            else if (dh.dim == 1 && dh.line != line) dh = {2, -1};
          } else if (rot != 0) {
            dh = {2, -1};
          }
        }
      }
    }
    return ms;
  }

  /// Root of reflection t lies in the moved space, i.e. V^t contains the
  /// common fixed space.
  bool moved_space_contains(const MovedSpace& ms, std::size_t t) const {
    const std::size_t c = refl_component_[t];
    const auto& comp = roots_.components[c];
    const std::size_t local = t - roots_.reflection_offset[c];
    if (comp.is_vector_type()) return ms.spans_[c].contains(comp.vectors[local]);
    const auto& dh = ms.dihedral_[c];
    if (dh.dim == 2) return true;
    return dh.dim == 1 && dh.line == static_cast<int>(local);
  }

  /// V^t contains V^g (Carter's criterion (2)).
  bool fixed_space_contains(std::size_t t, ElementId g) const {
    const ElementId one[1] = {g};
    return moved_space_contains(moved_space(one), t);
  }

  bool has_matrix_realization() const {
    for (const auto& c : roots_.components)
      if (!c.is_vector_type()) return false;
    return true;
  }
  std::size_t ambient_dimension() const {
    std::size_t d = 0;
    for (const auto& c : roots_.components) d += c.dim;
    return d;
  }

  /// Matrix of g on the ambient space: determined by the images of the
  /// simple roots and the identity on their orthogonal complement.
  Matrix matrix(const Element& g) const {
    check(g);
    if (!has_matrix_realization())
      throw UnsupportedType("dihedral factors are realized combinatorially; no matrix");
    const std::size_t dim = ambient_dimension();
    Matrix m(dim, dim);
    const std::uint16_t* p = perm(g.id);
    std::size_t base = 0;
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      const auto& comp = roots_.components[c];
      const std::size_t off = roots_.root_offset[c];
      std::vector<Vector> images;
      for (auto s : comp.simple) images.push_back(comp.vectors[p[off + s] - off]);
      for (const auto& v : complements_[c]) images.push_back(v);
      Matrix local = Matrix::from_columns(images, comp.dim) * basis_inverse_[c];
      for (std::size_t i = 0; i < comp.dim; ++i)
        for (std::size_t j = 0; j < comp.dim; ++j) m(base + i, base + j) = local(i, j);
      base += comp.dim;
    }
    return m;
  }

  /// Root vector (ambient coordinates, zero outside its factor).
  Vector root_vector(std::size_t r) const {
    if (!has_matrix_realization()) throw UnsupportedType("no vector realization");
    Vector v(ambient_dimension());
    std::size_t base = 0;
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      const auto& comp = roots_.components[c];
      const std::size_t off = roots_.root_offset[c];
      if (r >= off && r < off + comp.root_count()) {
        for (std::size_t i = 0; i < comp.dim; ++i) v[base + i] = comp.vectors[r - off][i];
        return v;
      }
      base += comp.dim;
    }
    throw IndexOutOfRange("root index");
  }

 private:
  static constexpr ReflectionIndex kNoReflection = 0xFFFF;

  const std::uint16_t* perm(ElementId g) const {
    return perms_.data() + static_cast<std::size_t>(g) * root_count_;
  }

  std::pair<int, int> dihedral_pair(const std::uint16_t* p, std::size_t c) const {
    const int m = roots_.components[c].factor.m;
    const std::size_t off = roots_.root_offset[c];
    const int img0 = p[off] - static_cast<int>(off);
    const int img1 = p[off + 1] - static_cast<int>(off);
    const int flip = ((img1 - img0 + 2 * m) % (2 * m)) == 1 ? 0 : 1;
    // (rot, flip) sends root d to (flip ? -d - m : d) + 2 rot
    const int twice_rot = ((img0 + flip * m) % (2 * m) + 2 * m) % (2 * m);
    return {twice_rot / 2, flip};
  }

  void setup_roots() {
    root_count_ = roots_.root_count();
    const std::size_t nrefl = roots_.reflection_count();
    root_to_refl_.assign(root_count_, 0);
    refl_root_.assign(nrefl, 0);
    refl_component_.assign(nrefl, 0);
    for (std::size_t c = 0; c < roots_.components.size(); ++c) {
      const auto& comp = roots_.components[c];
      const std::size_t roff = roots_.root_offset[c], toff = roots_.reflection_offset[c];
      for (std::size_t r = 0; r < comp.root_count(); ++r)
        root_to_refl_[roff + r] = static_cast<ReflectionIndex>(toff + comp.positive_of(r));
      for (std::size_t k = 0; k < comp.positive; ++k) {
        refl_root_[toff + k] = static_cast<std::uint16_t>(roff + k);
        refl_component_[toff + k] = c;
      }
      for (auto s : comp.simple) {
        simple_roots_.push_back(static_cast<std::uint16_t>(roff + s));
        simple_refl_.push_back(static_cast<ReflectionIndex>(toff + s));
      }
      if (comp.is_vector_type()) {
        // basis = simple roots followed by a basis of their orthogonal complement
        Matrix rows(comp.simple.size(), comp.dim);
        for (std::size_t i = 0; i < comp.simple.size(); ++i)
          for (std::size_t j = 0; j < comp.dim; ++j) rows(i, j) = comp.vectors[comp.simple[i]][j];
        complements_.push_back(kernel(rows));
        std::vector<Vector> cols;
        for (auto s : comp.simple) cols.push_back(comp.vectors[s]);
        for (const auto& v : complements_.back()) cols.push_back(v);
        basis_inverse_.push_back(coxeter::inverse(Matrix::from_columns(cols, comp.dim)));
      } else {
        complements_.emplace_back();
        basis_inverse_.emplace_back();
      }
    }
  }

  Perm global_reflection_perm(std::size_t t) const {
    Perm p(root_count_);
    std::iota(p.begin(), p.end(), std::uint16_t{0});
    const std::size_t c = refl_component_[t];
    const auto& comp = roots_.components[c];
    const std::size_t off = roots_.root_offset[c];
    const auto& local = comp.reflections[t - roots_.reflection_offset[c]];
    for (std::size_t r = 0; r < comp.root_count(); ++r)
      p[off + r] = static_cast<std::uint16_t>(off + local[r]);
    return p;
  }

  std::uint64_t hash_images(const std::uint16_t* img) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t i = 0; i < simple_roots_.size(); ++i) {
      h ^= img[i];
      h *= 1099511628211ULL;
    }
    return h ^ (h >> 29);
  }

  // Looks up the element whose simple-root images are `img`.
  ElementId find(const std::uint16_t* img) const {
    std::size_t slot = hash_images(img) & mask_;
    while (true) {
      ElementId e = table_[slot];
      if (e == kEmpty) throw std::logic_error("element not in group table");
      const std::uint16_t* p = perm(e);
      bool same = true;
      for (std::size_t i = 0; i < simple_roots_.size(); ++i)
        if (p[simple_roots_[i]] != img[i]) {
          same = false;
          break;
        }
      if (same) return e;
      slot = (slot + 1) & mask_;
    }
  }

  void enumerate_elements() {
    const std::size_t n = simple_roots_.size();
    std::vector<Perm> gens;
    for (auto t : simple_refl_) gens.push_back(global_reflection_perm(t));

    // BFS keyed on simple-root images
    std::vector<std::uint16_t> flat;
    std::vector<std::vector<std::uint16_t>> keys_seen;
    std::size_t cap = 1;
    const std::uint64_t expected = census_order(roots_.datum);
    while (cap < 2 * expected + 2) cap <<= 1;
    std::vector<ElementId> table(cap, kEmpty);
    const std::size_t mask = cap - 1;
    auto lookup_or_insert = [&](const std::uint16_t* p) -> bool {
      std::array<std::uint16_t, kMaxRank> img{};
      for (std::size_t i = 0; i < n; ++i) img[i] = p[simple_roots_[i]];
      std::uint64_t h = hash_images(img.data());
      std::size_t slot = h & mask;
      while (table[slot] != kEmpty) {
        const std::uint16_t* q = flat.data() + static_cast<std::size_t>(table[slot]) * root_count_;
        bool same = true;
        for (std::size_t i = 0; i < n; ++i)
          if (q[simple_roots_[i]] != img[i]) {
            same = false;
            break;
          }
        if (same) return false;
        slot = (slot + 1) & mask;
      }
      table[slot] = static_cast<ElementId>(flat.size() / root_count_);
      flat.insert(flat.end(), p, p + root_count_);
      return true;
    };
    Perm id(root_count_);
    std::iota(id.begin(), id.end(), std::uint16_t{0});
    lookup_or_insert(id.data());
    Perm next(root_count_);
    for (std::size_t q = 0; q * root_count_ < flat.size(); ++q) {
      for (const auto& s : gens) {
        const std::uint16_t* cur = flat.data() + q * root_count_;
        for (std::size_t r = 0; r < root_count_; ++r) next[r] = s[cur[r]];
        lookup_or_insert(next.data());
      }
    }
    const std::size_t total = flat.size() / root_count_;
    if (total != expected)
      throw std::logic_error("group order " + std::to_string(total) + " differs from census " +
                             std::to_string(expected));

    // canonical order by serialization tuple
    count_ = total;
    perms_ = std::move(flat);
    std::vector<std::vector<int>> tuples(count_);
    for (ElementId g = 0; g < count_; ++g) tuples[g] = serial_tuple(g);
    std::vector<ElementId> order(count_);
    std::iota(order.begin(), order.end(), ElementId{0});
    std::sort(order.begin(), order.end(),
              [&](ElementId a, ElementId b) { return tuples[a] < tuples[b]; });
    std::vector<std::uint16_t> sorted(perms_.size());
    for (std::size_t i = 0; i < count_; ++i)
      std::copy_n(perms_.data() + static_cast<std::size_t>(order[i]) * root_count_, root_count_,
                  sorted.data() + i * root_count_);
    perms_ = std::move(sorted);

    table_.assign(cap, kEmpty);
    mask_ = mask;
    for (ElementId g = 0; g < count_; ++g) {
      std::array<std::uint16_t, kMaxRank> img{};
      for (std::size_t i = 0; i < n; ++i) img[i] = perm(g)[simple_roots_[i]];
      std::size_t slot = hash_images(img.data()) & mask_;
      while (table_[slot] != kEmpty) slot = (slot + 1) & mask_;
      table_[slot] = g;
    }
    std::array<std::uint16_t, kMaxRank> id_img{};
    for (std::size_t i = 0; i < n; ++i) id_img[i] = simple_roots_[i];
    identity_ = find(id_img.data());
  }

  void build_tables() {
    const std::size_t nt = refl_root_.size();
    inv_.assign(count_, 0);
    Perm scratch(root_count_);
    std::array<std::uint16_t, kMaxRank> img{};
    for (ElementId g = 0; g < count_; ++g) {
      const std::uint16_t* p = perm(g);
      for (std::size_t r = 0; r < root_count_; ++r) scratch[p[r]] = static_cast<std::uint16_t>(r);
      for (std::size_t i = 0; i < simple_roots_.size(); ++i) img[i] = scratch[simple_roots_[i]];
      inv_[g] = find(img.data());
    }

    refl_elem_.assign(nt, 0);
    refl_of_elem_.assign(count_, kNoReflection);
    for (std::size_t t = 0; t < nt; ++t) {
      Perm p = global_reflection_perm(t);
      for (std::size_t i = 0; i < simple_roots_.size(); ++i) img[i] = p[simple_roots_[i]];
      refl_elem_[t] = find(img.data());
      refl_of_elem_[refl_elem_[t]] = static_cast<ReflectionIndex>(t);
    }

    right_refl_.assign(count_ * nt, 0);
    for (ElementId g = 0; g < count_; ++g)
      for (std::size_t t = 0; t < nt; ++t) right_refl_[g * nt + t] = mul(g, refl_elem_[t]);

    refl_conj_.assign(nt * nt, 0);
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t b = 0; b < nt; ++b)
        refl_conj_[a * nt + b] = conj_reflection_by(refl_elem_[b], a);

    lengths_.assign(count_, 0);
    fingerprints_.assign(count_, 0);
    for (ElementId g = 0; g < count_; ++g) {
      const ElementId one[1] = {g};
      lengths_[g] = static_cast<std::uint8_t>(moved_space(one).dimension());
      fingerprints_[g] = detail::fnv1a(serialize(g));
    }
  }

  static constexpr ElementId kEmpty = 0xFFFFFFFFu;

  std::uint32_t uid_;
  RootSystem roots_;
  std::size_t root_count_ = 0;
  std::size_t count_ = 0;
  ElementId identity_ = 0;
  std::vector<std::uint16_t> simple_roots_;
  std::vector<ReflectionIndex> simple_refl_;
  std::vector<ReflectionIndex> root_to_refl_;
  std::vector<std::uint16_t> refl_root_;
  std::vector<std::size_t> refl_component_;
  std::vector<std::vector<Vector>> complements_;
  std::vector<Matrix> basis_inverse_;

  std::vector<std::uint16_t> perms_;
  std::vector<ElementId> table_;
  std::size_t mask_ = 0;
  std::vector<ElementId> inv_;
  std::vector<ElementId> refl_elem_;
  std::vector<ReflectionIndex> refl_of_elem_;
  std::vector<ElementId> right_refl_;
  std::vector<ReflectionIndex> refl_conj_;
  std::vector<std::uint8_t> lengths_;
  std::vector<std::uint64_t> fingerprints_;
};

inline CoxeterGroup build_group(const CoxeterDatum& d, GroupOptions opts = {}) {
  return CoxeterGroup(d, opts);
}

inline CoxeterGroup build_group(std::string_view spec, GroupOptions opts = {}) {
  return CoxeterGroup(parse_group(spec), opts);
}

}  // namespace coxeter
