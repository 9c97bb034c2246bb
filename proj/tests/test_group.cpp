#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>

#include "coxeter/group.hpp"
#include "coxeter/subgroup.hpp"

using namespace coxeter;

namespace {

// Images of every element under a map defined on simple reflections, by
// breadth-first search over words; returns false if two words for the same
// element disagree (so the map does not respect the relations).
template <class T, class Mul>
bool extend_from_simples(const CoxeterGroup& g, const std::vector<T>& simple_images, const T& one, Mul mul,
                         std::vector<T>& out) {
  out.assign(g.order(), one);
  std::vector<char> seen(g.order(), 0);
  std::vector<ElementId> queue{g.identity_id()};
  seen[g.identity_id()] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t i = 0; i < g.rank(); ++i) {
      ElementId y = g.mul(queue[q], g.reflection_id(g.simple_reflection(i)));
      T img = mul(out[queue[q]], simple_images[i]);
      if (!seen[y]) {
        seen[y] = 1;
        out[y] = img;
        queue.push_back(y);
      } else if (!(out[y] == img)) {
        return false;
      }
    }
  return queue.size() == g.order();
}

using Perm4 = std::array<int, 4>;
Perm4 compose(const Perm4& a, const Perm4& b) {  // a after b
  Perm4 r{};
  for (int i = 0; i < 4; ++i) r[i] = a[b[i]];
  return r;
}

int element_order(const CoxeterGroup& g, ElementId x) {
  int k = 1;
  for (ElementId y = x; y != g.identity_id(); y = g.mul(y, x)) ++k;
  return k;
}

}  // namespace

TEST(Group, Census) {
  struct Row {
    const char* spec;
    std::size_t order, reflections;
  };
  for (const Row& r : {Row{"A1", 2, 1}, Row{"A2", 6, 3}, Row{"A3", 24, 6}, Row{"A4", 120, 10}, Row{"B2", 8, 4},
                       Row{"B3", 48, 9}, Row{"B4", 384, 16}, Row{"D4", 192, 12}, Row{"D5", 1920, 20},
                       Row{"I2(3)", 6, 3}, Row{"I2(30)", 60, 30}, Row{"H3", 120, 15}, Row{"F4", 1152, 24},
                       Row{"A2xI2(5)", 60, 8}, Row{"A1xA1", 4, 2}}) {
    auto g = build_group(r.spec);
    EXPECT_EQ(g.order(), r.order) << r.spec;
    EXPECT_EQ(g.reflection_count(), r.reflections) << r.spec;
    EXPECT_EQ(g.order(), census_order(g.datum())) << r.spec;
  }
}

TEST(Group, LargeCensus) {
  auto h4 = build_group("H4");
  EXPECT_EQ(h4.order(), 14400u);
  EXPECT_EQ(h4.reflection_count(), 60u);
  auto e6 = build_group("E6");
  EXPECT_EQ(e6.order(), 51840u);
  EXPECT_EQ(e6.reflection_count(), 36u);
}

TEST(Group, RootSystemsOfE7E8) {
  EXPECT_EQ(build_root_system(parse_group("E7")).root_count(), 126u);
  EXPECT_EQ(build_root_system(parse_group("E8")).root_count(), 240u);
  EXPECT_THROW(build_group("E7"), UnsupportedType);
  EXPECT_THROW(build_group("E8"), UnsupportedType);
}

TEST(Group, ElementCapIsHard) {
  GroupOptions opts;
  opts.max_elements = 100;
  EXPECT_THROW(build_group("B4", opts), CapExceeded);
  EXPECT_NO_THROW(build_group("A3", opts));
}

TEST(Group, A3IsTheSymmetricGroup) {
  auto g = build_group("A3");
  std::vector<Perm4> simples;
  for (int i = 0; i < 3; ++i) {
    Perm4 p{0, 1, 2, 3};
    std::swap(p[i], p[i + 1]);
    simples.push_back(p);
  }
  std::vector<Perm4> img;
  ASSERT_TRUE(extend_from_simples(g, simples, Perm4{0, 1, 2, 3}, compose, img));
  std::set<Perm4> distinct(img.begin(), img.end());
  EXPECT_EQ(distinct.size(), 24u);
  for (ElementId x = 0; x < g.order(); ++x)
    for (ElementId y = 0; y < g.order(); ++y) EXPECT_EQ(img[g.mul(x, y)], compose(img[x], img[y]));
  // reflections are exactly the transpositions
  for (ElementId x = 0; x < g.order(); ++x) {
    int moved = 0;
    for (int i = 0; i < 4; ++i) moved += img[x][i] != i;
    EXPECT_EQ(g.reflection_index_of(x).has_value(), moved == 2);
  }
}

TEST(Group, GroupAxioms) {
  for (const char* spec : {"A3", "B2", "I2(5)", "I2(6)", "A1xI2(4)"}) {
    auto g = build_group(spec);
    const ElementId e = g.identity_id();
    for (ElementId x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.mul(x, e), x);
      EXPECT_EQ(g.mul(e, x), x);
      EXPECT_EQ(g.mul(x, g.inv(x)), e);
      for (ElementId y = 0; y < g.order(); ++y)
        for (ElementId z = 0; z < g.order(); z += 3) EXPECT_EQ(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
    }
  }
}

TEST(Group, CoxeterRelations) {
  auto g = build_group("H3");
  // m(s1,s2) = 5, m(s2,s3) = 3, m(s1,s3) = 2
  auto s = [&](std::size_t i) { return g.reflection_id(g.simple_reflection(i)); };
  EXPECT_EQ(element_order(g, g.mul(s(0), s(1))), 5);
  EXPECT_EQ(element_order(g, g.mul(s(1), s(2))), 3);
  EXPECT_EQ(element_order(g, g.mul(s(0), s(2))), 2);
  auto a2 = build_group("A2");
  EXPECT_EQ(element_order(a2, a2.mul(a2.reflection_id(a2.simple_reflection(0)),
                                     a2.reflection_id(a2.simple_reflection(1)))),
            3);
}

TEST(Group, ReflectionsAreExactlyTheCodimOneElements) {
  for (const char* spec : {"A3", "B3", "D4", "H3", "A2xA1"}) {
    auto g = build_group(spec);
    std::size_t codim_one = 0;
    for (ElementId x = 0; x < g.order(); ++x) {
      const auto codim = fixed_space_codim(g.matrix(g.element(x)));
      EXPECT_EQ(static_cast<int>(codim), g.reflection_length(x));
      if (codim == 1) {
        ++codim_one;
        EXPECT_TRUE(g.reflection_index_of(x).has_value());
        EXPECT_EQ(g.mul(x, x), g.identity_id());
      }
    }
    EXPECT_EQ(codim_one, g.reflection_count()) << spec;
  }
}

TEST(Group, MatrixAgreesWithRootAction) {
  for (const char* spec : {"A3", "B3", "H3", "F4", "A1xB2"}) {
    auto g = build_group(spec);
    for (ElementId x = 0; x < g.order(); x += (g.order() > 200 ? 7 : 1)) {
      const Matrix m = g.matrix(g.element(x));
      auto p = g.root_permutation(x);
      for (std::size_t r = 0; r < g.root_count(); ++r) EXPECT_EQ(m.apply(g.root_vector(r)), g.root_vector(p[r]));
    }
  }
}

TEST(Group, MatrixIsAHomomorphism) {
  auto g = build_group("B3");
  for (ElementId x = 0; x < g.order(); x += 5)
    for (ElementId y = 0; y < g.order(); y += 3)
      EXPECT_EQ(g.matrix(g.element(g.mul(x, y))), g.matrix(g.element(x)) * g.matrix(g.element(y)));
}

TEST(Group, CodimIsConjugationInvariant) {
  for (const char* spec : {"A3", "B3", "H3"}) {
    auto g = build_group(spec);
    for (ElementId x = 0; x < g.order(); ++x)
      for (ElementId h = 0; h < g.order(); h += 11) {
        ElementId c = g.mul(g.mul(h, x), g.inv(h));
        EXPECT_EQ(fixed_space_codim(g.matrix(g.element(c))), fixed_space_codim(g.matrix(g.element(x))));
      }
  }
}

TEST(Group, DihedralGeometricRepresentation) {
  // root-basis representation with B(a_s, a_t) = -cos(pi/m); 2cos(pi/m) is
  // 1 for m = 3 and phi for m = 5
  for (int m : {3, 5}) {
    auto g = build_group("I2(" + std::to_string(m) + ")");
    const Scalar c = m == 3 ? Scalar(1) : Scalar::phi();
    Matrix s{{Scalar(-1), c}, {Scalar(0), Scalar(1)}};
    Matrix t{{Scalar(1), Scalar(0)}, {c, Scalar(-1)}};
    std::vector<Matrix> img;
    ASSERT_TRUE(extend_from_simples(g, std::vector<Matrix>{s, t}, Matrix::identity(2),
                                    [](const Matrix& a, const Matrix& b) { return a * b; }, img));
    for (ElementId x = 0; x < g.order(); ++x)
      for (ElementId y = 0; y < g.order(); ++y) {
        EXPECT_EQ(img[g.mul(x, y)], img[x] * img[y]);
        if (x != y) {
          EXPECT_FALSE(img[x] == img[y]);
        }
      }
    for (ElementId x = 0; x < g.order(); ++x)
      EXPECT_EQ(static_cast<int>(fixed_space_codim(img[x])), g.reflection_length(x));
  }
}

TEST(Group, DihedralArithmetic) {
  auto g = build_group("I2(30)");
  EXPECT_EQ(g.simple_reflection(0), 0);
  EXPECT_EQ(g.simple_reflection(1), 29);
  // r_k = rho^k r_0
  for (std::size_t k = 0; k < 30; ++k) EXPECT_EQ(g.dihedral_pair(g.reflection_id(k), 0), std::make_pair(int(k), 1));
  // r_0 r_2 is a rotation by 2 (2 - 0) half-steps, of order 15
  ElementId x = g.mul(g.reflection_id(0), g.reflection_id(2));
  EXPECT_EQ(g.dihedral_pair(x, 0).second, 0);
  EXPECT_EQ(element_order(g, x), 15);
  EXPECT_EQ(g.reflection_length(x), 2);
  EXPECT_EQ(g.reflection_length(g.identity_id()), 0);
}

TEST(Group, ClosureExamples) {
  auto g = build_group("I2(30)");
  EXPECT_EQ(closure(g, std::vector<Element>{}).order(), 1u);
  auto sub = [&](std::initializer_list<ReflectionIndex> r) { return closure_of_reflections(g, std::vector<ReflectionIndex>(r)); };
  EXPECT_EQ(sub({0, 2}).order(), 30u);
  EXPECT_EQ(sub({0, 27}).order(), 20u);
  EXPECT_EQ(sub({2, 27}).order(), 12u);
  EXPECT_NE(sub({0, 2}).key, sub({0, 27}).key);
  EXPECT_EQ(sub({0, 2}).key, sub({2, 0}).key);
  EXPECT_EQ(sub({0, 2}).key, sub({2, 4}).key);
  EXPECT_EQ(sub({0, 2}), sub({2, 4}));
}

TEST(Group, ClosureIsIdempotentAndObeysLagrange) {
  auto g = build_group("B3");
  for (std::size_t a = 0; a < g.reflection_count(); ++a)
    for (std::size_t b = a; b < g.reflection_count(); ++b) {
      std::vector<Element> gens{g.reflection(a), g.reflection(b), g.element(g.mul(g.reflection_id(a), g.reflection_id(b)))};
      Subgroup h = closure(g, gens);
      EXPECT_EQ(g.order() % h.order(), 0u);
      std::vector<Element> all;
      for (auto e : h.elements) all.push_back(g.element(e));
      EXPECT_EQ(closure(g, all), h);
      EXPECT_EQ(canonical_key(g, closure(g, all)), h.key);
      for (std::size_t t = 0; t < g.reflection_count(); ++t)
        EXPECT_EQ(h.reflections_inside.contains(t), h.contains(g.reflection_id(t)));
      std::vector<ReflectionIndex> pair{static_cast<ReflectionIndex>(a), static_cast<ReflectionIndex>(b)};
      EXPECT_EQ(reflection_closure(g, pair), closure_of_reflections(g, pair).reflections_inside);
    }
}

TEST(Group, ConjugacyClasses) {
  auto g = build_group("A3");
  auto w = whole_group(g);
  EXPECT_EQ(conjugacy_class(g, g.identity(), w), std::vector<ElementId>{g.identity_id()});
  auto cls = conjugacy_class(g, g.reflection(0), w);
  EXPECT_EQ(cls.size(), 6u);
  for (auto x : cls) EXPECT_TRUE(g.reflection_index_of(x).has_value());

  auto i30 = build_group("I2(30)");
  auto h = closure_of_reflections(i30, std::vector<ReflectionIndex>{0, 2});
  auto c0 = conjugacy_class(i30, i30.reflection(0), h);
  auto c2 = conjugacy_class(i30, i30.reflection(2), h);
  // <r_0, r_2> is dihedral of order 30 with rotation of odd order 15: a single class of reflections
  EXPECT_EQ(c0.size(), 15u);
  EXPECT_EQ(c0, c2);
  EXPECT_THROW(conjugacy_class(i30, i30.reflection(1), h), NotInSubgroup);
}

TEST(Group, MixingGroupsIsRejected) {
  auto a = build_group("A2");
  auto b = build_group("A2");
  EXPECT_THROW(a.multiply(a.identity(), b.identity()), GroupMismatch);
  EXPECT_THROW(a.serialize(b.identity()), GroupMismatch);
}

TEST(Group, SerializationRoundTripAndCanonicalOrder) {
  for (const char* spec : {"B3", "I2(7)", "A2xI2(5)", "H3"}) {
    auto g = build_group(spec);
    std::set<std::string> seen;
    for (ElementId x = 0; x < g.order(); ++x) {
      EXPECT_EQ(g.parse_element(g.serialize(x)).id, x);
      EXPECT_TRUE(seen.insert(g.serialize(x)).second);
      if (x > 0) {
        EXPECT_LT(g.serial_tuple(x - 1), g.serial_tuple(x));
      }
    }
    EXPECT_THROW(g.parse_element("nonsense"), ParseError);
  }
}

TEST(Group, ReflectionConjugationTable) {
  auto g = build_group("F4");
  for (std::size_t a = 0; a < g.reflection_count(); ++a)
    for (std::size_t b = 0; b < g.reflection_count(); ++b) {
      ElementId tb = g.reflection_id(b);
      EXPECT_EQ(g.reflection_id(g.conj_reflection(a, b)), g.mul(g.mul(tb, g.reflection_id(a)), tb));
    }
}
