#include <gtest/gtest.h>

#include <numeric>

#include "coxeter/gensets.hpp"

using namespace coxeter;

namespace {

std::size_t order_of(const CoxeterGroup& g, ReflectionTuple x) { return closure_of_reflections(g, x).order(); }

ReflectionTuple reflections_for_edges(const CoxeterGroup& g, GraphType type, std::vector<SignedEdge> edges) {
  SignedGraph gr;
  gr.vertices = static_cast<int>(g.rank()) + (type == GraphType::A ? 1 : 0);
  gr.edges = std::move(edges);
  return reflections_of_graph(g, gr, type);
}

}  // namespace

TEST(GenSet, I2_30Example) {
  auto g = build_group("I2(30)");
  auto r = analyze_genset(g, {0, 2, 27});
  EXPECT_TRUE(r.generates_W);
  EXPECT_TRUE(r.is_minimal);
  EXPECT_FALSE(r.contains_minimum);
  EXPECT_FALSE(r.minimum_witness.has_value());
  EXPECT_EQ(r.drop_one_orders, (std::vector<std::size_t>{12, 20, 30}));
  EXPECT_TRUE(r.shrink_chain.empty());
}

TEST(GenSet, SimpleGeneratorsOfA3) {
  auto g = build_group("A3");
  ReflectionTuple s(g.simple_reflections().begin(), g.simple_reflections().end());
  auto r = analyze_genset(g, s);
  EXPECT_TRUE(r.generates_W);
  EXPECT_TRUE(r.is_minimal);
  EXPECT_TRUE(r.contains_minimum);
  std::sort(s.begin(), s.end());
  EXPECT_EQ(*r.minimum_witness, s);
}

TEST(GenSet, ConnectedGraphWithCycleInA3) {
  auto g = build_group("A3");
  // 4-cycle 1-2-3-4-1 on transpositions
  auto x = reflections_for_edges(g, GraphType::A, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  auto r = analyze_genset(g, x);
  EXPECT_TRUE(r.generates_W);
  EXPECT_FALSE(r.is_minimal);
  ASSERT_TRUE(r.contains_minimum);
  EXPECT_EQ(order_of(g, *r.minimum_witness), 24u);
  EXPECT_EQ(r.shrink_chain.size(), 1u);
  // a triangle does not generate
  auto tri = analyze_genset(g, reflections_for_edges(g, GraphType::A, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}}));
  EXPECT_FALSE(tri.generates_W);
  EXPECT_FALSE(tri.contains_minimum);
}

TEST(MinEqualsMin, Examples) {
  EXPECT_TRUE(check_min_equals_min(build_group("A3")).verdict);
  EXPECT_TRUE(check_min_equals_min(build_group("I2(12)")).verdict);
  auto g = build_group("I2(30)");
  auto r = check_min_equals_min(g);
  EXPECT_FALSE(r.verdict);
  ASSERT_FALSE(r.counterexamples.empty());
  for (const auto& s : r.counterexamples) {
    ASSERT_EQ(s.size(), 3u);
    EXPECT_EQ(order_of(g, s), 60u);
    EXPECT_LT(order_of(g, {s[0], s[1]}), 60u);
    EXPECT_LT(order_of(g, {s[0], s[2]}), 60u);
    EXPECT_LT(order_of(g, {s[1], s[2]}), 60u);
    auto t = dihedral_triple_of(g, s[0], s[1], s[2]);
    std::multiset<int> gcds{std::gcd(t.a12, 30), std::gcd(t.a13, 30), std::gcd(t.a23, 30)};
    EXPECT_EQ(gcds, (std::multiset<int>{2, 3, 5}));
  }
  // {0, 2, 27} is conjugate to one of the listed representatives
  ReflectionTuple triple{0, 2, 27};
  bool found = false;
  for (ElementId w = 0; w < g.order() && !found; ++w) {
    ReflectionTuple img;
    for (auto t : triple) img.push_back(g.conj_reflection_by(w, t));
    std::sort(img.begin(), img.end());
    found = std::find(r.counterexamples.begin(), r.counterexamples.end(), img) != r.counterexamples.end();
  }
  EXPECT_TRUE(found);
}

TEST(MinEqualsMin, ConjugacyReductionPreservesVerdict) {
  for (const char* spec : {"I2(30)", "B3", "A3", "I2(6)"}) {
    auto g = build_group(spec);
    auto reduced = check_min_equals_min(g, true);
    auto full = check_min_equals_min(g, false);
    EXPECT_EQ(reduced.verdict, full.verdict) << spec;
    EXPECT_LE(reduced.checked, full.checked);
  }
}

TEST(MinEqualsMin, SubgroupSweep) {
  EXPECT_TRUE(check_min_equals_min(build_group("A3"), true, true).verdict);
  EXPECT_TRUE(check_min_equals_min(build_group("B3"), true, true).verdict);
  EXPECT_FALSE(check_min_equals_min(build_group("I2(30)"), true, true).verdict);
}

TEST(MinEqualsMin, Prediction) {
  EXPECT_TRUE(predicted_min_equals_min(parse_group("I2(12)")));
  EXPECT_FALSE(predicted_min_equals_min(parse_group("I2(30)")));
  EXPECT_FALSE(predicted_min_equals_min(parse_group("A1xI2(42)")));
  EXPECT_TRUE(predicted_min_equals_min(parse_group("F4")));
}

TEST(DihedralTriple, Examples) {
  auto t = dihedral_triple_of(30, 0, 2, -3);
  EXPECT_EQ(t.a12 + t.a13 + t.a23, 60);
  EXPECT_EQ(std::gcd(t.a12, 30), 2);
  EXPECT_EQ(std::gcd(t.a13, 30), 3);
  EXPECT_EQ(std::gcd(t.a23, 30), 5);
  EXPECT_TRUE(dihedral_generates(t));
  EXPECT_EQ(dihedral_triple_of(3, 0, 1, 2), (DihedralTriple{3, 2, 2, 2}));
  EXPECT_THROW(dihedral_triple_of(30, 0, 30, 5), NotDistinct);
  EXPECT_FALSE(dihedral_generates({12, 2, 4, 18}));
}

TEST(DihedralTriple, PermutationInvariance) {
  for (int m = 3; m <= 12; ++m)
    for (int k = 0; k < m; ++k)
      for (int l = k + 1; l < m; ++l)
        for (int p = l + 1; p < m; ++p) {
          auto t = dihedral_triple_of(m, k, l, p);
          std::multiset<int> base{t.a12, t.a13, t.a23};
          for (auto [a, b, c] : {std::array{k, p, l}, std::array{l, k, p}, std::array{p, l, k}}) {
            auto u = dihedral_triple_of(m, a, b, c);
            EXPECT_EQ((std::multiset<int>{u.a12, u.a13, u.a23}), base);
          }
          for (int a : {t.a12, t.a13, t.a23}) {
            EXPECT_GE(a, 1);
            EXPECT_LE(a, m - 1);
          }
          EXPECT_EQ(t.a12 + t.a13 + t.a23, 2 * m);
        }
}

TEST(DihedralTriple, GcdCriteriaMatchClosure) {
  for (int m = 3; m <= 24; ++m) {
    auto g = build_group("I2(" + std::to_string(m) + ")");
    const std::size_t w = g.order();
    for (int k = 0; k < m; ++k)
      for (int l = k + 1; l < m; ++l) {
        auto pair = static_cast<ReflectionIndex>(k), pair2 = static_cast<ReflectionIndex>(l);
        EXPECT_EQ(dihedral_pair_generates(l - k, m), order_of(g, {pair, pair2}) == w);
        for (int p = l + 1; p < m; ++p) {
          auto t = dihedral_triple_of(m, k, l, p);
          EXPECT_EQ(dihedral_generates(t), order_of(g, {pair, pair2, static_cast<ReflectionIndex>(p)}) == w);
          EXPECT_EQ(dihedral_pair_generates(t.a12, m), order_of(g, {pair, pair2}) == w);
        }
      }
  }
}

TEST(Crt, Examples) {
  auto t = crt_construct(30, 2, 3, 5);
  EXPECT_EQ(t, (DihedralTriple{30, 14, 21, 25}));
  auto u = crt_construct(60, 4, 3, 5);
  EXPECT_EQ(u.a12 + u.a13 + u.a23, 120);
  EXPECT_EQ(std::gcd(u.a12, 60), 4);
  EXPECT_EQ(std::gcd(u.a13, 60), 3);
  EXPECT_EQ(std::gcd(u.a23, 60), 5);
  auto v = crt_construct(42, 2, 3, 7);
  EXPECT_EQ(std::gcd(v.a12, 42), 2);
  EXPECT_EQ(std::gcd(v.a13, 42), 3);
  EXPECT_EQ(std::gcd(v.a23, 42), 7);
  EXPECT_TRUE(dihedral_generates(v));
  EXPECT_THROW(crt_construct(30, 2, 3, 4), BadFactorization);
  EXPECT_THROW(crt_construct(24, 2, 3, 4), BadFactorization);
  EXPECT_THROW(crt_construct(30, 1, 6, 5), BadFactorization);
}

TEST(Crt, PropertiesOverAllFactorizations) {
  for (int m = 30; m <= 210; ++m)
    for (auto [p, q, r] : coprime_factorizations(m)) {
      auto t = crt_construct(m, p, q, r);
      EXPECT_EQ(t.a12 + t.a13 + t.a23, 2 * m);
      EXPECT_EQ(std::gcd(t.a12, m), p);
      EXPECT_EQ(std::gcd(t.a13, m), q);
      EXPECT_EQ(std::gcd(t.a23, m), r);
      EXPECT_TRUE(dihedral_generates(t));
      auto refl = dihedral_reflections_of(t);
      EXPECT_EQ(dihedral_triple_of(m, refl[0], refl[1], refl[2]), t);
    }
}

TEST(SignedGraph, Translation) {
  auto b3 = build_group("B3");
  for (std::size_t t = 0; t < b3.reflection_count(); ++t) {
    ReflectionTuple one{static_cast<ReflectionIndex>(t)};
    auto gr = signed_graph_of(b3, one, GraphType::B);
    ASSERT_EQ(gr.edges.size(), 1u);
    Vector v = b3.root_vector(b3.reflection_root(t));
    std::size_t nz = 0;
    for (auto& c : v) nz += !c.is_zero();
    EXPECT_EQ(gr.edges[0].is_loop(), nz == 1);
    EXPECT_EQ(reflections_of_graph(b3, gr, GraphType::B), one);
  }
  auto a3 = build_group("A3");
  auto gr = signed_graph_of(a3, ReflectionTuple{0}, GraphType::A);
  EXPECT_EQ(gr.vertices, 4);
  EXPECT_EQ(gr.edges[0].sign, 1);
  EXPECT_FALSE(gr.edges[0].is_loop());
  EXPECT_TRUE(signed_graph_of(a3, ReflectionTuple{}, GraphType::A).edges.empty());
  EXPECT_THROW(signed_graph_of(a3, ReflectionTuple{0}, GraphType::B), TypeMismatch);
  EXPECT_THROW(signed_graph_of(build_group("D4"), ReflectionTuple{0}, GraphType::B), TypeMismatch);
}

TEST(SignedGraph, GenerationExamples) {
  SignedGraph tree{4, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}}};
  EXPECT_TRUE(graph_generation_test(tree, GraphType::A));
  SignedGraph loopless{3, {{0, 1, 1}, {1, 2, -1}}};
  EXPECT_FALSE(graph_generation_test(loopless, GraphType::B));
  SignedGraph unicycle{4, {{0, 1, 1}, {1, 2, 1}, {0, 2, -1}, {2, 3, 1}}};
  EXPECT_TRUE(graph_generation_test(unicycle, GraphType::D));
  SignedGraph balanced{4, {{0, 1, -1}, {1, 2, -1}, {0, 2, 1}, {2, 3, 1}}};
  EXPECT_FALSE(graph_generation_test(balanced, GraphType::D));
  SignedGraph with_loop{4, {{0, 0, -1}, {0, 1, 1}}};
  EXPECT_THROW(graph_generation_test(with_loop, GraphType::D), TypeMismatch);
}

TEST(SignedGraph, ExtractionExamples) {
  auto a3 = build_group("A3");
  SignedGraph k4{4, {}};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) k4.edges.push_back({i, j, 1});
  auto tree = extract_minimum_subset(k4, GraphType::A);
  EXPECT_EQ(tree.edges.size(), 3u);
  EXPECT_EQ(order_of(a3, reflections_of_graph(a3, tree, GraphType::A)), 24u);

  auto b3 = build_group("B3");
  SignedGraph two_loops{3, {{0, 0, -1}, {2, 2, -1}, {0, 1, 1}, {1, 2, -1}}};
  auto tl = extract_minimum_subset(two_loops, GraphType::B);
  EXPECT_EQ(tl.edges.size(), 3u);
  EXPECT_EQ(tl.loops(), 1u);
  EXPECT_EQ(order_of(b3, reflections_of_graph(b3, tl, GraphType::B)), 48u);

  auto d4 = build_group("D4");
  SignedGraph two_cycles{4, {{0, 1, -1}, {0, 1, 1}, {1, 2, 1}, {2, 3, -1}, {2, 3, 1}}};
  auto uc = extract_minimum_subset(two_cycles, GraphType::D);
  EXPECT_EQ(uc.edges.size(), 4u);
  EXPECT_TRUE(graph_generation_test(uc, GraphType::D));
  EXPECT_EQ(order_of(d4, reflections_of_graph(d4, uc, GraphType::D)), 192u);

  EXPECT_THROW(extract_minimum_subset(SignedGraph{3, {{0, 1, 1}}}, GraphType::A), NotGenerating);
}

TEST(SignedGraph, CriteriaMatchClosureOnSmallGroups) {
  struct Case {
    const char* spec;
    GraphType type;
  };
  for (const Case& c : {Case{"A3", GraphType::A}, Case{"B3", GraphType::B}, Case{"D4", GraphType::D}}) {
    auto g = build_group(c.spec);
    for (std::size_t k = 0; k <= g.rank() + 1; ++k)
      for_each_combination(g.reflection_count(), k, [&](std::span<const std::size_t> idx) {
        ReflectionTuple x(idx.begin(), idx.end());
        auto gr = signed_graph_of(g, x, c.type);
        const bool gen = order_of(g, x) == g.order();
        EXPECT_EQ(graph_generation_test(gr, c.type), gen);
        if (gen) {
          auto ex = reflections_of_graph(g, extract_minimum_subset(gr, c.type), c.type);
          EXPECT_EQ(ex.size(), g.rank());
          EXPECT_EQ(order_of(g, ex), g.order());
        }
        return true;
      });
  }
}

TEST(ClassMultiset, Examples) {
  auto b2 = build_group("B2");
  auto r = genset_class_multiset_invariance(b2, false);
  EXPECT_TRUE(r.verdict);
  ASSERT_EQ(r.multisets.size(), 1u);
  EXPECT_NE(r.multisets[0][0], r.multisets[0][1]);
  EXPECT_TRUE(genset_class_multiset_invariance(build_group("A3")).verdict);
  auto f4 = genset_class_multiset_invariance(build_group("F4"));
  EXPECT_TRUE(f4.verdict);
  EXPECT_GT(f4.checked, 0u);
}

TEST(ClassMultiset, ReductionMatchesFullScan) {
  for (const char* spec : {"B3", "I2(6)", "A2xA1"}) {
    auto g = build_group(spec);
    auto a = genset_class_multiset_invariance(g, true);
    auto b = genset_class_multiset_invariance(g, false);
    EXPECT_EQ(a.multisets, b.multisets) << spec;
  }
}

TEST(GensetProduct, D4GeneratingSetsUpToConjugacy) {
  auto g = build_group("D4");
  std::size_t checked = 0;
  for_each_combination(g.reflection_count(), 4, [&](std::span<const std::size_t> idx) {
    ReflectionTuple x(idx.begin(), idx.end());
    if (!is_conjugation_canonical(g, x) || !reflections_generate(g, x)) return true;
    ++checked;
    do EXPECT_TRUE(product_of_genset_is_qc(g, x));
    while (std::next_permutation(x.begin(), x.end()));
    return true;
  });
  EXPECT_GT(checked, 0u);
}

TEST(Combinations, CountsMatchBinomial) {
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::size_t k = 0; k <= n; ++k) {
      std::size_t count = 0;
      for_each_combination(n, k, [&](std::span<const std::size_t>) { return ++count, true; });
      EXPECT_EQ(count, binomial(n, k));
    }
}
