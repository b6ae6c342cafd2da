#include "qcf/classify.hpp"
#include "qcf/families.hpp"

#include <gtest/gtest.h>

using namespace qcf;

namespace {

PathSubcoalgebra point() {
  Quiver q;
  q.add_vertex("p");
  return full_path_coalgebra(q);
}

Classification classified(const std::vector<SummandSource>& parts) {
  auto res = classify(windowed_sum(parts));
  EXPECT_TRUE(res.ok()) << (res.failure ? res.failure->kind + " at " + res.failure->vertex : "");
  return res.ok() ? *res.classification : Classification{};
}

}  // namespace

TEST(Classify, CyclesAndPoint) {
  auto c = classified({WindowedFamily::cycle(3, 2), WindowedFamily::cycle(3, 2), point()});
  EXPECT_EQ(canonical_key(c), "2*C(3,2) + 1*K");
  EXPECT_FALSE(c.window_limited());
}

TEST(Classify, UnequalMaximalLengthOnCycle) {
  auto base = build_family(WindowedFamily::cycle(3, 1));
  auto basis = base.basis();
  basis.push_back(path_from_ids(base.quiver(), {"x0", "x1"}));
  PathSubcoalgebra c(base.quiver(), basis);
  ASSERT_TRUE(validate(c).empty());
  auto res = classify(c);
  ASSERT_FALSE(res.ok());
  EXPECT_EQ(res.failure->kind, "unequal-maximal-length");
  EXPECT_EQ(res.failure->vertex, "c0");
}

TEST(Classify, FiniteAcyclicWithArrowFails) {
  Quiver q;
  q.add_vertex("u");
  q.add_vertex("v");
  q.add_arrow("a", "u", "v");
  auto res = classify(full_path_coalgebra(q));
  ASSERT_FALSE(res.ok());
  EXPECT_EQ(res.failure->kind, "sink-with-incoming");
  EXPECT_EQ(res.failure->vertex, "v");
}

TEST(Classify, DegreeFailures) {
  Quiver q;
  q.add_vertex("u");
  q.add_vertex("v");
  q.add_vertex("w");
  q.add_arrow("a", "u", "v");
  q.add_arrow("b", "u", "w");
  auto res = classify(full_path_coalgebra(q));
  ASSERT_FALSE(res.ok());
  EXPECT_EQ(res.failure->kind, "out-degree");
}

TEST(Classify, LineWindowsMatchDeclaredTable) {
  auto f = WindowedFamily::constant_offset(FamilyTag::AInf, 0, 12, 2);
  auto c = classified({f});
  ASSERT_EQ(c.summands.size(), 1u);
  EXPECT_EQ(c.summands[0].key(), "Ainf|2");
  EXPECT_EQ(c.summands[0].key(), summand_of(f).key());
  EXPECT_TRUE(c.window_limited());

  auto h = WindowedFamily::line(FamilyTag::A0Inf, 0, 10, {1, 3, 4, 6, 8, 9, 11, 12, 13, 14, 15});
  auto ch = classified({h});
  EXPECT_EQ(ch.summands[0].key(), summand_of(h).key());
  EXPECT_EQ(ch.summands[0].key(), "A0inf[1,3,4,6,8,9]");
}

TEST(Classify, ShiftedLinesAreIsomorphic) {
  std::vector<long> r, shifted;
  for (long k = 0; k <= 15; ++k) r.push_back(k + 1 + k / 2);
  for (long k = -3; k <= 12; ++k) shifted.push_back(r[static_cast<std::size_t>(k + 3)] - 3);
  auto a = classified({WindowedFamily::line(FamilyTag::AInf, 0, 15, r)});
  auto b = classified({WindowedFamily::line(FamilyTag::AInf, -3, 12, shifted)});
  auto v = iso_check(a, b);
  EXPECT_TRUE(v.isomorphic);
  EXPECT_TRUE(v.window_limited);
}

TEST(Classify, CycleParametersDistinguish) {
  auto a = classified({WindowedFamily::cycle(2, 1)});
  auto b = classified({WindowedFamily::cycle(2, 1)});
  auto c = classified({WindowedFamily::cycle(4, 1)});
  EXPECT_TRUE(iso_check(a, b).isomorphic);
  EXPECT_FALSE(iso_check(a, c).isomorphic);
  EXPECT_FALSE(iso_check(a, c).window_limited);
}

TEST(AdmitsHopf, Trichotomy) {
  std::vector<SummandSource> points(7, point());
  EXPECT_EQ(admits_hopf(classified(points)).family, HopfFamily::III);
  auto two = admits_hopf(classified({WindowedFamily::cycle(4, 1), WindowedFamily::cycle(4, 1)}));
  EXPECT_EQ(two.family, HopfFamily::II);
  EXPECT_EQ(two.n, 4u);
  EXPECT_EQ(two.s, 1u);
  EXPECT_EQ(admits_hopf(classified({WindowedFamily::cycle(3, 1)})).family, HopfFamily::None);
  auto line = WindowedFamily::constant_offset(FamilyTag::AInf, 0, 10, 1);
  EXPECT_EQ(admits_hopf(classified({line, line})).family, HopfFamily::I);
  EXPECT_EQ(admits_hopf(classified({line, point()})).family, HopfFamily::None);
}
