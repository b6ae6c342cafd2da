#include "qcf/poset.hpp"
#include "support/generators.hpp"

#include <gtest/gtest.h>

using namespace qcf;

namespace {

Poset diamond() { return Poset::from_covers({"bot", "m1", "m2", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}); }

}  // namespace

TEST(Poset, RejectsNonOrders) {
  EXPECT_THROW(Poset({"a", "b"}, {{true, true}, {true, true}}), std::invalid_argument);
  EXPECT_THROW(Poset({"a"}, {{false}}), std::invalid_argument);
  EXPECT_THROW(Poset({"a", "b", "c"}, {{true, true, false}, {false, true, true}, {false, false, true}}),
               std::invalid_argument);
  EXPECT_THROW(Poset::from_covers({"a", "b"}, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST(IncidenceSubcoalgebra, ValidateIntervalClosure) {
  Poset chain = Poset::chain(3);
  EXPECT_TRUE(validate(full_incidence_coalgebra(chain)).empty());
  IncidenceSubcoalgebra bad(chain, {{0, 0}, {2, 2}, {0, 2}});
  std::set<std::string> missing;
  for (const auto& v : validate(bad)) missing.insert(segment_label(chain, v.missing));
  EXPECT_EQ(missing, (std::set<std::string>{"[0,1]", "[1,1]", "[1,2]"}));
}

TEST(IncidenceSubcoalgebra, StackedDiamondWindowIsClosed) {
  for (unsigned w = 1; w <= 3; ++w)
    for (unsigned levels = 1; levels <= 4; ++levels) EXPECT_TRUE(validate(stacked_diamonds(w, levels)).empty());
}

TEST(IncidenceSubcoalgebra, Comultiplication) {
  Poset chain = Poset::chain(3);
  auto c = full_incidence_coalgebra(chain);
  Tensor<Segment> dxx;
  dxx.add({{1, 1}, {1, 1}}, Scalar(1));
  EXPECT_EQ(comul(c, {1, 1}), dxx);
  Tensor<Segment> d01;
  d01.add({{0, 0}, {0, 1}}, Scalar(1));
  d01.add({{0, 1}, {1, 1}}, Scalar(1));
  EXPECT_EQ(comul(c, {0, 1}), d01);
  EXPECT_EQ(comul(c, {0, 2}).size(), 3u);
  EXPECT_EQ(counit(c, {1, 1}), Scalar(1));
  EXPECT_EQ(counit(c, {0, 1}), Scalar(0));
}

TEST(IncidenceSubcoalgebra, CoalgebraAxiomsOnRandomInstances) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    Poset p = gen::random_poset(rng, 8);
    auto c = gen::random_incidence_subcoalgebra(rng, p);
    ASSERT_TRUE(validate(c).empty());
    auto t = to_table(c);
    EXPECT_FALSE(check_coassociativity(t).has_value());
    EXPECT_FALSE(check_counit(t).has_value());
  }
}

TEST(HasseQuiver, Covers) {
  EXPECT_EQ(hasse_quiver(Poset::antichain(4)).arrow_count(), 0u);
  Quiver chain = hasse_quiver(Poset::chain(3));
  ASSERT_EQ(chain.arrow_count(), 2u);
  EXPECT_TRUE(chain.is_arrow("0<1"));
  EXPECT_TRUE(chain.is_arrow("1<2"));
  EXPECT_EQ(hasse_quiver(diamond()).arrow_count(), 4u);
}

TEST(Embedding, ImagesOfSegments) {
  auto c = full_incidence_coalgebra(diamond());
  auto rep = embed(c);
  EXPECT_TRUE(rep.morphism);
  EXPECT_TRUE(rep.counit_compatible);
  EXPECT_TRUE(rep.injective);
  EXPECT_FALSE(rep.path_subcoalgebra_image);
  const auto& top = rep.images[c.index_of({0, 3})];
  EXPECT_EQ(top.size(), 2u);
  for (const auto& [path, coeff] : top) {
    EXPECT_EQ(path.length(), 2u);
    EXPECT_EQ(coeff, Scalar(1));
  }
  const auto& point = rep.images[c.index_of({1, 1})];
  ASSERT_EQ(point.size(), 1u);
  EXPECT_EQ(point.begin()->first, vertex_path(1));

  auto chain = embed(full_incidence_coalgebra(Poset::chain(3)));
  EXPECT_TRUE(chain.path_subcoalgebra_image);
}

TEST(Embedding, RandomSubcoalgebras) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    Poset p = gen::random_poset(rng, 9);
    auto rep = embed(gen::random_incidence_subcoalgebra(rng, p));
    EXPECT_TRUE(rep.morphism);
    EXPECT_TRUE(rep.counit_compatible);
    EXPECT_TRUE(rep.injective);
  }
}

TEST(TensorIso, SmallProducts) {
  auto point = tensor_iso_check(Poset::chain(1), Poset::chain(1));
  EXPECT_EQ(point.product_size, 1u);
  EXPECT_TRUE(point.holds());

  Poset sq = product_poset(Poset::chain(2), Poset::chain(2));
  EXPECT_EQ(sq.cover_pairs().size(), 4u);
  EXPECT_TRUE(tensor_iso_check(Poset::chain(2), Poset::chain(2)).holds());

  auto grid = tensor_iso_check(Poset::chain(3), Poset::chain(2));
  EXPECT_EQ(grid.product_size, 6u);
  EXPECT_EQ(grid.product_segments, grid.tensor_dimension);
  EXPECT_TRUE(grid.holds());
}

TEST(SegmentLength, LongestChain) {
  Poset p = Poset::from_covers({"a", "b", "c", "d"}, {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}});
  EXPECT_EQ(segment_length(p, {0, 0}), 0u);
  EXPECT_EQ(segment_length(p, {0, 3}), 3u);
  EXPECT_EQ(segment_length(diamond(), {0, 3}), 2u);
}
