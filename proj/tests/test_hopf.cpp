#include "qcf/group.hpp"
#include "qcf/hopf.hpp"
#include "qcf/quantum_line.hpp"

#include <gtest/gtest.h>

using namespace qcf;

namespace {

FiniteGroupData sweedler_group() { return cyclic_group_data(2, RootOfUnity(2, 1)); }

}  // namespace

TEST(Groups, BuiltinsAreGroups) {
  for (std::size_t n = 1; n <= 6; ++n) {
    EXPECT_FALSE(group_violation(cyclic_group(n)).has_value());
    EXPECT_FALSE(group_violation(dihedral_group(n)).has_value());
  }
  auto p = product_group(cyclic_group(4), cyclic_group(2));
  EXPECT_FALSE(group_violation(p).has_value());
  EXPECT_EQ(p.order(), 8u);
  EXPECT_EQ(p.exponent(), 4u);
  EXPECT_EQ(dihedral_group(3).exponent(), 6u);
  EXPECT_FALSE(dihedral_group(3).is_central(2));
  EXPECT_TRUE(dihedral_group(4).is_central(4));
}

TEST(Groups, CharacterCounts) {
  EXPECT_EQ(characters(cyclic_group(6)).size(), 6u);
  EXPECT_EQ(characters(product_group(cyclic_group(2), cyclic_group(2))).size(), 4u);
  EXPECT_EQ(characters(dihedral_group(3)).size(), 2u);
  EXPECT_EQ(characters(dihedral_group(4)).size(), 4u);
  for (const auto& chi : characters(dihedral_group(5))) EXPECT_TRUE(is_character(dihedral_group(5), chi));
}

TEST(Groups, CsvTables) {
  auto labelled = group_from_csv("*,e,a\ne,e,a\na,a,e\n");
  EXPECT_EQ(labelled.order(), 2u);
  EXPECT_EQ(labelled.identity, 0u);
  auto numeric = group_from_csv("1,2,0\n2,0,1\n0,1,2\n");
  EXPECT_EQ(numeric.identity, 2u);
  EXPECT_EQ(numeric.element_order(0), 3u);
  EXPECT_THROW(group_from_csv("0,1\n1,1\n"), std::invalid_argument);
  EXPECT_THROW(group_from_csv("0,1\n1\n"), std::invalid_argument);
}

TEST(Hopf, GroupAlgebra) {
  auto H = group_algebra(cyclic_group(3));
  EXPECT_TRUE(verify_hopf(H).ok());
  EXPECT_EQ(H.antipode[1], HElem(2));
  EXPECT_EQ(H.antipode[0], HElem(0));
}

TEST(Hopf, SweedlerAlgebra) {
  auto H = build_Hn(1, RootOfUnity(2, 1), sweedler_group(), Scalar(0));
  ASSERT_EQ(H.dimension(), 4u);
  auto rep = verify_hopf(H);
  EXPECT_TRUE(rep.ok()) << (rep.first_failure() ? rep.first_failure()->name : "");
  std::size_t x = hn_index(0, 1, 1), c = hn_index(1, 0, 1), cx = hn_index(1, 1, 1);
  EXPECT_TRUE(H.product[x][x].is_zero());
  EXPECT_EQ(multiply(H, HElem(x), HElem(c)), Scalar(-1) * H.product[c][x]);
  EXPECT_EQ(H.product[c][x], HElem(cx));
  auto s4 = antipode_power(H, 4);
  for (std::size_t a = 0; a < 4; ++a) EXPECT_EQ(s4[a], HElem(a));
  EXPECT_NE(antipode_power(H, 2)[x], HElem(x));
}

TEST(Hopf, DimensionIsOrderTimesLength) {
  RootOfUnity q(3, 1);
  auto H = build_Hn(2, q, cyclic_group_data(6, q), Scalar(1));
  EXPECT_EQ(H.dimension(), 18u);
}

TEST(Hopf, RejectsAlphaWithoutCharacterCondition) {
  FiniteGroupData d;
  d.group = cyclic_group(4);
  d.g = 2;
  for (unsigned k = 0; k < 4; ++k) d.chi.push_back(RootOfUnity(4, k));
  RootOfUnity q(2, 1);
  EXPECT_THROW(build_Hn(1, q, d, Scalar(1)), std::invalid_argument);
  auto H = build_Hn(1, q, d, Scalar(0));
  EXPECT_TRUE(verify_hopf(H).ok());
  EXPECT_THROW(build_Hn(2, q, d, Scalar(0)), std::invalid_argument);
}

TEST(Hopf, RejectsNonCentralElement) {
  FiniteGroupData d;
  d.group = dihedral_group(3);
  d.g = 2;
  d.chi = characters(d.group)[0];
  EXPECT_THROW(build_Hn(1, RootOfUnity(2, 1), d, Scalar(0)), std::invalid_argument);
}

TEST(Hopf, CorruptedTableFailsAssociativity) {
  auto H = build_Hn(1, RootOfUnity(2, 1), sweedler_group(), Scalar(0));
  H.product[hn_index(1, 0, 1)][hn_index(1, 0, 1)] = HElem(hn_index(1, 0, 1));
  auto rep = verify_hopf(H);
  ASSERT_FALSE(rep.ok());
  EXPECT_EQ(rep.first_failure()->name, "associativity");
}

TEST(Hopf, AntipodeIndependentOfBasisOrder) {
  RootOfUnity q(3, 1);
  auto H = build_Hn(2, q, cyclic_group_data(3, q), Scalar(1));
  const std::size_t n = H.dimension();
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = (n - 1 - i + 4) % n;
  auto P = permute(H, perm);
  EXPECT_TRUE(verify_hopf(P).ok());
  for (std::size_t a = 0; a < n; ++a) {
    HElem moved;
    for (const auto& [b, c] : H.antipode[a]) moved.add(perm[b], c);
    EXPECT_EQ(P.antipode[perm[a]], moved);
  }
}

TEST(QuantumLine, ProductExamples) {
  RootOfUnity m1(2, 1);
  auto e = product_Ainf(1, m1, Scalar(1), {3, 0}, {-1, 1});
  EXPECT_EQ(e, Element<AInfLabel>(AInfLabel{2, 1}));

  Element<AInfLabel> expect;
  expect.add({2, 0}, Scalar(1));
  expect.add({0, 0}, Scalar(-1));
  EXPECT_EQ(product_Ainf(1, m1, Scalar(1), {0, 1}, {0, 1}), expect);
  EXPECT_TRUE(product_Ainf(1, m1, Scalar(0), {0, 1}, {0, 1}).is_zero());

  RootOfUnity z3(3, 1);
  Scalar q = z3.to_scalar();
  EXPECT_EQ(product_Ainf(2, z3, Scalar(0), {0, 1}, {1, 1}), Element<AInfLabel>(AInfLabel{1, 2}, q * (Scalar(1) + q)));
}

TEST(QuantumLine, CycleProductExamples) {
  RootOfUnity m1(2, 1);
  EXPECT_EQ(product_Cn(4, 1, m1, Scalar(0), {0, 0}, {3, 1}), Element<CnLabel>(CnLabel{3, 1}));
  EXPECT_TRUE(product_Cn(2, 1, m1, Scalar(0), {0, 1}, {0, 1}).is_zero());
  Element<CnLabel> expect;
  expect.add({2, 0}, Scalar(1));
  expect.add({0, 0}, Scalar(-1));
  EXPECT_EQ(product_Cn(4, 1, m1, Scalar(1), {0, 1}, {0, 1}), expect);
  EXPECT_THROW(product_Cn(3, 1, m1, Scalar(0), {0, 0}, {0, 0}), std::invalid_argument);
}

TEST(QuantumLine, CoalgebraIsomorphism) {
  auto a = verify_coalgebra_iso_Cn(2, 1, RootOfUnity(2, 1), Scalar(0));
  EXPECT_TRUE(a.holds());
  EXPECT_EQ(a.pairs_checked, 16u);
  EXPECT_TRUE(verify_coalgebra_iso_Cn(4, 1, RootOfUnity(2, 1), Scalar(1)).holds());
  EXPECT_TRUE(verify_coalgebra_iso_Cn(6, 2, RootOfUnity(3, 1), Scalar(0)).holds());
  EXPECT_TRUE(verify_coalgebra_iso_Cn(6, 2, RootOfUnity(3, 2), Scalar(1)).holds());
}

TEST(QuantumLine, ComultiplicationMatchesPathSplitting) {
  auto t = comul_Ainf({-2, 3});
  EXPECT_EQ(t.size(), 4u);
  EXPECT_EQ(t.coefficient({{-2, 1}, {-1, 2}}), Scalar(1));
}
