#include <gtest/gtest.h>

#include "coxeter/datum.hpp"

using namespace coxeter;

TEST(Datum, SingleFactors) {
  auto b3 = parse_group("B3");
  ASSERT_EQ(b3.factors.size(), 1u);
  EXPECT_EQ(b3.factors[0].family, Family::B);
  EXPECT_EQ(b3.rank(), 3);

  auto i = parse_group("I2(30)");
  EXPECT_TRUE(i.factors[0].is_dihedral());
  EXPECT_EQ(i.factors[0].m, 30);
  EXPECT_EQ(i.rank(), 2);
}

TEST(Datum, Products) {
  auto d = parse_group("A2xI2(5)");
  ASSERT_EQ(d.factors.size(), 2u);
  EXPECT_EQ(d.rank(), 4);
  EXPECT_EQ(d.name(), "A2xI2(5)");
  EXPECT_EQ(parse_group("A1xA1xA1").rank(), 3);
}

TEST(Datum, WholeGroupSupport) {
  EXPECT_TRUE(parse_group("E6").whole_group_supported());
  EXPECT_FALSE(parse_group("E7").whole_group_supported());
  EXPECT_FALSE(parse_group("A1xE8").whole_group_supported());
}

TEST(Datum, NamesRoundTrip) {
  for (const char* s : {"A1", "B2", "D4", "E6", "F4", "H3", "H4", "I2(7)", "B3xA2", "I2(3)xI2(4)"})
    EXPECT_EQ(parse_group(s).name(), s);
}

TEST(Datum, ErrorsCarryPositionAndToken) {
  struct Case {
    const char* spec;
    std::size_t pos;
    const char* token;
  };
  for (const Case& c : {Case{"Q3", 0, "Q3"}, Case{"A3xZ2", 3, "Z2"}, Case{"D3", 0, "D3"}, Case{"F5", 0, "F5"},
                        Case{"I2(2)", 0, "I2(2)"}, Case{"A", 1, "A"}, Case{"A3y", 2, "y"}, Case{"I2(5", 4, "I2(5"},
                        Case{"B1", 0, "B1"}, Case{"A3x", 3, "A3x"}}) {
    try {
      parse_group(c.spec);
      ADD_FAILURE() << c.spec << " parsed";
    } catch (const ParseError& e) {
      EXPECT_EQ(e.position, c.pos) << c.spec;
      EXPECT_FALSE(e.token.empty()) << c.spec;
    }
  }
  EXPECT_THROW(parse_group(""), ParseError);
}
