#include <gtest/gtest.h>

#include <limits>

#include "pe/ratio.hpp"

using pe::Ratio;

TEST(Ratio, ExactArithmetic) {
    EXPECT_EQ(Ratio(1) - Ratio(1, 100), Ratio(99, 100));
    EXPECT_EQ(Ratio(99, 100) + Ratio(1, 100), Ratio(1));
    EXPECT_LT(Ratio(21) - Ratio(1, 100), Ratio(21));
    EXPECT_EQ(Ratio(2, 3) * Ratio(3, 4), Ratio(1, 2));
    EXPECT_EQ(Ratio(1, 2) / Ratio(1, 4), Ratio(2));
    EXPECT_EQ(-Ratio(3, 6), Ratio(-1, 2));
}

TEST(Ratio, Normalization) {
    EXPECT_EQ(Ratio(4, 8).num(), 1);
    EXPECT_EQ(Ratio(4, 8).den(), 2);
    EXPECT_EQ(Ratio(3, -6).num(), -1);
    EXPECT_EQ(Ratio(3, -6).den(), 2);
    EXPECT_EQ(Ratio(0, 5), Ratio());
}

TEST(Ratio, FloorCeil) {
    EXPECT_EQ(Ratio(7, 2).floor(), 3);
    EXPECT_EQ(Ratio(7, 2).ceil(), 4);
    EXPECT_EQ(Ratio(-7, 2).floor(), -4);
    EXPECT_EQ(Ratio(-7, 2).ceil(), -3);
    EXPECT_EQ(Ratio(6, 2).ceil(), 3);
}

TEST(Ratio, ParseAndPrint) {
    EXPECT_EQ(Ratio::parse("1/3"), Ratio(1, 3));
    EXPECT_EQ(Ratio::parse("-4"), Ratio(-4));
    EXPECT_EQ(Ratio::parse("10/4"), Ratio(5, 2));
    EXPECT_EQ(Ratio(5, 2).str(), "5/2");
    EXPECT_EQ(Ratio(3).str(), "3/1");
    EXPECT_THROW(Ratio::parse("1/0"), std::invalid_argument);
    EXPECT_THROW(Ratio::parse("abc"), std::invalid_argument);
    EXPECT_THROW(Ratio::parse("1.5"), std::invalid_argument);
    EXPECT_THROW(Ratio::parse(""), std::invalid_argument);
}

TEST(Ratio, Errors) {
    EXPECT_THROW(Ratio(1, 0), std::domain_error);
    EXPECT_THROW(Ratio(1) / Ratio(0), std::domain_error);
    const auto big = std::numeric_limits<std::int64_t>::max();
    EXPECT_THROW(Ratio(big) * Ratio(2), std::overflow_error);
    EXPECT_THROW(Ratio(1, big) + Ratio(1, big - 1), std::overflow_error);
}

TEST(Ratio, Ordering) {
    EXPECT_LT(Ratio(1, 3), Ratio(1, 2));
    EXPECT_GT(Ratio(-1, 3), Ratio(-1, 2));
    EXPECT_EQ(pe::max(Ratio(1, 3), Ratio(1, 2)), Ratio(1, 2));
    EXPECT_EQ(pe::min(Ratio(1, 3), Ratio(1, 2)), Ratio(1, 3));
}
