#include <gtest/gtest.h>

#include <string>

#include "rankcover/grid_map.hpp"

namespace rankcover {
namespace {

TEST(ParseAsciiMap, TopRowObstacles) {
  const GridMap m = parse_ascii_map("##\n..");
  ASSERT_EQ(m.width, 2);
  ASSERT_EQ(m.height, 2);
  EXPECT_TRUE(m.obstacle(0, 0));
  EXPECT_TRUE(m.obstacle(1, 0));
  EXPECT_FALSE(m.obstacle(0, 1));
  EXPECT_FALSE(m.obstacle(1, 1));
  EXPECT_DOUBLE_EQ(m.resolution, 1.0);
}

TEST(ParseAsciiMap, Empty) {
  const GridMap m = parse_ascii_map("");
  EXPECT_EQ(m.width, 0);
  EXPECT_EQ(m.height, 0);
  EXPECT_TRUE(m.occupancy.empty());
}

TEST(ParseAsciiMap, CheckerboardWithTrailingNewline) {
  const GridMap m = parse_ascii_map("#.\n.#\n");
  ASSERT_EQ(m.width, 2);
  ASSERT_EQ(m.height, 2);
  EXPECT_TRUE(m.obstacle(0, 0));
  EXPECT_FALSE(m.obstacle(1, 0));
  EXPECT_FALSE(m.obstacle(0, 1));
  EXPECT_TRUE(m.obstacle(1, 1));
}

TEST(ParseAsciiMap, RaggedLinesRejected) { EXPECT_THROW(parse_ascii_map("##\n.\n"), FormatError); }

TEST(ParseAsciiMap, IllegalCharacterReportsPosition) {
  try {
    parse_ascii_map("..\n.x\n");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_EQ(e.position(), 4u);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
}

TEST(ParseAsciiMap, RoundTripsThroughToAscii) {
  const std::string text = "#..#\n....\n##.#\n";
  EXPECT_EQ(to_ascii(parse_ascii_map(text)), text);
}

TEST(ParsePgm, AsciiThreshold) {
  const GridMap m = parse_pgm(std::string("P2\n2 1\n255\n0 255\n"), 128);
  ASSERT_EQ(m.width, 2);
  EXPECT_TRUE(m.obstacle(0, 0));
  EXPECT_FALSE(m.obstacle(1, 0));
}

TEST(ParsePgm, BinaryBoundaryIsFree) {
  std::string bytes = "P5\n1 1\n255\n";
  bytes.push_back(static_cast<char>(0x80));
  const GridMap m = parse_pgm(bytes, 128);
  ASSERT_EQ(m.width, 1);
  EXPECT_FALSE(m.obstacle(0, 0));
  bytes.back() = static_cast<char>(0x7f);
  EXPECT_TRUE(parse_pgm(bytes, 128).obstacle(0, 0));
}

TEST(ParsePgm, CommentsInHeader) {
  const GridMap m = parse_pgm(std::string("P2 # map\n# from a scan\n3 1 255\n10 200 127\n"));
  ASSERT_EQ(m.width, 3);
  EXPECT_TRUE(m.obstacle(0, 0));
  EXPECT_FALSE(m.obstacle(1, 0));
  EXPECT_TRUE(m.obstacle(2, 0));
}

TEST(ParsePgm, SixteenBitRejected) {
  EXPECT_THROW(parse_pgm(std::string("P2\n1 1\n65535\n0\n")), FormatError);
}

TEST(ParsePgm, BadMagicAndTruncation) {
  EXPECT_THROW(parse_pgm(std::string("P6\n1 1\n255\n")), FormatError);
  EXPECT_THROW(parse_pgm(std::string("P5\n2 2\n255\nab")), FormatError);
  EXPECT_THROW(parse_pgm(std::string("P2\n2 2\n255\n1 2 3")), FormatError);
  EXPECT_THROW(parse_pgm(std::string("")), FormatError);
}

}  // namespace
}  // namespace rankcover
