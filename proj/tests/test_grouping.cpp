#include <gtest/gtest.h>

#include <random>

#include "nlhd/grouping.hpp"
#include "oracles.hpp"

using namespace nlhd;

TEST(MatchParams, Validate) {
  EXPECT_NO_THROW(MatchParams{}.validate());
  EXPECT_NO_THROW((MatchParams{11, 16, 16, 10, 23}.validate()));
  EXPECT_THROW((MatchParams{6, 6, 2, 6, 13}.validate()), ParameterError);
  EXPECT_THROW((MatchParams{6, 8, 3, 6, 13}.validate()), ParameterError);
  EXPECT_THROW((MatchParams{2, 8, 8, 6, 13}.validate()), ParameterError);
  EXPECT_THROW((MatchParams{6, 8, 2, 0, 13}.validate()), ParameterError);
  EXPECT_THROW((MatchParams{6, 8, 2, 6, 5}.validate()), ParameterError);
}

TEST(PowerOfTwo, Helpers) {
  EXPECT_TRUE(is_power_of_two(1));
  EXPECT_TRUE(is_power_of_two(16));
  EXPECT_FALSE(is_power_of_two(0));
  EXPECT_FALSE(is_power_of_two(12));
  EXPECT_EQ(floor_power_of_two(0), 0u);
  EXPECT_EQ(floor_power_of_two(1), 1u);
  EXPECT_EQ(floor_power_of_two(15), 8u);
  EXPECT_EQ(floor_power_of_two(16), 16u);
}

TEST(MatchingChannel, PicksBrightestMean) {
  ImageRGB red(4, 4, 0.0);
  red.r() = ImagePlane(4, 4, 1.0);
  EXPECT_EQ(select_matching_channel(red, {0, 0}, 4), Channel::R);
  EXPECT_EQ(select_matching_channel(ImageRGB(4, 4, 0.5), {0, 0}, 4), Channel::R);
  ImageRGB img(ImagePlane(4, 4, 0.1), ImagePlane(4, 4, 0.4), ImagePlane(4, 4, 0.2));
  EXPECT_EQ(select_matching_channel(img, {0, 0}, 4), Channel::G);
  img.b() = ImagePlane(4, 4, 0.4);
  EXPECT_EQ(select_matching_channel(img, {0, 0}, 4), Channel::G);
  EXPECT_THROW(select_matching_channel(img, {1, 1}, 4), ParameterError);
}

TEST(BlockMatch, ConstantPlaneKeepsScanOrder) {
  const ImagePlane p(20, 20, 0.3);
  const MatchParams mp{4, 8, 2, 4, 4};
  const auto got = block_match(p, {6, 6}, mp);
  ASSERT_EQ(got.size(), 8u);
  EXPECT_EQ(got[0], (BlockOrigin{6, 6}));
  // Remaining seven are the first window positions in row-major order.
  const std::vector<BlockOrigin> want{{2, 2}, {2, 3}, {2, 4}, {2, 5}, {2, 6}, {2, 7}, {2, 8}};
  EXPECT_EQ(std::vector<BlockOrigin>(got.begin() + 1, got.end()), want);
}

TEST(BlockMatch, DuplicateRanksSecond) {
  std::mt19937_64 rng(5);
  auto p = oracle::random_plane(rng, 24, 24);
  for (int y = 0; y < 5; ++y) {
    for (int x = 0; x < 5; ++x) p(static_cast<std::size_t>(15 + y), static_cast<std::size_t>(14 + x)) = p(static_cast<std::size_t>(8 + y), static_cast<std::size_t>(9 + x));
  }
  const auto got = block_match(p, {8, 9}, MatchParams{5, 4, 2, 5, 10});
  EXPECT_EQ(got[1], (BlockOrigin{15, 14}));
}

TEST(BlockMatch, ShrinksToPowerOfTwoAtSmallWindows) {
  // 6x6 plane, 5x5 blocks: only four origins exist.
  const ImagePlane p(6, 6, 0.1);
  EXPECT_EQ(block_match(p, {0, 0}, MatchParams{5, 16, 2, 5, 5}).size(), 4u);
  const ImagePlane q(5, 7, 0.1);  // three origins -> two
  EXPECT_EQ(block_match(q, {0, 1}, MatchParams{5, 16, 2, 5, 5}).size(), 2u);
  const ImagePlane r(5, 5, 0.1);
  EXPECT_EQ(block_match(r, {0, 0}, MatchParams{5, 16, 2, 5, 5}).size(), 1u);
}

TEST(BlockMatch, MatchesBruteForce) {
  std::mt19937_64 rng(17);
  const auto p = oracle::random_plane(rng, 16, 16);
  const MatchParams mp{4, 4, 2, 3, 6};
  for (const auto& ref : reference_positions(16, 16, mp)) {
    ASSERT_EQ(block_match(p, ref, mp), oracle::block_match(p, ref, mp));
  }
}

TEST(BlockDistance, Direct) {
  ImagePlane p(2, 4, 0.0);
  p(0, 2) = 1.0;
  p(1, 3) = 2.0;
  EXPECT_DOUBLE_EQ(block_distance(p, {0, 0}, {0, 2}, 2), 5.0);
}

TEST(BlockGroup, SingleBlockAndLayout) {
  ImagePlane p(3, 3);
  for (std::size_t i = 0; i < 9; ++i) p.values()[i] = static_cast<double>(i);
  const std::vector<BlockOrigin> o{{1, 1}};
  const auto g = extract_block_group(p, o, 2, Channel::G);
  ASSERT_EQ(g.rows(), 4u);
  ASSERT_EQ(g.cols(), 1u);
  // Column-major inside the block.
  EXPECT_EQ(g.stack(0, 0), 4);
  EXPECT_EQ(g.stack(1, 0), 7);
  EXPECT_EQ(g.stack(2, 0), 5);
  EXPECT_EQ(g.stack(3, 0), 8);
  EXPECT_EQ(g.channel, Channel::G);
}

TEST(BlockGroup, ConstantAndDirectReads) {
  EXPECT_EQ(extract_block_group(ImagePlane(8, 8, 0.7), std::vector<BlockOrigin>{{0, 0}, {2, 3}}, 3,
                                Channel::R)
                .stack,
            Matrix(9, 2, 0.7));

  std::mt19937_64 rng(2);
  const auto img = oracle::random_image(rng, 12, 10);
  const std::vector<BlockOrigin> o{{0, 0}, {5, 3}, {7, 5}, {2, 6}};
  const auto groups = extract_block_groups(img, o, 4);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t col = 0; col < o.size(); ++col) {
      for (int dx = 0; dx < 4; ++dx) {
        for (int dy = 0; dy < 4; ++dy) {
          const auto row = static_cast<std::size_t>(dx * 4 + dy);
          ASSERT_EQ(groups[c].stack(row, col),
                    img[c](static_cast<std::size_t>(o[col].y + dy), static_cast<std::size_t>(o[col].x + dx)));
        }
      }
    }
  }
}

TEST(RowMatch, TwoRowsSqrtThree) {
  BlockGroup g;
  g.stack = Matrix(2, 3, std::vector<double>{0, 0, 0, 1, 1, 1});
  g.patch_side = 1;
  const auto m = row_match(g, 0, 2);
  EXPECT_DOUBLE_EQ(m.min_distance, std::sqrt(3.0));
  EXPECT_EQ(m.group.rows, (std::vector<int>{0, 1}));
  EXPECT_EQ(m.group.values, g.stack);
}

TEST(RowMatch, IdenticalRowsResolveToLowestIndices) {
  BlockGroup g;
  g.stack = Matrix(9, 4, 0.5);
  g.patch_side = 3;
  const auto m = row_match(g, 5, 4);
  EXPECT_EQ(m.group.rows, (std::vector<int>{5, 0, 1, 2}));
  EXPECT_EQ(m.min_distance, 0.0);
}

TEST(RowMatch, MatchesExhaustiveSort) {
  std::mt19937_64 rng(19);
  BlockGroup g;
  g.stack = oracle::random_matrix(rng, 36, 16, 0.0, 1.0);
  g.patch_side = 6;
  const RowDistanceTable table(g.stack);
  for (int ref = 0; ref < 36; ++ref) {
    const auto m = row_match(g, ref, 4);
    const auto order = oracle::row_order(g.stack, ref);
    ASSERT_EQ(m.group.rows, std::vector<int>(order.begin(), order.begin() + 4));
    ASSERT_NEAR(m.min_distance, oracle::row_distance(g.stack, ref, order[1]), 1e-12);
    const auto from_table = select_similar_rows(table.squared_from(static_cast<std::size_t>(ref)), ref, 4);
    ASSERT_EQ(from_table.rows, m.group.rows);
    ASSERT_EQ(from_table.min_distance, m.min_distance);
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 16; ++c) {
        ASSERT_EQ(m.group.values(r, c), g.stack(static_cast<std::size_t>(m.group.rows[r]), c));
      }
    }
  }
}

TEST(RowMatch, RangeErrors) {
  BlockGroup g;
  g.stack = Matrix(4, 2, 0.0);
  g.patch_side = 2;
  EXPECT_THROW(row_match(g, 4, 2), ParameterError);
  EXPECT_THROW(row_match(g, 0, 5), ParameterError);
}

TEST(ReferencePositions, Offsets) {
  EXPECT_EQ(reference_offsets(11, 11, 10), (std::vector<int>{0}));
  EXPECT_EQ(reference_offsets(21, 11, 10), (std::vector<int>{0, 10}));
  EXPECT_EQ(reference_offsets(25, 11, 10), (std::vector<int>{0, 10, 14}));
  EXPECT_THROW(reference_offsets(5, 6, 6), ParameterError);
  const auto pos = reference_positions(8, 10, MatchParams{6, 8, 2, 6, 13});
  EXPECT_EQ(pos, (std::vector<BlockOrigin>{{0, 0}, {0, 4}, {2, 0}, {2, 4}}));
}
