#include <gtest/gtest.h>

#include <random>

#include "nlhd/decompose.hpp"
#include "oracles.hpp"

using namespace nlhd;

namespace {

const MatchParams kIllum{6, 8, 2, 6, 13};
const MatchParams kRefl{11, 16, 16, 10, 23};

double max_abs(const ImagePlane& a, const ImagePlane& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST(Aggregation, AveragesAndRequiresCoverage) {
  AggregationBuffer buf(1, 2);
  buf.add(0, 0, 1.0);
  buf.add(0, 0, 3.0);
  EXPECT_THROW(buf.resolve(), ImageError);
  buf.add(0, 1, 0.5);
  const auto out = buf.resolve();
  EXPECT_EQ(out(0, 0), 2.0);
  EXPECT_EQ(out(0, 1), 0.5);
}

TEST(DecomposePass, ConstantImage) {
  const ImageRGB img(20, 20, 0.3);
  const auto low = decompose_pass(img, kIllum, PassMode::Low);
  const auto high = decompose_pass(img, kIllum, PassMode::High);
  for (std::size_t c = 0; c < 3; ++c) {
    EXPECT_LT(max_abs(low[c], img[c]), 1e-15);
    EXPECT_LT(max_abs(high[c], ImagePlane(20, 20, 0.0)), 1e-15);
  }
}

TEST(DecomposePass, LowPlusHighIsIdentity) {
  const auto img = oracle::synthetic_scene(32, 32, 0.5, 3);
  for (const auto& mp : {kIllum, kRefl}) {
    const auto low = decompose_pass(img, mp, PassMode::Low);
    const auto high = decompose_pass(img, mp, PassMode::High);
    for (std::size_t c = 0; c < 3; ++c) {
      ImagePlane sum(32, 32);
      for (std::size_t i = 0; i < sum.size(); ++i) sum.values()[i] = low[c].values()[i] + high[c].values()[i];
      EXPECT_LT(max_abs(sum, img[c]), 1e-10);
    }
  }
}

TEST(DecomposePass, ThreadCountDoesNotChangeBits) {
  std::mt19937_64 rng(43);
  const auto img = oracle::random_image(rng, 30, 27);
  const auto one = decompose_pass(img, kIllum, PassMode::Low, 1);
  const auto many = decompose_pass(img, kIllum, PassMode::Low, 5);
  for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(one[c], many[c]);
}

TEST(DecomposePass, ProvenanceMatchesMatchGroups) {
  std::mt19937_64 rng(47);
  const auto img = oracle::random_image(rng, 20, 25);
  GroupProvenance recorded;
  decompose_pass(img, kIllum, PassMode::Low, 2, &recorded);
  const auto matched = match_groups(img, kIllum, 3);
  ASSERT_EQ(recorded.positions.size(), matched.positions.size());
  ASSERT_EQ(recorded.positions.size(), reference_positions(20, 25, kIllum).size());
  for (std::size_t i = 0; i < matched.positions.size(); ++i) {
    const auto& a = recorded.positions[i];
    const auto& b = matched.positions[i];
    EXPECT_EQ(a.reference, b.reference);
    EXPECT_EQ(a.channel, b.channel);
    EXPECT_EQ(a.origins, b.origins);
    EXPECT_EQ(a.rows, b.rows);
    EXPECT_EQ(a.origins.front(), a.reference);
    EXPECT_EQ(a.channel, select_matching_channel(img, a.reference, kIllum.patch_side));
    EXPECT_EQ(a.origins, block_match(img.channel(a.channel), a.reference, kIllum));
    EXPECT_EQ(a.group_rows(3).front(), 3);
  }
}

TEST(DecomposePass, TooSmallImageThrows) {
  EXPECT_THROW(decompose_pass(ImageRGB(5, 20, 0.1), kIllum, PassMode::Low), ParameterError);
}

TEST(Decompose, ConstantImage) {
  const ImageRGB img(24, 24, 0.4);
  const auto d = decompose(img, kIllum, kRefl);
  EXPECT_LT(max_abs(d.fused_illumination, ImagePlane(24, 24, 0.4)), 1e-15);
  EXPECT_LT(max_abs(d.fused_reflectance, ImagePlane(24, 24, 0.0)), 1e-15);
}

TEST(Decompose, DimensionsPreserved) {
  const auto img = oracle::synthetic_scene(100, 80);
  const auto d = decompose(img, kIllum, kRefl);
  for (const auto* p : {&d.fused_illumination, &d.fused_reflectance, &d.illumination[2], &d.reflectance[1]}) {
    EXPECT_EQ(p->height(), 100u);
    EXPECT_EQ(p->width(), 80u);
  }
}

TEST(Decompose, RecordsIlluminationProvenance) {
  const auto img = oracle::synthetic_scene(30, 30);
  GroupProvenance prov;
  decompose(img, kIllum, kRefl, {}, &prov);
  EXPECT_EQ(prov.params, kIllum);
  EXPECT_EQ(prov.height, 30u);
  EXPECT_FALSE(prov.empty());
}

TEST(Fuse, Illumination) {
  const auto f = fuse_illumination(ImagePlane(1, 1, 0.1), ImagePlane(1, 1, 0.4), ImagePlane(1, 1, 0.2));
  EXPECT_EQ(f(0, 0), 0.4);
  EXPECT_EQ(fuse_illumination(ImagePlane(1, 1, 0.3), ImagePlane(1, 1, 0.3), ImagePlane(1, 1, 0.3))(0, 0), 0.3);
  std::mt19937_64 rng(53);
  const auto a = oracle::random_plane(rng, 5, 5), b = oracle::random_plane(rng, 5, 5),
             c = oracle::random_plane(rng, 5, 5);
  const auto m = fuse_illumination(a, b, c);
  for (std::size_t i = 0; i < m.size(); ++i) {
    EXPECT_GE(m.values()[i], a.values()[i]);
    EXPECT_GE(m.values()[i], b.values()[i]);
    EXPECT_GE(m.values()[i], c.values()[i]);
  }
}

TEST(Fuse, ReflectanceKeepsSignOfRed) {
  auto p = [](double v) { return ImagePlane(1, 1, v); };
  EXPECT_EQ(fuse_reflectance(p(0.1), p(-0.2), p(0.05))(0, 0), 0.05);
  EXPECT_EQ(fuse_reflectance(p(-0.3), p(0.1), p(0.1))(0, 0), -0.3);
  EXPECT_EQ(fuse_reflectance(p(0), p(0), p(0))(0, 0), 0.0);
  EXPECT_EQ(fuse_reflectance(p(-0.3), p(0.1), p(0.2), true)(0, 0), 0.1);
}

TEST(Fuse, Display) {
  const auto d = reflectance_for_display(ImagePlane(1, 3, std::vector<double>{-1.0, 0.1, 0.7}));
  EXPECT_EQ(d(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(d(0, 1), 0.6);
  EXPECT_EQ(d(0, 2), 1.0);
}
