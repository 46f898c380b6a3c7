#include <gtest/gtest.h>

#include <random>

#include "nlhd/color.hpp"
#include "nlhd/color_correct.hpp"
#include "oracles.hpp"

using namespace nlhd;

namespace {

const MatchParams kIllum{6, 8, 2, 6, 13};

ImageRGB red_cast(std::size_t h, std::size_t w, double cast) {
  ImageRGB img = oracle::synthetic_scene(h, w, 0.6, 5);
  for (double& v : img.r().values()) v = std::min(1.0, v + cast);
  return img;
}

}  // namespace

TEST(Deviation, GrayIsNeutral) {
  EXPECT_LT(compute_color_deviation(ImageRGB(4, 4, 0.37)).magnitude, 0.01);
}

TEST(Deviation, SaturatedRedMatchesLabMean) {
  ImageRGB img(3, 3, 0.0);
  img.r() = ImagePlane(3, 3, 1.0);
  const auto d = compute_color_deviation(img);
  const auto lab = oracle::lab(1, 0, 0);
  EXPECT_NEAR(d.mean_a, lab[1], 1e-9);
  EXPECT_NEAR(d.mean_b, lab[2], 1e-9);
  EXPECT_NEAR(d.magnitude, std::hypot(lab[1], lab[2]), 1e-9);
  EXPECT_NEAR(d.magnitude, std::hypot(oracle::kSkimageLab[1].lab[1], oracle::kSkimageLab[1].lab[2]), 0.05);
}

TEST(Deviation, MeanOfRandomImage) {
  std::mt19937_64 rng(83);
  const auto img = oracle::random_image(rng, 6, 5);
  double sa = 0, sb = 0;
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    const auto l = oracle::lab(img.r().values()[i], img.g().values()[i], img.b().values()[i]);
    sa += l[1];
    sb += l[2];
  }
  const auto d = compute_color_deviation(img);
  EXPECT_NEAR(d.mean_a, sa / 30, 1e-9);
  EXPECT_NEAR(d.mean_b, sb / 30, 1e-9);
}

TEST(SaturationGamma, Examples) {
  const ColorCorrectParams p;
  EXPECT_EQ(compute_saturation_gamma(0.0, 0.2, 0.3, 0.4, p), 1.0);
  EXPECT_EQ(compute_saturation_gamma(1e9, 0.2, 0.3, 0.4, p), 4.5);
  // min_m = 0.02, std_m = 0.01: 1 + 0.13/0.03 = 5.33 -> 4.5
  const double s = 0.01 / std::sqrt(2.0);  // deviations (-s, -s, 2s)
  EXPECT_EQ(compute_saturation_gamma(10.0, 0.02, 0.02, 0.02 + 3 * s, p), 4.5);
  // An unclamped case against the formula.
  const double g = compute_saturation_gamma(5.0, 0.3, 0.4, 0.5, p);
  const double std_m = std::sqrt(((0.1 * 0.1) * 2) / 3);
  EXPECT_NEAR(g, 1.0 + 0.013 * 5.0 / (0.3 + std_m + 1e-6), 1e-12);
}

TEST(SaturationGamma, AlwaysInRange) {
  std::mt19937_64 rng(89);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ColorCorrectParams p;
  for (int i = 0; i < 100000; ++i) {
    const double g = compute_saturation_gamma(200 * u(rng), u(rng), u(rng), u(rng), p);
    ASSERT_GE(g, 1.0);
    ASSERT_LE(g, 4.5);
  }
  EXPECT_EQ(compute_saturation_gamma(3.0, 0.0, 0.0, 0.0, p), 4.5);
}

TEST(CorrectSaturation, NeutralDeviationIsIdentity) {
  const auto img = oracle::synthetic_scene(24, 24, 0.7);
  const auto prov = match_groups(img, kIllum);
  const auto out = correct_saturation(img, 0.0, ColorCorrectParams{}, prov);
  for (std::size_t c = 0; c < 3; ++c) {
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
      ASSERT_NEAR(out[c].values()[i], img[c].values()[i], 1e-10);
    }
  }
}

TEST(CorrectSaturation, GrayUnchanged) {
  const ImageRGB gray(20, 20, 0.45);
  const auto prov = match_groups(gray, kIllum);
  const auto out = correct_saturation(gray, 30.0, ColorCorrectParams{}, prov);
  for (std::size_t c = 0; c < 3; ++c) {
    for (double v : out[c].values()) ASSERT_NEAR(v, 0.45, 1e-10);
  }
}

TEST(CorrectSaturation, ReducesSaturationAndCast) {
  const auto img = red_cast(36, 36, 0.25);
  const auto prov = match_groups(img, kIllum);
  const auto before = compute_color_deviation(img);
  const auto out = correct_saturation(img, before.magnitude, ColorCorrectParams{}, prov);
  const auto after = compute_color_deviation(out);
  EXPECT_LE(after.magnitude, before.magnitude);
  const auto s_in = rgb_to_hsv(img);
  const auto s_out = rgb_to_hsv(out);
  for (std::size_t i = 0; i < img.pixel_count(); ++i) {
    EXPECT_LE(s_out.s.values()[i], s_in.s.values()[i] + 1e-12);
    EXPECT_NEAR(s_out.v.values()[i], s_in.v.values()[i], 1e-12);
  }
}

TEST(CorrectSaturation, Deterministic) {
  const auto img = red_cast(30, 33, 0.2);
  const auto prov = match_groups(img, kIllum);
  EXPECT_EQ(correct_saturation(img, 12.0, {}, prov, 1), correct_saturation(img, 12.0, {}, prov, 3));
}

TEST(CorrectSaturation, ProvenanceErrors) {
  const ImageRGB img(20, 20, 0.3);
  EXPECT_THROW(correct_saturation(img, 1.0, {}, GroupProvenance{}), ParameterError);
  const auto other = match_groups(ImageRGB(20, 24, 0.3), kIllum);
  EXPECT_THROW(correct_saturation(img, 1.0, {}, other), ParameterError);
}
