#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "nlhd/io.hpp"

using namespace nlhd;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("nlhd_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST(Quantize, ClampAndRoundHalfUp) {
  EXPECT_EQ(quantize_u8(1.2), 255);
  EXPECT_EQ(quantize_u8(0.5), 128);
  EXPECT_EQ(quantize_u8(-0.1), 0);
  EXPECT_EQ(quantize_u8(1.0), 255);
  EXPECT_EQ(quantize_u8(0.0), 0);
}

TEST_F(IoTest, SingleWhiteAndBlackPixel) {
  save_image(ImageRGB(1, 1, 1.0), dir_ / "w.png");
  save_image(ImageRGB(1, 1, 0.0), dir_ / "k.png");
  EXPECT_EQ(load_image(dir_ / "w.png"), ImageRGB(1, 1, 1.0));
  EXPECT_EQ(load_image(dir_ / "k.png"), ImageRGB(1, 1, 0.0));
}

TEST_F(IoTest, ScalesByContainerMaximum) {
  ImageRGB img(2, 2, 0.0);
  img.r()(0, 0) = 128 / 255.0;
  img.g()(0, 0) = 64 / 255.0;
  img.b()(0, 0) = 32 / 255.0;
  save_image(img, dir_ / "a.png");
  const auto back = load_image(dir_ / "a.png");
  EXPECT_DOUBLE_EQ(back.r()(0, 0), 128 / 255.0);
  EXPECT_DOUBLE_EQ(back.g()(0, 0), 64 / 255.0);
  EXPECT_DOUBLE_EQ(back.b()(0, 0), 32 / 255.0);
  EXPECT_EQ(back.r()(1, 1), 0.0);
}

TEST_F(IoTest, SixteenBitAndGray) {
  cv::Mat m16(1, 2, CV_16UC3, cv::Scalar(0, 0, 0));
  m16.at<cv::Vec3w>(0, 1) = cv::Vec3w(65535, 32768, 1);  // BGR
  cv::imwrite((dir_ / "d.png").string(), m16);
  const auto img = load_image(dir_ / "d.png");
  EXPECT_DOUBLE_EQ(img.r()(0, 1), 1.0 / 65535.0);
  EXPECT_DOUBLE_EQ(img.g()(0, 1), 32768.0 / 65535.0);
  EXPECT_DOUBLE_EQ(img.b()(0, 1), 1.0);

  cv::Mat gray(1, 1, CV_8UC1, cv::Scalar(51));
  cv::imwrite((dir_ / "g.png").string(), gray);
  const auto g = load_image(dir_ / "g.png");
  EXPECT_DOUBLE_EQ(g.r()(0, 0), 0.2);
  EXPECT_EQ(g.r(), g.g());
  EXPECT_EQ(g.g(), g.b());
}

TEST_F(IoTest, JpegLoadsInRange) {
  cv::Mat m(8, 8, CV_8UC3, cv::Scalar(10, 120, 240));
  cv::imwrite((dir_ / "j.jpg").string(), m);
  const auto img = load_image(dir_ / "j.jpg");
  EXPECT_EQ(img.height(), 8u);
  EXPECT_NEAR(img.r()(4, 4), 240 / 255.0, 0.03);
}

TEST_F(IoTest, SavedValuesAreClampedAndRounded) {
  ImageRGB img(1, 3, 0.0);
  img.r()(0, 0) = 1.2;
  img.r()(0, 1) = 0.5;
  img.r()(0, 2) = -0.1;
  save_image(img, dir_ / "q.png");
  const auto back = load_image(dir_ / "q.png");
  EXPECT_EQ(back.r()(0, 0), 1.0);
  EXPECT_DOUBLE_EQ(back.r()(0, 1), 128 / 255.0);
  EXPECT_EQ(back.r()(0, 2), 0.0);
}

TEST_F(IoTest, Errors) {
  EXPECT_THROW(load_image(dir_ / "missing.png"), IoError);
  std::ofstream(dir_ / "x.png") << "not an image";
  EXPECT_FALSE(is_supported_image(dir_ / "x.png"));
  EXPECT_THROW(load_image(dir_ / "x.png"), IoError);
  std::ofstream(dir_ / "t.png", std::ios::binary) << "\x89PNG\r\n\x1a\n garbage";
  EXPECT_TRUE(is_supported_image(dir_ / "t.png"));
  EXPECT_THROW(load_image(dir_ / "t.png"), IoError);
  EXPECT_THROW(save_image(ImageRGB(1, 1), dir_ / "no" / "such" / "dir.png"), IoError);
}
