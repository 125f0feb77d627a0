#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "shadowdecomp/color.hpp"
#include "shadowdecomp/io.hpp"
#include "shadowdecomp/resample.hpp"
#include "testutil.hpp"

#include <filesystem>

using namespace shadowdecomp;
namespace fs = std::filesystem;

namespace {
std::string tmp_path(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}
}  // namespace

TEST_CASE("png round trip 8-bit values") {
  GrayImage g(1, 1);
  g(0, 0) = 1.0;
  const auto p = tmp_path("sd_gray1.png");
  save_gray(g, p, 8);
  CHECK(load_gray(p)(0, 0) == doctest::Approx(1.0));

  Image img(1, 1);
  img[0](0, 0) = 128.0 / 255.0;
  img[1](0, 0) = 0.0;
  img[2](0, 0) = 1.0;
  const auto p2 = tmp_path("sd_rgb1.png");
  save_image(img, p2, 8);
  const Image back = load_image(p2);
  CHECK(back[0](0, 0) == doctest::Approx(128.0 / 255.0));
  CHECK(back[1](0, 0) == doctest::Approx(0.0));
  CHECK(back[2](0, 0) == doctest::Approx(1.0));
}

TEST_CASE("quantization: 0.5 at depth 16 stores 32768") {
  GrayImage g(1, 1);
  g(0, 0) = 0.5;
  const auto p = tmp_path("sd_gray16.png");
  save_gray(g, p, 16);
  CHECK(load_gray(p)(0, 0) == doctest::Approx(32768.0 / 65535.0).epsilon(1e-12));
}

TEST_CASE("quantization: zero stays zero at both depths") {
  GrayImage g = GrayImage::Zero(2, 2);
  for (int depth : {8, 16}) {
    const auto p = tmp_path("sd_zero.png");
    save_gray(g, p, depth);
    CHECK((load_gray(p) == 0.0).all());
  }
}

TEST_CASE("missing file raises") {
  CHECK_THROWS_AS(load_image("/nonexistent/nope.png"), IoError);
}

TEST_CASE("16-bit round trip error bound (property)") {
  const Image img = testutil::random_image(13, 17);
  const auto p = tmp_path("sd_rt16.png");
  save_image(img, p, 16);
  const Image back = load_image(p);
  for (int c = 0; c < 3; ++c)
    CHECK((img[c] - back[c]).abs().maxCoeff() <= 1.0 / 131070.0);
}

TEST_CASE("resize_bilinear basics") {
  SUBCASE("constant stays constant") {
    const GrayImage g = GrayImage::Constant(5, 7, 0.37);
    const GrayImage r = resize_bilinear(g, 11, 3);
    CHECK((r == 0.37).all());
  }
  SUBCASE("2x1 to 3x1 half-pixel centers") {
    GrayImage g(1, 2);
    g << 0.0, 1.0;
    const GrayImage r = resize_bilinear(g, 1, 3);
    CHECK(r(0, 0) == doctest::Approx(0.0));
    CHECK(r(0, 1) == doctest::Approx(0.5));
    CHECK(r(0, 2) == doctest::Approx(1.0));
  }
  SUBCASE("identity size is bitwise copy") {
    const GrayImage g = testutil::random_image(6, 9)[1];
    const GrayImage r = resize_bilinear(g, 6, 9);
    CHECK((r == g).all());
  }
  SUBCASE("output stays within input range") {
    const GrayImage g = testutil::random_image(8, 8, 0.2, 0.8)[0];
    const GrayImage r = resize_bilinear(g, 21, 5);
    CHECK(r.minCoeff() >= g.minCoeff());
    CHECK(r.maxCoeff() <= g.maxCoeff());
  }
}

TEST_CASE("rgb_to_lab reference points") {
  Image img(1, 3);
  for (int c = 0; c < 3; ++c) {
    img[c](0, 0) = 1.0;
    img[c](0, 1) = 0.0;
    img[c](0, 2) = 0.5;
  }
  const LabImage lab = rgb_to_lab(img);
  CHECK(lab[0](0, 0) == doctest::Approx(100.0).epsilon(1e-5));
  CHECK(std::abs(lab[1](0, 0)) < 1e-3);
  CHECK(std::abs(lab[2](0, 0)) < 1e-3);
  CHECK(lab[0](0, 1) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(lab[0](0, 2) == doctest::Approx(53.389).epsilon(2e-4));
}

TEST_CASE("grays are neutral and L is increasing (property)") {
  double prev_l = -1;
  for (int i = 0; i <= 20; ++i) {
    const double g = i / 20.0;
    const Image img = Image::constant(1, 1, g);
    const LabImage lab = rgb_to_lab(img);
    CHECK(std::abs(lab[1](0, 0)) < 1e-6);
    CHECK(std::abs(lab[2](0, 0)) < 1e-6);
    CHECK(lab[0](0, 0) > prev_l);
    prev_l = lab[0](0, 0);
  }
}

TEST_CASE("mask save/load thresholds at 0.5") {
  const Mask m = testutil::random_mask(9, 9);
  const auto p = tmp_path("sd_mask.png");
  save_mask(m, p);
  CHECK((load_mask(p) == m).all());
}
