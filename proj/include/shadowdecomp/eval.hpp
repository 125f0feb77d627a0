#pragma once

#include "shadowdecomp/color.hpp"
#include "shadowdecomp/resample.hpp"

#include <optional>

namespace shadowdecomp {

struct EvalReport {
  std::optional<double> mae_shadow;     // absent when the region is empty
  std::optional<double> mae_nonshadow;
  double mae_all = 0.0;
  std::size_t n_shadow = 0;
  std::size_t n_nonshadow = 0;
  Eigen::Index eval_w = 256;
  Eigen::Index eval_h = 256;
};

// Lab-space mean absolute error over the shadow region, its complement, and
// the whole frame, at the evaluation resolution.
template <typename Scalar>
EvalReport mae_report(const ImageT<Scalar>& result, const ImageT<Scalar>& gt,
                      const Mask& mask, Eigen::Index eval_w = 256,
                      Eigen::Index eval_h = 256) {
  require_same_size(result, gt, "mae_report");
  require_same_size(result.rows(), result.cols(), mask.rows(), mask.cols(),
                    "mae_report");

  const auto lab_res = rgb_to_lab(resize_bilinear(result, eval_h, eval_w));
  const auto lab_gt = rgb_to_lab(resize_bilinear(gt, eval_h, eval_w));
  const Mask m = resize_nearest(mask, eval_h, eval_w);

  double acc_s = 0, acc_n = 0;
  std::size_t n_s = 0, n_n = 0;
  for (Eigen::Index y = 0; y < eval_h; ++y)
    for (Eigen::Index x = 0; x < eval_w; ++x) {
      double d = 0;
      for (int c = 0; c < 3; ++c)
        d += std::abs(double(lab_res.ch[c](y, x)) - double(lab_gt.ch[c](y, x)));
      d /= 3.0;
      if (m(y, x)) {
        acc_s += d;
        ++n_s;
      } else {
        acc_n += d;
        ++n_n;
      }
    }

  EvalReport rep;
  rep.eval_w = eval_w;
  rep.eval_h = eval_h;
  rep.n_shadow = n_s;
  rep.n_nonshadow = n_n;
  if (n_s) rep.mae_shadow = acc_s / double(n_s);
  if (n_n) rep.mae_nonshadow = acc_n / double(n_n);
  rep.mae_all = (acc_s + acc_n) / double(n_s + n_n);
  return rep;
}

struct ColorCorrection {
  Eigen::Array3d a = Eigen::Array3d::Ones();
  Eigen::Array3d c = Eigen::Array3d::Zero();
  std::array<bool, 3> degenerate = {false, false, false};
  ImageT<double> corrected;
};

// Per-channel unconstrained least squares gt' = a*gt + c, fit on the
// non-shadow region against the shadow image, applied to every pixel.
template <typename Scalar>
ColorCorrection color_correct_gt(const ImageT<Scalar>& shadow,
                                 const ImageT<Scalar>& gt, const Mask& mask) {
  require_same_size(shadow, gt, "color_correct_gt");
  require_same_size(shadow.rows(), shadow.cols(), mask.rows(), mask.cols(),
                    "color_correct_gt");
  const std::size_t n_nonshadow = std::size_t((!mask).count());
  if (n_nonshadow < 2)
    throw std::invalid_argument(
        "color_correct_gt: non-shadow region needs >= 2 pixels");

  ColorCorrection cc;
  cc.corrected = ImageT<double>(gt.rows(), gt.cols());
  for (int ch = 0; ch < 3; ++ch) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (Eigen::Index y = 0; y < gt.rows(); ++y)
      for (Eigen::Index x = 0; x < gt.cols(); ++x) {
        if (mask(y, x)) continue;
        const double g = double(gt.ch[ch](y, x));
        const double s = double(shadow.ch[ch](y, x));
        sx += g;
        sy += s;
        sxx += g * g;
        sxy += g * s;
      }
    const double n = double(n_nonshadow);
    const double det = n * sxx - sx * sx;
    double a = 1.0, c = 0.0;
    if (det <= 1e-12 * n * std::max(1.0, sxx)) {
      cc.degenerate[ch] = true;
    } else {
      a = (n * sxy - sx * sy) / det;
      c = (sxx * sy - sx * sxy) / det;
    }
    cc.a[ch] = a;
    cc.c[ch] = c;
    cc.corrected.ch[ch] =
        (a * gt.ch[ch].template cast<double>() + c).min(1.0).max(0.0);
  }
  return cc;
}

}  // namespace shadowdecomp
