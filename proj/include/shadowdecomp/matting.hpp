#pragma once

#include "shadowdecomp/morphology.hpp"
#include "shadowdecomp/resample.hpp"

#include <cmath>
#include <vector>

namespace shadowdecomp {

// Clamp the matte to the weakly-supervised convention: 1 on the umbra region
// (mask minus the inner band), 0 outside the dilated mask, untouched on the
// penumbra band.
template <typename Derived>
Plane<typename Derived::Scalar> enforce_matte_constraints(
    const Eigen::DenseBase<Derived>& matte_in, const PenumbraMasks& pen) {
  using Scalar = typename Derived::Scalar;
  Plane<Scalar> matte = matte_in;
  // mask \ inner == eroded, so the eroded mask is the umbra region.
  require_same_size(matte.rows(), matte.cols(), pen.eroded.rows(),
                    pen.eroded.cols(), "enforce_matte_constraints");
  for (Eigen::Index y = 0; y < matte.rows(); ++y)
    for (Eigen::Index x = 0; x < matte.cols(); ++x) {
      if (pen.eroded(y, x))
        matte(y, x) = Scalar(1);
      else if (!pen.dilated(y, x))
        matte(y, x) = Scalar(0);
    }
  return matte;
}

// Resolution transfer of a matte; the shadow parameters stay the same.
template <typename Scalar>
Plane<Scalar> interpolate_matte(const Plane<Scalar>& matte, Eigen::Index out_h,
                                Eigen::Index out_w) {
  return resize_bilinear(matte, out_h, out_w).min(Scalar(1)).max(Scalar(0));
}

// Soft matte fixture: Gaussian blur of the binary mask, kernel truncated at
// 3*sigma and renormalized. sigma = 0 returns the mask itself.
template <typename Scalar = double>
Plane<Scalar> matte_from_gaussian_boundary(const Mask& mask, double sigma) {
  if (sigma < 0)
    throw std::invalid_argument("matte_from_gaussian_boundary: negative sigma");
  Plane<Scalar> matte = mask.cast<Scalar>();
  if (sigma == 0) return matte;

  const int r = std::max(1, int(std::ceil(3.0 * sigma)));
  std::vector<Scalar> kernel(2 * r + 1);
  Scalar norm = 0;
  for (int i = -r; i <= r; ++i) {
    kernel[i + r] = Scalar(std::exp(-0.5 * (i * i) / (sigma * sigma)));
    norm += kernel[i + r];
  }
  for (auto& k : kernel) k /= norm;

  const Eigen::Index h = matte.rows(), w = matte.cols();
  Plane<Scalar> tmp = Plane<Scalar>::Zero(h, w);
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x) {
      Scalar acc = 0;
      for (int i = -r; i <= r; ++i) {
        const Eigen::Index xx = x + i;
        if (xx >= 0 && xx < w) acc += kernel[i + r] * matte(y, xx);
      }
      tmp(y, x) = acc;
    }
  Plane<Scalar> out = Plane<Scalar>::Zero(h, w);
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x) {
      Scalar acc = 0;
      for (int i = -r; i <= r; ++i) {
        const Eigen::Index yy = y + i;
        if (yy >= 0 && yy < h) acc += kernel[i + r] * tmp(yy, x);
      }
      out(y, x) = acc;
    }
  return out;
}

}  // namespace shadowdecomp
