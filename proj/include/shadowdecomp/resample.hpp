#pragma once

#include "shadowdecomp/image.hpp"

namespace shadowdecomp {

// Bilinear resize of a single plane. Half-pixel-center convention:
// src = (dst + 0.5) * scale - 0.5, clamped to the borders.
template <typename Scalar>
Plane<Scalar> resize_bilinear(const Plane<Scalar>& src, Eigen::Index out_h,
                              Eigen::Index out_w) {
  if (out_h < 1 || out_w < 1)
    throw std::invalid_argument("resize_bilinear: target size must be >= 1");
  const Eigen::Index in_h = src.rows(), in_w = src.cols();
  if (out_h == in_h && out_w == in_w) return src;

  Plane<Scalar> dst(out_h, out_w);
  const double sy = double(in_h) / double(out_h);
  const double sx = double(in_w) / double(out_w);
  for (Eigen::Index y = 0; y < out_h; ++y) {
    double fy = (y + 0.5) * sy - 0.5;
    if (fy < 0) fy = 0;
    if (fy > in_h - 1) fy = in_h - 1;
    const Eigen::Index y0 = Eigen::Index(fy);
    const Eigen::Index y1 = std::min(y0 + 1, in_h - 1);
    const double wy = fy - double(y0);
    for (Eigen::Index x = 0; x < out_w; ++x) {
      double fx = (x + 0.5) * sx - 0.5;
      if (fx < 0) fx = 0;
      if (fx > in_w - 1) fx = in_w - 1;
      const Eigen::Index x0 = Eigen::Index(fx);
      const Eigen::Index x1 = std::min(x0 + 1, in_w - 1);
      const double wx = fx - double(x0);
      const double top = (1 - wx) * src(y0, x0) + wx * src(y0, x1);
      const double bot = (1 - wx) * src(y1, x0) + wx * src(y1, x1);
      dst(y, x) = Scalar((1 - wy) * top + wy * bot);
    }
  }
  return dst;
}

template <typename Scalar>
ImageT<Scalar> resize_bilinear(const ImageT<Scalar>& src, Eigen::Index out_h,
                               Eigen::Index out_w) {
  ImageT<Scalar> dst;
  for (int c = 0; c < 3; ++c) dst.ch[c] = resize_bilinear(src.ch[c], out_h, out_w);
  return dst;
}

// Nearest-neighbor resize keeps masks binary.
inline Mask resize_nearest(const Mask& src, Eigen::Index out_h, Eigen::Index out_w) {
  if (out_h < 1 || out_w < 1)
    throw std::invalid_argument("resize_nearest: target size must be >= 1");
  const Eigen::Index in_h = src.rows(), in_w = src.cols();
  Mask dst(out_h, out_w);
  const double sy = double(in_h) / double(out_h);
  const double sx = double(in_w) / double(out_w);
  for (Eigen::Index y = 0; y < out_h; ++y) {
    Eigen::Index yy = Eigen::Index((y + 0.5) * sy);
    if (yy > in_h - 1) yy = in_h - 1;
    for (Eigen::Index x = 0; x < out_w; ++x) {
      Eigen::Index xx = Eigen::Index((x + 0.5) * sx);
      if (xx > in_w - 1) xx = in_w - 1;
      dst(y, x) = src(yy, xx);
    }
  }
  return dst;
}

}  // namespace shadowdecomp
