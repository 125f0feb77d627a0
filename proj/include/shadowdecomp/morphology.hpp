#pragma once

#include "shadowdecomp/image.hpp"

namespace shadowdecomp {

// Penumbra decomposition of a shadow mask.
//   inner  = mask \ erode(mask)      (band just inside the boundary)
//   outer  = dilate(mask) \ mask     (band just outside)
struct PenumbraMasks {
  Mask inner;
  Mask outer;
  Mask dilated;
  Mask eroded;
};

// Erosion with a square structuring element of side 2*radius+1.
// Out-of-bounds counts as non-shadow, so the frame border erodes.
inline Mask erode(const Mask& mask, int radius) {
  if (radius < 0) throw std::invalid_argument("erode: negative radius");
  if (radius == 0) return mask;
  const Eigen::Index h = mask.rows(), w = mask.cols();

  // Separable min filter: rows then columns.
  Mask tmp(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      bool v = (x - radius >= 0) && (x + radius < w);
      for (Eigen::Index k = std::max<Eigen::Index>(0, x - radius);
           v && k <= std::min<Eigen::Index>(w - 1, x + radius); ++k)
        v = mask(y, k);
      tmp(y, x) = v;
    }
  }
  Mask out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      bool v = (y - radius >= 0) && (y + radius < h);
      for (Eigen::Index k = std::max<Eigen::Index>(0, y - radius);
           v && k <= std::min<Eigen::Index>(h - 1, y + radius); ++k)
        v = tmp(k, x);
      out(y, x) = v;
    }
  }
  return out;
}

// Dilation with the same structuring element; out-of-bounds contributes
// nothing.
inline Mask dilate(const Mask& mask, int radius) {
  if (radius < 0) throw std::invalid_argument("dilate: negative radius");
  if (radius == 0) return mask;
  const Eigen::Index h = mask.rows(), w = mask.cols();

  Mask tmp(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      bool v = false;
      for (Eigen::Index k = std::max<Eigen::Index>(0, x - radius);
           !v && k <= std::min<Eigen::Index>(w - 1, x + radius); ++k)
        v = mask(y, k);
      tmp(y, x) = v;
    }
  }
  Mask out(h, w);
  for (Eigen::Index y = 0; y < h; ++y) {
    for (Eigen::Index x = 0; x < w; ++x) {
      bool v = false;
      for (Eigen::Index k = std::max<Eigen::Index>(0, y - radius);
           !v && k <= std::min<Eigen::Index>(h - 1, y + radius); ++k)
        v = tmp(k, x);
      out(y, x) = v;
    }
  }
  return out;
}

inline PenumbraMasks penumbra_masks(const Mask& mask, int r_in = 5,
                                    int r_out = 5) {
  if (r_in < 1 || r_out < 1)
    throw std::invalid_argument("penumbra_masks: radii must be >= 1");
  PenumbraMasks pen;
  pen.dilated = dilate(mask, r_out);
  pen.eroded = erode(mask, r_in);
  pen.outer = pen.dilated && !mask;
  pen.inner = mask && !pen.eroded;
  return pen;
}

}  // namespace shadowdecomp
