#pragma once

#include "shadowdecomp/image.hpp"

#include <cmath>

namespace shadowdecomp {

namespace detail {

template <typename Scalar>
Scalar srgb_to_linear(Scalar v) {
  return v <= Scalar(0.04045) ? v / Scalar(12.92)
                              : std::pow((v + Scalar(0.055)) / Scalar(1.055),
                                         Scalar(2.4));
}

template <typename Scalar>
Scalar lab_f(Scalar t) {
  constexpr double delta3 = 216.0 / 24389.0;   // (6/29)^3
  constexpr double kappa = 24389.0 / 27.0;
  return t > Scalar(delta3) ? std::cbrt(t)
                            : Scalar((kappa * t + 16.0) / 116.0);
}

}  // namespace detail

// sRGB (D65) to CIELAB. Inputs in [0,1]; L in [0,100].
template <typename Scalar>
LabImageT<Scalar> rgb_to_lab(const ImageT<Scalar>& img) {
  // D65 reference white taken as the matrix row sums, so any gray maps to
  // fx == fy == fz exactly and a == b == 0.
  constexpr double xn = 0.4124564 + 0.3575761 + 0.1804375;
  constexpr double yn = 0.2126729 + 0.7151522 + 0.0721750;
  constexpr double zn = 0.0193339 + 0.1191920 + 0.9503041;

  LabImageT<Scalar> lab(img.rows(), img.cols());
  for (Eigen::Index y = 0; y < img.rows(); ++y) {
    for (Eigen::Index x = 0; x < img.cols(); ++x) {
      const Scalar r = detail::srgb_to_linear(img[0](y, x));
      const Scalar g = detail::srgb_to_linear(img[1](y, x));
      const Scalar b = detail::srgb_to_linear(img[2](y, x));
      const Scalar X = Scalar(0.4124564) * r + Scalar(0.3575761) * g + Scalar(0.1804375) * b;
      const Scalar Y = Scalar(0.2126729) * r + Scalar(0.7151522) * g + Scalar(0.0721750) * b;
      const Scalar Z = Scalar(0.0193339) * r + Scalar(0.1191920) * g + Scalar(0.9503041) * b;
      const Scalar fx = detail::lab_f(Scalar(X / xn));
      const Scalar fy = detail::lab_f(Scalar(Y / yn));
      const Scalar fz = detail::lab_f(Scalar(Z / zn));
      lab[0](y, x) = Scalar(116) * fy - Scalar(16);
      lab[1](y, x) = Scalar(500) * (fx - fy);
      lab[2](y, x) = Scalar(200) * (fy - fz);
    }
  }
  return lab;
}

}  // namespace shadowdecomp
