#pragma once

#include <Eigen/Core>

#include <array>
#include <stdexcept>
#include <string>

namespace shadowdecomp {

// Single channel raster, (row, col) = (y, x), values nominally in [0,1].
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Binary raster, true = shadow.
using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// Three-channel raster stored as RGB planes.
template <typename Scalar>
struct ImageT {
  std::array<Plane<Scalar>, 3> ch;

  ImageT() = default;
  ImageT(Eigen::Index height, Eigen::Index width) {
    for (auto& p : ch) p.setZero(height, width);
  }
  static ImageT constant(Eigen::Index height, Eigen::Index width, Scalar v) {
    ImageT img(height, width);
    for (auto& p : img.ch) p.setConstant(v);
    return img;
  }

  Eigen::Index rows() const { return ch[0].rows(); }
  Eigen::Index cols() const { return ch[0].cols(); }

  Plane<Scalar>& operator[](int c) { return ch[c]; }
  const Plane<Scalar>& operator[](int c) const { return ch[c]; }
};

// Per-pixel (L, a, b); L in [0,100] for inputs in [0,1]^3.
template <typename Scalar>
struct LabImageT {
  std::array<Plane<Scalar>, 3> ch;  // L, a, b

  LabImageT() = default;
  LabImageT(Eigen::Index height, Eigen::Index width) {
    for (auto& p : ch) p.setZero(height, width);
  }
  Eigen::Index rows() const { return ch[0].rows(); }
  Eigen::Index cols() const { return ch[0].cols(); }
  Plane<Scalar>& operator[](int c) { return ch[c]; }
  const Plane<Scalar>& operator[](int c) const { return ch[c]; }
};

using Image = ImageT<double>;
using GrayImage = Plane<double>;
using Matte = Plane<double>;
using LabImage = LabImageT<double>;

template <typename Scalar>
bool same_size(const ImageT<Scalar>& a, const ImageT<Scalar>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols();
}

template <typename Scalar>
void require_same_size(const ImageT<Scalar>& a, const ImageT<Scalar>& b,
                       const std::string& what) {
  if (!same_size(a, b))
    throw std::invalid_argument(what + ": dimension mismatch");
}

inline void require_same_size(Eigen::Index ar, Eigen::Index ac,
                              Eigen::Index br, Eigen::Index bc,
                              const std::string& what) {
  if (ar != br || ac != bc)
    throw std::invalid_argument(what + ": dimension mismatch");
}

template <typename Scalar>
ImageT<Scalar> clamp01(ImageT<Scalar> img) {
  for (auto& p : img.ch) p = p.min(Scalar(1)).max(Scalar(0));
  return img;
}

}  // namespace shadowdecomp
