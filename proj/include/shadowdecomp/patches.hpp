#pragma once

#include "shadowdecomp/illum.hpp"
#include "shadowdecomp/matting.hpp"

#include <vector>

namespace shadowdecomp {

enum class PatchLabel { NonShadow, Boundary, FullShadow };

struct PatchOrigin {
  Eigen::Index x = 0;  // column of the top-left corner
  Eigen::Index y = 0;  // row of the top-left corner
};

// Sliding-window grid: origins at multiples of `step`, row-major; windows
// that would cross the right/bottom edge are not generated.
struct PatchGrid {
  Eigen::Index patch_size = 128;
  Eigen::Index step = 32;
  std::vector<PatchOrigin> origins;
};

struct PatchSet {
  std::vector<PatchLabel> labels;  // one per origin
};

template <typename Scalar>
std::pair<PatchGrid, PatchSet> extract_and_classify(const ImageT<Scalar>& image,
                                                    const Mask& mask,
                                                    Eigen::Index patch_size = 128,
                                                    Eigen::Index step = 32) {
  require_same_size(image.rows(), image.cols(), mask.rows(), mask.cols(),
                    "extract_and_classify");
  if (step < 1) throw std::invalid_argument("extract_and_classify: step < 1");
  if (patch_size > image.cols() || patch_size > image.rows())
    throw std::invalid_argument("extract_and_classify: patch larger than image");

  PatchGrid grid;
  grid.patch_size = patch_size;
  grid.step = step;
  PatchSet set;
  for (Eigen::Index y = 0; y + patch_size <= image.rows(); y += step)
    for (Eigen::Index x = 0; x + patch_size <= image.cols(); x += step) {
      grid.origins.push_back({x, y});
      const auto block = mask.block(y, x, patch_size, patch_size);
      const Eigen::Index n_shadow = block.count();
      PatchLabel label = PatchLabel::Boundary;
      if (n_shadow == 0)
        label = PatchLabel::NonShadow;
      else if (n_shadow == patch_size * patch_size)
        label = PatchLabel::FullShadow;
      set.labels.push_back(label);
    }
  return {std::move(grid), std::move(set)};
}

// Whole-image parameters as the uniform mean of the boundary-patch
// parameters, clamped back into the box.
inline ShadowParams aggregate_params(const std::vector<ShadowParams>& patch_params) {
  if (patch_params.empty())
    throw std::invalid_argument("aggregate_params: no boundary patches");
  ShadowParams out;
  out.box = patch_params.front().box;
  out.w.setZero();
  out.b.setZero();
  for (const auto& p : patch_params) {
    out.w += p.w;
    out.b += p.b;
  }
  out.w /= double(patch_params.size());
  out.b /= double(patch_params.size());
  out.w = out.w.min(out.box.w_hi).max(out.box.w_lo);
  out.b = out.b.min(out.box.b_hi).max(out.box.b_lo);
  return out;
}

// Whole-image matte: average the overlapping boundary-patch mattes per pixel
// (uncovered pixels default to 0), then apply the matte constraints.
template <typename Scalar = double>
Plane<Scalar> assemble_matte(const PatchGrid& grid, const PatchSet& set,
                             const std::vector<Plane<Scalar>>& patch_mattes,
                             const PenumbraMasks& pen, Eigen::Index out_h,
                             Eigen::Index out_w) {
  std::size_t n_boundary = 0;
  for (const auto l : set.labels)
    if (l == PatchLabel::Boundary) ++n_boundary;
  if (patch_mattes.size() != n_boundary)
    throw std::invalid_argument("assemble_matte: need one matte per boundary patch");

  Plane<Scalar> sum = Plane<Scalar>::Zero(out_h, out_w);
  Plane<Scalar> cover = Plane<Scalar>::Zero(out_h, out_w);
  std::size_t mi = 0;
  for (std::size_t i = 0; i < grid.origins.size(); ++i) {
    if (set.labels[i] != PatchLabel::Boundary) continue;
    const auto& m = patch_mattes[mi++];
    if (m.rows() != grid.patch_size || m.cols() != grid.patch_size)
      throw std::invalid_argument("assemble_matte: patch matte size mismatch");
    const auto& o = grid.origins[i];
    sum.block(o.y, o.x, grid.patch_size, grid.patch_size) += m;
    cover.block(o.y, o.x, grid.patch_size, grid.patch_size) += Scalar(1);
  }
  Plane<Scalar> matte =
      (cover > Scalar(0)).select(sum / cover.max(Scalar(1)), Plane<Scalar>::Zero(out_h, out_w));
  return enforce_matte_constraints(std::move(matte), pen);
}

}  // namespace shadowdecomp
