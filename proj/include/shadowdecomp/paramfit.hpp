#pragma once

#include "shadowdecomp/illum.hpp"
#include "shadowdecomp/morphology.hpp"

#include <vector>

namespace shadowdecomp {

// Paired shadowed / shadow-free intensities for one channel.
struct PairSample {
  int channel = 0;
  std::vector<double> xs;  // shadowed
  std::vector<double> ys;  // shadow-free
};

struct BoxFit {
  double w = 1.0;
  double b = 0.0;
  double residual = 0.0;  // attained sum of squares
  bool degenerate = false;
};

struct ParamFitResult {
  ShadowParams params;
  Eigen::Array3d residual = Eigen::Array3d::Zero();
  std::array<bool, 3> degenerate = {false, false, false};
  std::size_t n_samples = 0;
};

namespace detail {

inline double sse(const PairSample& s, double w, double b) {
  double acc = 0;
  for (std::size_t i = 0; i < s.xs.size(); ++i) {
    const double r = w * s.xs[i] + b - s.ys[i];
    acc += r * r;
  }
  return acc;
}

}  // namespace detail

// Exact minimizer of sum (w*x + b - y)^2 over the box. The problem is a
// 2-variable convex QP, so the optimum is one of: the unconstrained OLS
// solution, the 1-D optimum on each of the 4 edges, or a corner. All
// candidates are evaluated and the feasible minimum returned; ties go to
// lower w, then lower b.
inline BoxFit solve_box_ls(const PairSample& s, const ParamBox& box) {
  const std::size_t n = s.xs.size();
  if (n < 2 || s.ys.size() != n)
    throw std::invalid_argument("solve_box_ls: need >= 2 paired samples");
  if (!(box.w_lo <= box.w_hi && box.b_lo <= box.b_hi))
    throw std::invalid_argument("solve_box_ls: empty box");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += s.xs[i];
    sy += s.ys[i];
    sxx += s.xs[i] * s.xs[i];
    sxy += s.xs[i] * s.ys[i];
  }
  const double nn = double(n);
  const double det = nn * sxx - sx * sx;

  const auto clamp = [](double v, double lo, double hi) {
    return std::min(hi, std::max(lo, v));
  };

  if (det <= 1e-12 * nn * std::max(1.0, sxx)) {
    // All xs (numerically) equal: slope unidentifiable.
    BoxFit fit;
    fit.w = box.w_lo;
    fit.b = clamp(sy / nn - box.w_lo * s.xs[0], box.b_lo, box.b_hi);
    fit.residual = detail::sse(s, fit.w, fit.b);
    fit.degenerate = true;
    return fit;
  }

  std::vector<std::pair<double, double>> cand;
  // Interior: ordinary least squares.
  cand.emplace_back((nn * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det);
  // Edges: fix one variable at a bound, minimize the other in 1-D.
  for (double w : {box.w_lo, box.w_hi})
    cand.emplace_back(w, (sy - w * sx) / nn);
  for (double b : {box.b_lo, box.b_hi})
    cand.emplace_back((sxy - b * sx) / sxx, b);
  // Corners.
  for (double w : {box.w_lo, box.w_hi})
    for (double b : {box.b_lo, box.b_hi}) cand.emplace_back(w, b);

  BoxFit best;
  bool have = false;
  for (auto [w, b] : cand) {
    w = clamp(w, box.w_lo, box.w_hi);
    b = clamp(b, box.b_lo, box.b_hi);
    const double r = detail::sse(s, w, b);
    const bool better =
        !have || r < best.residual - 1e-15 ||
        (r <= best.residual + 1e-15 &&
         (w < best.w || (w == best.w && b < best.b)));
    if (better) {
      best.w = w;
      best.b = b;
      best.residual = r;
      have = true;
    }
  }
  return best;
}

// Collect (shadow, shadow-free) pixel pairs per channel from the eroded mask.
template <typename Scalar>
std::array<PairSample, 3> sample_pairs(const ImageT<Scalar>& shadow,
                                       const ImageT<Scalar>& shadow_free,
                                       const Mask& mask, int erode_px = 5) {
  require_same_size(shadow, shadow_free, "sample_pairs");
  require_same_size(shadow.rows(), shadow.cols(), mask.rows(), mask.cols(),
                    "sample_pairs");
  if (erode_px < 0) throw std::invalid_argument("sample_pairs: negative erode");

  const Mask eroded = erode(mask, erode_px);
  std::array<PairSample, 3> out;
  for (int c = 0; c < 3; ++c) out[c].channel = c;
  for (Eigen::Index y = 0; y < shadow.rows(); ++y)
    for (Eigen::Index x = 0; x < shadow.cols(); ++x)
      if (eroded(y, x))
        for (int c = 0; c < 3; ++c) {
          out[c].xs.push_back(double(shadow.ch[c](y, x)));
          out[c].ys.push_back(double(shadow_free.ch[c](y, x)));
        }
  if (out[0].xs.size() < 2)
    throw std::runtime_error(
        "sample_pairs: eroded shadow mask has fewer than 2 pixels");
  return out;
}

template <typename Scalar>
ParamFitResult fit_shadow_params(const ImageT<Scalar>& shadow,
                                 const ImageT<Scalar>& shadow_free,
                                 const Mask& mask, int erode_px = 5,
                                 const ParamBox& box = {}) {
  const auto samples = sample_pairs(shadow, shadow_free, mask, erode_px);
  ParamFitResult res;
  res.params.box = box;
  res.n_samples = samples[0].xs.size();
  for (int c = 0; c < 3; ++c) {
    const BoxFit fit = solve_box_ls(samples[c], box);
    res.params.w[c] = fit.w;
    res.params.b[c] = fit.b;
    res.residual[c] = fit.residual;
    res.degenerate[c] = fit.degenerate;
  }
  return res;
}

}  // namespace shadowdecomp
