#pragma once

#include "shadowdecomp/image.hpp"

#include <cmath>
#include <iostream>
#include <type_traits>

namespace shadowdecomp {

// Feasible bounds for the per-channel linear illumination transform.
struct ParamBox {
  double w_lo = 1.0, w_hi = 3.0;
  double b_lo = 0.0, b_hi = 1.0;
};

// Per-channel gain/offset of the shadow-to-lit linear map.
struct ShadowParams {
  Eigen::Array3d w = Eigen::Array3d::Ones();
  Eigen::Array3d b = Eigen::Array3d::Zero();
  ParamBox box;
};

// relit = w * shadow + b, per pixel and channel. Not clamped: the linear
// value above 1 is needed downstream for matte extraction.
template <typename Scalar>
ImageT<Scalar> relight(const ImageT<Scalar>& shadow, const ShadowParams& p) {
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c)
    out.ch[c] = Scalar(p.w[c]) * shadow.ch[c] + Scalar(p.b[c]);
  return out;
}

// out = shadow * (1 - alpha) + relit * alpha, clamped to [0,1].
template <typename Scalar>
ImageT<Scalar> compose(const ImageT<Scalar>& shadow, const ImageT<Scalar>& relit,
                       const Plane<std::type_identity_t<Scalar>>& matte) {
  require_same_size(shadow, relit, "compose");
  require_same_size(shadow.rows(), shadow.cols(), matte.rows(), matte.cols(),
                    "compose");
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c)
    out.ch[c] = (shadow.ch[c] * (Scalar(1) - matte) + relit.ch[c] * matte)
                    .min(Scalar(1))
                    .max(Scalar(0));
  return out;
}

// Matte from the (shadow, shadow-free, relit) triplet:
// alpha = (sf - shadow) / (relit - shadow), averaged over the channels with a
// nondegenerate denominator, clamped to [0,1]. Pixels degenerate in all
// channels take 1 inside `inner` (eroded interior) and 0 elsewhere. Outside
// `dilated` the matte is forced to 0.
template <typename Scalar>
Plane<Scalar> alpha_from_triplet(const ImageT<Scalar>& shadow,
                                 const ImageT<Scalar>& shadow_free,
                                 const ImageT<Scalar>& relit, const Mask& inner,
                                 const Mask& dilated,
                                 Scalar eps_den = Scalar(1e-4)) {
  require_same_size(shadow, shadow_free, "alpha_from_triplet");
  require_same_size(shadow, relit, "alpha_from_triplet");
  require_same_size(shadow.rows(), shadow.cols(), inner.rows(), inner.cols(),
                    "alpha_from_triplet");
  require_same_size(shadow.rows(), shadow.cols(), dilated.rows(), dilated.cols(),
                    "alpha_from_triplet");
  if (!(eps_den > Scalar(0)))
    throw std::invalid_argument("alpha_from_triplet: eps_den must be > 0");

  Plane<Scalar> alpha(shadow.rows(), shadow.cols());
  for (Eigen::Index y = 0; y < shadow.rows(); ++y) {
    for (Eigen::Index x = 0; x < shadow.cols(); ++x) {
      Scalar sum = 0;
      int n = 0;
      for (int c = 0; c < 3; ++c) {
        const Scalar den = relit.ch[c](y, x) - shadow.ch[c](y, x);
        if (std::abs(den) < eps_den) continue;
        sum += (shadow_free.ch[c](y, x) - shadow.ch[c](y, x)) / den;
        ++n;
      }
      Scalar a;
      if (n == 0) {
        a = inner(y, x) ? Scalar(1) : Scalar(0);
      } else {
        a = sum / Scalar(n);
        a = std::min(Scalar(1), std::max(Scalar(0), a));
      }
      alpha(y, x) = dilated(y, x) ? a : Scalar(0);
    }
  }
  return alpha;
}

// Inverse of the illumination transform: out = (in - b) / w, clamped to [0,1].
template <typename Scalar>
ImageT<Scalar> darken(const ImageT<Scalar>& shadow_free, const ShadowParams& p) {
  for (int c = 0; c < 3; ++c)
    if (p.w[c] == 0.0) throw std::invalid_argument("darken: zero gain");
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c)
    out.ch[c] = ((shadow_free.ch[c] - Scalar(p.b[c])) / Scalar(p.w[c]))
                    .min(Scalar(1))
                    .max(Scalar(0));
  return out;
}

// Synthesize a shadow image from a shadow-free image, a matte, and scaled
// parameters w_syn = w * k. In this synthesis convention the matte multiplies
// the shadow-free term: out = sf * alpha + darken(sf, syn) * (1 - alpha).
template <typename Scalar>
std::pair<ImageT<Scalar>, ShadowParams> synth_shadow(
    const ImageT<Scalar>& shadow_free,
    const Plane<std::type_identity_t<Scalar>>& matte, const ShadowParams& p,
    double k) {
  if (!(k > 0)) throw std::invalid_argument("synth_shadow: k must be > 0");
  ShadowParams syn = p;
  syn.w = p.w * k;
  for (int c = 0; c < 3; ++c)
    if (syn.w[c] < 1.0)
      std::cerr << "synth_shadow: warning: scaled gain " << syn.w[c]
                << " below 1 in channel " << c << "\n";
  const ImageT<Scalar> dark = darken(shadow_free, syn);
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c)
    out.ch[c] = shadow_free.ch[c] * matte + dark.ch[c] * (Scalar(1) - matte);
  return {std::move(out), syn};
}

// out = clamp(base + residual, 0, 1). The residual comes from outside.
template <typename Scalar>
ImageT<Scalar> apply_residual(const ImageT<Scalar>& base,
                              const ImageT<Scalar>& residual) {
  require_same_size(base, residual, "apply_residual");
  ImageT<Scalar> out;
  for (int c = 0; c < 3; ++c)
    out.ch[c] = (base.ch[c] + residual.ch[c]).min(Scalar(1)).max(Scalar(0));
  return out;
}

}  // namespace shadowdecomp
