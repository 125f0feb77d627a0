#pragma once

#include "shadowdecomp/matting.hpp"
#include "shadowdecomp/paramfit.hpp"

namespace shadowdecomp {

struct DecomposeConfig {
  int erode_px = 5;   // mask erosion before parameter fitting
  int r_in = 5;       // penumbra band radii
  int r_out = 5;
  ParamBox box;
  double eps_den = 1e-4;
};

struct Decomposition {
  ShadowParams params;
  Matte matte;
  PenumbraMasks pen;
  ParamFitResult fit;
};

// Analytic decomposition of a paired example: fit the illumination
// parameters on the eroded mask, relight, and extract the matte.
template <typename Scalar>
Decomposition decompose_pair(const ImageT<Scalar>& shadow,
                             const ImageT<Scalar>& shadow_free,
                             const Mask& mask,
                             const DecomposeConfig& cfg = {}) {
  Decomposition d;
  d.fit = fit_shadow_params(shadow, shadow_free, mask, cfg.erode_px, cfg.box);
  d.params = d.fit.params;
  d.pen = penumbra_masks(mask, cfg.r_in, cfg.r_out);
  const auto relit = relight(shadow, d.params);
  d.matte = alpha_from_triplet(shadow, shadow_free, relit, d.pen.eroded,
                               d.pen.dilated, Scalar(cfg.eps_den));
  return d;
}

// Shadow removal given parameters and a matte; optional externally supplied
// residual layer applied afterwards.
template <typename Scalar>
ImageT<Scalar> remove_shadow(const ImageT<Scalar>& shadow,
                             const ShadowParams& params,
                             const Plane<std::type_identity_t<Scalar>>& matte,
                             const ImageT<Scalar>* residual = nullptr) {
  ImageT<Scalar> out = compose(shadow, relight(shadow, params), matte);
  if (residual) out = apply_residual(out, *residual);
  return out;
}

// Shadow-editing augmentation: decompose the pair once, then synthesize one
// variant per gain scale k.
template <typename Scalar>
std::vector<std::pair<ImageT<Scalar>, ShadowParams>> augment_batch(
    const ImageT<Scalar>& shadow_free, const ImageT<Scalar>& shadow,
    const Mask& mask, const std::vector<double>& ks = {0.8, 0.9, 1.1, 1.2},
    const DecomposeConfig& cfg = {}) {
  if (ks.empty()) throw std::invalid_argument("augment_batch: empty k list");
  for (double k : ks)
    if (!(k > 0)) throw std::invalid_argument("augment_batch: k must be > 0");

  const Decomposition d = decompose_pair(shadow, shadow_free, mask, cfg);
  // The decomposition matte is 1 in the umbra; the synthesis equation wants
  // the opposite polarity (1 on shadow-free pixels).
  const Plane<Scalar> syn_matte = Scalar(1) - d.matte;
  std::vector<std::pair<ImageT<Scalar>, ShadowParams>> out;
  out.reserve(ks.size());
  for (double k : ks)
    out.push_back(synth_shadow(shadow_free, syn_matte, d.params, k));
  return out;
}

}  // namespace shadowdecomp
