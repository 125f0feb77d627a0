#pragma once

#include "shadowdecomp/image.hpp"

#include <vector>

namespace shadowdecomp {

// Streaming per-pixel temporal extrema over a frame sequence.
template <typename Scalar>
struct TemporalExtrema {
  ImageT<Scalar> v_max;
  ImageT<Scalar> v_min;
  std::size_t count = 0;

  void add(const ImageT<Scalar>& frame) {
    if (count == 0) {
      v_max = frame;
      v_min = frame;
    } else {
      require_same_size(v_max, frame, "TemporalExtrema::add");
      for (int c = 0; c < 3; ++c) {
        v_max.ch[c] = v_max.ch[c].max(frame.ch[c]);
        v_min.ch[c] = v_min.ch[c].min(frame.ch[c]);
      }
    }
    ++count;
  }
};

template <typename Scalar>
TemporalExtrema<Scalar> temporal_extrema(const std::vector<ImageT<Scalar>>& frames) {
  if (frames.empty())
    throw std::invalid_argument("temporal_extrema: empty sequence");
  TemporalExtrema<Scalar> acc;
  for (const auto& f : frames) acc.add(f);
  return acc;
}

// Pixels observed both in and out of shadow: channel-mean gap strictly above
// epsilon (paper threshold 80 on 8-bit values, 80/255 here).
template <typename Scalar>
Mask moving_shadow_mask(const ImageT<Scalar>& v_max, const ImageT<Scalar>& v_min,
                        double epsilon = 80.0 / 255.0) {
  require_same_size(v_max, v_min, "moving_shadow_mask");
  if (!(epsilon > 0))
    throw std::invalid_argument("moving_shadow_mask: epsilon must be > 0");
  Plane<Scalar> gap =
      (v_max.ch[0] - v_min.ch[0] + v_max.ch[1] - v_min.ch[1] + v_max.ch[2] -
       v_min.ch[2]) /
      Scalar(3);
  return gap > Scalar(epsilon);
}

template <typename Scalar>
struct PseudoGroundTruth {
  ImageT<Scalar> v_max;  // pseudo shadow-free frame
  ImageT<Scalar> v_min;
  Mask mask;             // moving-shadow mask
};

template <typename Scalar>
PseudoGroundTruth<Scalar> build_pseudo_gt(const std::vector<ImageT<Scalar>>& frames,
                                          double epsilon = 80.0 / 255.0) {
  const auto ext = temporal_extrema(frames);
  PseudoGroundTruth<Scalar> out;
  out.mask = moving_shadow_mask(ext.v_max, ext.v_min, epsilon);
  out.v_max = ext.v_max;
  out.v_min = ext.v_min;
  return out;
}

}  // namespace shadowdecomp
