#pragma once

#include "shadowdecomp/illum.hpp"
#include "shadowdecomp/morphology.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <string>

namespace shadowdecomp {

struct LossWeights {
  // fully-supervised objective, paper defaults
  double reg = 1.0;
  double sm = 1.0;
  double pen = 10.0;
  double rec_mat = 1.0;
  double rec_final = 1.0;
  // weakly-supervised objective, paper defaults
  double bd = 0.5;
  double mat = 100.0;
  double sm_w = 10.0;
  double adv = 0.5;
};

struct LossReport {
  std::map<std::string, double> terms;
  double total = 0.0;
};

// Mean absolute difference over all channels, optionally restricted to a
// region mask.
template <typename Scalar>
double l1_reconstruction(const ImageT<Scalar>& out, const ImageT<Scalar>& gt,
                         const Mask* region = nullptr) {
  require_same_size(out, gt, "l1_reconstruction");
  double acc = 0;
  std::size_t n = 0;
  for (Eigen::Index y = 0; y < out.rows(); ++y)
    for (Eigen::Index x = 0; x < out.cols(); ++x) {
      if (region && !(*region)(y, x)) continue;
      for (int c = 0; c < 3; ++c)
        acc += std::abs(double(out.ch[c](y, x)) - double(gt.ch[c](y, x)));
      n += 3;
    }
  if (n == 0) throw std::invalid_argument("l1_reconstruction: empty region");
  return acc / double(n);
}

// Mean |forward difference| of the matte over both axes.
template <typename Derived>
double smoothness_loss(const Eigen::DenseBase<Derived>& matte) {
  const Eigen::Index h = matte.rows(), w = matte.cols();
  double acc = 0;
  std::size_t n = 0;
  for (Eigen::Index y = 0; y < h; ++y)
    for (Eigen::Index x = 0; x + 1 < w; ++x) {
      acc += std::abs(double(matte(y, x + 1)) - double(matte(y, x)));
      ++n;
    }
  for (Eigen::Index y = 0; y + 1 < h; ++y)
    for (Eigen::Index x = 0; x < w; ++x) {
      acc += std::abs(double(matte(y + 1, x)) - double(matte(y, x)));
      ++n;
    }
  if (n == 0) throw std::invalid_argument("smoothness_loss: single pixel");
  return acc / double(n);
}

// mean |alpha - 1| over mask \ inner  +  mean |alpha| outside dilated.
template <typename Derived>
double matting_loss(const Eigen::DenseBase<Derived>& matte,
                    const PenumbraMasks& pen) {
  require_same_size(matte.rows(), matte.cols(), pen.eroded.rows(),
                    pen.eroded.cols(), "matting_loss");
  double umbra = 0, outside = 0;
  std::size_t n_umbra = 0, n_outside = 0;
  for (Eigen::Index y = 0; y < matte.rows(); ++y)
    for (Eigen::Index x = 0; x < matte.cols(); ++x) {
      if (pen.eroded(y, x)) {
        umbra += std::abs(double(matte(y, x)) - 1.0);
        ++n_umbra;
      } else if (!pen.dilated(y, x)) {
        outside += std::abs(double(matte(y, x)));
        ++n_outside;
      }
    }
  double loss = 0;
  if (n_umbra) loss += umbra / double(n_umbra);
  if (n_outside) loss += outside / double(n_outside);
  return loss;
}

// |mean intensity over the inner band - mean over the outer band|.
template <typename Scalar>
double boundary_loss(const ImageT<Scalar>& out, const PenumbraMasks& pen) {
  require_same_size(out.rows(), out.cols(), pen.inner.rows(), pen.inner.cols(),
                    "boundary_loss");
  double in = 0, ot = 0;
  std::size_t n_in = 0, n_ot = 0;
  for (Eigen::Index y = 0; y < out.rows(); ++y)
    for (Eigen::Index x = 0; x < out.cols(); ++x) {
      if (pen.inner(y, x)) {
        for (int c = 0; c < 3; ++c) in += double(out.ch[c](y, x));
        n_in += 3;
      }
      if (pen.outer(y, x)) {
        for (int c = 0; c < 3; ++c) ot += double(out.ch[c](y, x));
        n_ot += 3;
      }
    }
  if (n_in == 0 || n_ot == 0)
    throw std::invalid_argument("boundary_loss: empty penumbra band");
  return std::abs(in / double(n_in) - ot / double(n_ot));
}

// log(1 - D); D clamped at 1 - 1e-7 to keep the log finite.
inline double gan_loss(double d_score) {
  if (d_score < 0.0 || d_score > 1.0)
    throw std::invalid_argument("gan_loss: d_score outside [0,1]");
  return std::log(1.0 - std::min(d_score, 1.0 - 1e-7));
}

// Mean absolute difference over the 6-element (w,b) vector.
inline double regression_loss(const ShadowParams& pred,
                              const ShadowParams& target) {
  double acc = 0;
  for (int c = 0; c < 3; ++c)
    acc += std::abs(pred.w[c] - target.w[c]) + std::abs(pred.b[c] - target.b[c]);
  return acc / 6.0;
}

struct FullyTerms {
  double regression;
  double smoothness;
  double penumbra;
  double rec_mat;
  double rec_final;
};

inline LossReport total_fully(const FullyTerms& t, const LossWeights& lw = {}) {
  LossReport r;
  r.terms = {{"regression", t.regression}, {"sm_alpha", t.smoothness},
             {"penumbra", t.penumbra},     {"rec_mat", t.rec_mat},
             {"rec_final", t.rec_final}};
  r.total = lw.reg * t.regression + lw.sm * t.smoothness +
            lw.pen * t.penumbra + lw.rec_mat * t.rec_mat +
            lw.rec_final * t.rec_final;
  return r;
}

struct WeaklyTerms {
  double smoothness;
  double matting;
  double boundary;
  double gan;
};

inline LossReport total_weakly(const WeaklyTerms& t, const LossWeights& lw = {}) {
  LossReport r;
  r.terms = {{"sm_alpha", t.smoothness}, {"mat_alpha", t.matting},
             {"bd", t.boundary},         {"gan", t.gan}};
  r.total = lw.sm_w * t.smoothness + lw.mat * t.matting + lw.bd * t.boundary +
            lw.adv * t.gan;
  return r;
}

}  // namespace shadowdecomp
