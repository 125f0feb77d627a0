#pragma once

#include "shadowdecomp/eval.hpp"
#include "shadowdecomp/losses.hpp"
#include "shadowdecomp/paramfit.hpp"
#include "shadowdecomp/patches.hpp"

#include <json.hpp>

#include <fstream>

namespace shadowdecomp {

using json = nlohmann::json;

inline json params_to_json(const ShadowParams& p) {
  return json{{"w", {p.w[0], p.w[1], p.w[2]}},
              {"b", {p.b[0], p.b[1], p.b[2]}},
              {"box",
               {{"w", {p.box.w_lo, p.box.w_hi}}, {"b", {p.box.b_lo, p.box.b_hi}}}}};
}

inline ShadowParams params_from_json(const json& j) {
  ShadowParams p;
  for (int c = 0; c < 3; ++c) {
    p.w[c] = j.at("w").at(c).get<double>();
    p.b[c] = j.at("b").at(c).get<double>();
  }
  if (j.contains("box")) {
    p.box.w_lo = j["box"]["w"][0].get<double>();
    p.box.w_hi = j["box"]["w"][1].get<double>();
    p.box.b_lo = j["box"]["b"][0].get<double>();
    p.box.b_hi = j["box"]["b"][1].get<double>();
  }
  return p;
}

inline json fit_to_json(const ParamFitResult& r) {
  json j = params_to_json(r.params);
  j["residual"] = {r.residual[0], r.residual[1], r.residual[2]};
  j["degenerate"] = {r.degenerate[0], r.degenerate[1], r.degenerate[2]};
  j["n_samples"] = r.n_samples;
  return j;
}

inline json loss_report_to_json(const LossReport& r, const json& weights) {
  return json{{"terms", r.terms}, {"total", r.total}, {"weights", weights}};
}

inline json eval_report_to_json(const EvalReport& r) {
  json mae;
  mae["shadow"] = r.mae_shadow ? json(*r.mae_shadow) : json(nullptr);
  mae["non_shadow"] = r.mae_nonshadow ? json(*r.mae_nonshadow) : json(nullptr);
  mae["all"] = r.mae_all;
  return json{{"mae", mae},
              {"pixels", {{"shadow", r.n_shadow}, {"non_shadow", r.n_nonshadow}}},
              {"eval_size", {r.eval_w, r.eval_h}}};
}

inline json patch_manifest_to_json(const PatchGrid& grid, const PatchSet& set) {
  json patches = json::array();
  for (std::size_t i = 0; i < grid.origins.size(); ++i) {
    const char* label = set.labels[i] == PatchLabel::NonShadow    ? "N"
                        : set.labels[i] == PatchLabel::FullShadow ? "F"
                                                                  : "B";
    patches.push_back(
        {{"x", grid.origins[i].x}, {"y", grid.origins[i].y}, {"label", label}});
  }
  return json{{"size", grid.patch_size}, {"step", grid.step}, {"patches", patches}};
}

inline void write_json(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << j.dump() << "\n";
}

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return json::parse(in);
}

}  // namespace shadowdecomp
