// Command-line front end: every pipeline stage as a subcommand with PNG and
// JSON interchange. Exit codes: 0 success, 1 I/O or domain error, 2 usage.

#include "shadowdecomp/io.hpp"
#include "shadowdecomp/losses.hpp"
#include "shadowdecomp/matting.hpp"
#include "shadowdecomp/patches.hpp"
#include "shadowdecomp/pipeline.hpp"
#include "shadowdecomp/serialize.hpp"
#include "shadowdecomp/timelapse.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace shadowdecomp;

namespace {

// Defaults shared by the subcommands; overridable via --config JSON.
struct Defaults {
  int erode = 5;
  int r_in = 5;
  int r_out = 5;
  double eps_den = 1e-4;
  ParamBox box;
  int patch_size = 128;
  int patch_step = 32;
  double epsilon8 = 80.0;  // moving-shadow threshold on the 8-bit scale
  int eval_size = 256;
  LossWeights weights;
};

void apply_config(Defaults& d, const std::string& path) {
  const json j = read_json(path);
  if (j.contains("erode")) d.erode = j["erode"].get<int>();
  if (j.contains("r_in")) d.r_in = j["r_in"].get<int>();
  if (j.contains("r_out")) d.r_out = j["r_out"].get<int>();
  if (j.contains("eps_den")) d.eps_den = j["eps_den"].get<double>();
  if (j.contains("box")) {
    d.box.w_lo = j["box"]["w"][0].get<double>();
    d.box.w_hi = j["box"]["w"][1].get<double>();
    d.box.b_lo = j["box"]["b"][0].get<double>();
    d.box.b_hi = j["box"]["b"][1].get<double>();
  }
  if (j.contains("patch_size")) d.patch_size = j["patch_size"].get<int>();
  if (j.contains("patch_step")) d.patch_step = j["patch_step"].get<int>();
  if (j.contains("epsilon")) d.epsilon8 = j["epsilon"].get<double>();
  if (j.contains("eval_size")) d.eval_size = j["eval_size"].get<int>();
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (w.contains("reg")) d.weights.reg = w["reg"].get<double>();
    if (w.contains("sm")) d.weights.sm = w["sm"].get<double>();
    if (w.contains("pen")) d.weights.pen = w["pen"].get<double>();
    if (w.contains("rec_mat")) d.weights.rec_mat = w["rec_mat"].get<double>();
    if (w.contains("rec_final")) d.weights.rec_final = w["rec_final"].get<double>();
    if (w.contains("bd")) d.weights.bd = w["bd"].get<double>();
    if (w.contains("mat")) d.weights.mat = w["mat"].get<double>();
    if (w.contains("sm_w")) d.weights.sm_w = w["sm_w"].get<double>();
    if (w.contains("adv")) d.weights.adv = w["adv"].get<double>();
  }
}

DecomposeConfig to_decompose_cfg(const Defaults& d) {
  DecomposeConfig cfg;
  cfg.erode_px = d.erode;
  cfg.r_in = d.r_in;
  cfg.r_out = d.r_out;
  cfg.box = d.box;
  cfg.eps_den = d.eps_den;
  return cfg;
}

// Residual PNGs hold [0,1]; the residual layer lives in [-1,1] as 2v - 1.
Image load_residual(const std::string& path) {
  Image r = load_image(path);
  for (auto& p : r.ch) p = 2.0 * p - 1.0;
  return r;
}

std::vector<std::string> sorted_pngs(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".png")
      files.push_back(e.path().string());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw IoError("no PNG files in directory: " + dir);
  return files;
}

void emit(const json& j) { std::cout << j.dump() << std::endl; }

int thread_cap_from_env() {
  // SHADOWDECOMP_THREADS caps internal parallelism; 0 or unset = auto. The
  // current implementation is single threaded, so any cap is honored.
  const char* v = std::getenv("SHADOWDECOMP_THREADS");
  return v ? std::atoi(v) : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physics-based shadow image decomposition toolkit"};
  app.require_subcommand(1);
  (void)thread_cap_from_env();

  Defaults def;
  std::string config_path;
  app.add_option("--config", config_path,
                 "JSON file overriding any numeric default");

  // fit
  auto* fit = app.add_subcommand(
      "fit", "Fit shadow parameters (w,b) from a paired example");
  std::string f_shadow, f_free, f_mask, f_out;
  fit->add_option("--shadow", f_shadow, "shadow image PNG")->required();
  fit->add_option("--free", f_free, "shadow-free image PNG")->required();
  fit->add_option("--mask", f_mask, "shadow mask PNG")->required();
  fit->add_option("--out", f_out, "output params JSON")->required();
  fit->add_option("--erode", def.erode, "mask erosion in pixels")
      ->capture_default_str();
  fit->add_option("--w-lo", def.box.w_lo, "gain lower bound")->capture_default_str();
  fit->add_option("--w-hi", def.box.w_hi, "gain upper bound")->capture_default_str();
  fit->add_option("--b-lo", def.box.b_lo, "offset lower bound")->capture_default_str();
  fit->add_option("--b-hi", def.box.b_hi, "offset upper bound")->capture_default_str();

  // relight
  auto* relight_cmd =
      app.add_subcommand("relight", "Apply the illumination transform w*I + b");
  std::string r_input, r_params, r_out;
  relight_cmd->add_option("--input", r_input, "input PNG")->required();
  relight_cmd->add_option("--params", r_params, "params JSON")->required();
  relight_cmd->add_option("--out", r_out, "output PNG (clamped for storage)")
      ->required();

  // decompose
  auto* dec = app.add_subcommand(
      "decompose", "Fit params and extract the shadow matte from a pair");
  std::string d_shadow, d_free, d_mask, d_params_out, d_matte_out;
  dec->add_option("--shadow", d_shadow, "shadow image PNG")->required();
  dec->add_option("--free", d_free, "shadow-free image PNG")->required();
  dec->add_option("--mask", d_mask, "shadow mask PNG")->required();
  dec->add_option("--params-out", d_params_out, "output params JSON")->required();
  dec->add_option("--matte-out", d_matte_out, "output matte PNG (16-bit)")
      ->required();
  dec->add_option("--erode", def.erode, "mask erosion in pixels")
      ->capture_default_str();
  dec->add_option("--r-in", def.r_in, "inner penumbra radius")->capture_default_str();
  dec->add_option("--r-out", def.r_out, "outer penumbra radius")
      ->capture_default_str();
  dec->add_option("--eps-den", def.eps_den, "degenerate-denominator threshold")
      ->capture_default_str();

  // remove
  auto* rem = app.add_subcommand(
      "remove", "Remove a shadow given params and matte (optional residual)");
  std::string m_shadow, m_params, m_matte, m_out, m_residual;
  rem->add_option("--shadow", m_shadow, "shadow image PNG")->required();
  rem->add_option("--params", m_params, "params JSON")->required();
  rem->add_option("--matte", m_matte, "matte PNG")->required();
  rem->add_option("--out", m_out, "output PNG")->required();
  rem->add_option("--residual", m_residual,
                  "optional residual PNG, values mapped to 2v-1");

  // synth
  auto* syn = app.add_subcommand(
      "synth", "Synthesize a shadow image from a shadow-free image");
  std::string s_free, s_matte, s_params, s_out, s_params_out;
  double s_k = 1.0;
  syn->add_option("--free", s_free, "shadow-free image PNG")->required();
  syn->add_option("--matte", s_matte,
                  "matte PNG (1 on shadow-free pixels in this convention)")
      ->required();
  syn->add_option("--params", s_params, "params JSON")->required();
  syn->add_option("--k", s_k, "gain scale w_syn = w*k")->capture_default_str();
  syn->add_option("--out", s_out, "output PNG")->required();
  syn->add_option("--params-out", s_params_out, "scaled params JSON");

  // augment
  auto* aug = app.add_subcommand(
      "augment", "Generate shadow-edited variants of a paired example");
  std::string a_shadow, a_free, a_mask, a_out_dir;
  std::vector<double> a_ks = {0.8, 0.9, 1.1, 1.2};
  aug->add_option("--shadow", a_shadow, "shadow image PNG")->required();
  aug->add_option("--free", a_free, "shadow-free image PNG")->required();
  aug->add_option("--mask", a_mask, "shadow mask PNG")->required();
  aug->add_option("--out-dir", a_out_dir, "output directory")->required();
  aug->add_option("--k", a_ks, "gain scales")->capture_default_str();

  // penumbra
  auto* pen_cmd =
      app.add_subcommand("penumbra", "Build the penumbra region masks");
  std::string p_mask, p_inner, p_outer, p_dilated, p_eroded;
  pen_cmd->add_option("--mask", p_mask, "shadow mask PNG")->required();
  pen_cmd->add_option("--r-in", def.r_in, "inner radius")->capture_default_str();
  pen_cmd->add_option("--r-out", def.r_out, "outer radius")->capture_default_str();
  pen_cmd->add_option("--inner-out", p_inner, "inner band PNG");
  pen_cmd->add_option("--outer-out", p_outer, "outer band PNG");
  pen_cmd->add_option("--dilated-out", p_dilated, "dilated mask PNG");
  pen_cmd->add_option("--eroded-out", p_eroded, "eroded mask PNG");

  // patches
  auto* pat = app.add_subcommand(
      "patches", "Extract and classify overlapping patches (N/B/F)");
  std::string t_image, t_mask, t_out, t_dump;
  pat->add_option("--image", t_image, "image PNG")->required();
  pat->add_option("--mask", t_mask, "shadow mask PNG")->required();
  pat->add_option("--size", def.patch_size, "patch size")->capture_default_str();
  pat->add_option("--step", def.patch_step, "step size")->capture_default_str();
  pat->add_option("--out", t_out, "patch manifest JSON")->required();
  pat->add_option("--dump-dir", t_dump, "optional per-patch PNG dump directory");

  // timelapse
  auto* tl = app.add_subcommand(
      "timelapse", "Pseudo shadow-free frame and moving-shadow mask");
  std::string l_dir, l_out_dir;
  tl->add_option("--frames-dir", l_dir, "directory of PNG frames")->required();
  tl->add_option("--out-dir", l_out_dir, "output directory")->required();
  tl->add_option("--epsilon", def.epsilon8,
                 "moving-shadow threshold on the 8-bit scale")
      ->capture_default_str();

  // eval
  auto* ev = app.add_subcommand("eval", "Lab-space MAE evaluation");
  std::string e_result, e_gt, e_mask, e_out;
  ev->add_option("--result", e_result, "result PNG or directory")->required();
  ev->add_option("--gt", e_gt, "ground-truth PNG or directory")->required();
  ev->add_option("--mask", e_mask, "mask PNG or directory")->required();
  ev->add_option("--size", def.eval_size, "evaluation size")->capture_default_str();
  ev->add_option("--out", e_out, "report JSON");

  // color-correct
  auto* cc = app.add_subcommand(
      "color-correct", "Fit the ground truth to the shadow image tone");
  std::string c_shadow, c_gt, c_mask, c_out, c_json;
  cc->add_option("--shadow", c_shadow, "shadow image PNG")->required();
  cc->add_option("--gt", c_gt, "shadow-free ground truth PNG")->required();
  cc->add_option("--mask", c_mask, "shadow mask PNG")->required();
  cc->add_option("--out", c_out, "corrected PNG")->required();
  cc->add_option("--json-out", c_json, "fitted coefficients JSON");

  // losses
  auto* ls = app.add_subcommand("losses", "Compute the loss functionals");
  std::string ls_mode = "weakly";
  std::string ls_out, ls_final, ls_gt, ls_matte, ls_mask, ls_pred, ls_target;
  double ls_d_score = 0.0;
  ls->add_option("--mode", ls_mode, "fully | weakly")
      ->check(CLI::IsMember({"fully", "weakly"}))
      ->capture_default_str();
  ls->add_option("--out", ls_out, "output image PNG")->required();
  ls->add_option("--final", ls_final, "final output PNG (defaults to --out)");
  ls->add_option("--gt", ls_gt, "ground-truth PNG (fully mode)");
  ls->add_option("--matte", ls_matte, "matte PNG")->required();
  ls->add_option("--mask", ls_mask, "shadow mask PNG")->required();
  ls->add_option("--pred-params", ls_pred, "predicted params JSON (fully mode)");
  ls->add_option("--target-params", ls_target, "target params JSON (fully mode)");
  ls->add_option("--d-score", ls_d_score, "discriminator score in [0,1]")
      ->capture_default_str();
  ls->add_option("--r-in", def.r_in, "inner radius")->capture_default_str();
  ls->add_option("--r-out", def.r_out, "outer radius")->capture_default_str();

  // matte-resize
  auto* mr = app.add_subcommand(
      "matte-resize", "Bilinear matte resolution transfer");
  std::string z_matte, z_out;
  int z_w = 0, z_h = 0;
  mr->add_option("--matte", z_matte, "matte PNG")->required();
  mr->add_option("--width", z_w, "target width")->required();
  mr->add_option("--height", z_h, "target height")->required();
  mr->add_option("--out", z_out, "output matte PNG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help() << std::flush;
    return 2;
  }

  try {
    if (!config_path.empty()) apply_config(def, config_path);

    if (*fit) {
      const auto res = fit_shadow_params(load_image(f_shadow), load_image(f_free),
                                         load_mask(f_mask), def.erode, def.box);
      write_json(fit_to_json(res), f_out);
      emit({{"command", "fit"}, {"out", f_out}, {"n_samples", res.n_samples}});
    } else if (*relight_cmd) {
      const Image out =
          clamp01(relight(load_image(r_input), params_from_json(read_json(r_params))));
      save_image(out, r_out);
      emit({{"command", "relight"}, {"out", r_out}});
    } else if (*dec) {
      const auto d = decompose_pair(load_image(d_shadow), load_image(d_free),
                                    load_mask(d_mask), to_decompose_cfg(def));
      write_json(fit_to_json(d.fit), d_params_out);
      save_matte(d.matte, d_matte_out);
      emit({{"command", "decompose"},
            {"params", d_params_out},
            {"matte", d_matte_out}});
    } else if (*rem) {
      const Image shadow = load_image(m_shadow);
      const ShadowParams params = params_from_json(read_json(m_params));
      const Matte matte = load_matte(m_matte);
      Image out;
      if (m_residual.empty()) {
        out = remove_shadow(shadow, params, matte);
      } else {
        const Image res = load_residual(m_residual);
        out = remove_shadow(shadow, params, matte, &res);
      }
      save_image(out, m_out);
      emit({{"command", "remove"}, {"out", m_out}});
    } else if (*syn) {
      auto [img, sp] = synth_shadow(load_image(s_free), load_matte(s_matte),
                                    params_from_json(read_json(s_params)), s_k);
      save_image(clamp01(img), s_out);
      if (!s_params_out.empty()) write_json(params_to_json(sp), s_params_out);
      emit({{"command", "synth"}, {"out", s_out}, {"k", s_k}});
    } else if (*aug) {
      fs::create_directories(a_out_dir);
      const auto batch =
          augment_batch(load_image(a_free), load_image(a_shadow),
                        load_mask(a_mask), a_ks, to_decompose_cfg(def));
      json outs = json::array();
      for (std::size_t i = 0; i < batch.size(); ++i) {
        char name[64];
        std::snprintf(name, sizeof(name), "aug_k%.3f.png", a_ks[i]);
        const std::string img_path = (fs::path(a_out_dir) / name).string();
        save_image(clamp01(batch[i].first), img_path);
        const std::string params_path =
            (fs::path(a_out_dir) / (std::string(name) + ".json")).string();
        write_json(params_to_json(batch[i].second), params_path);
        outs.push_back(img_path);
      }
      emit({{"command", "augment"}, {"outputs", outs}});
    } else if (*pen_cmd) {
      const auto pen = penumbra_masks(load_mask(p_mask), def.r_in, def.r_out);
      if (!p_inner.empty()) save_mask(pen.inner, p_inner);
      if (!p_outer.empty()) save_mask(pen.outer, p_outer);
      if (!p_dilated.empty()) save_mask(pen.dilated, p_dilated);
      if (!p_eroded.empty()) save_mask(pen.eroded, p_eroded);
      emit({{"command", "penumbra"},
            {"inner_px", Eigen::Index(pen.inner.count())},
            {"outer_px", Eigen::Index(pen.outer.count())}});
    } else if (*pat) {
      const Image img = load_image(t_image);
      const auto [grid, set] = extract_and_classify(img, load_mask(t_mask),
                                                    def.patch_size, def.patch_step);
      write_json(patch_manifest_to_json(grid, set), t_out);
      if (!t_dump.empty()) {
        fs::create_directories(t_dump);
        for (std::size_t i = 0; i < grid.origins.size(); ++i) {
          const auto& o = grid.origins[i];
          Image patch(grid.patch_size, grid.patch_size);
          for (int c = 0; c < 3; ++c)
            patch.ch[c] = img.ch[c].block(o.y, o.x, grid.patch_size, grid.patch_size);
          char name[64];
          std::snprintf(name, sizeof(name), "patch_%04zu_x%ld_y%ld.png", i,
                        long(o.x), long(o.y));
          save_image(patch, (fs::path(t_dump) / name).string());
        }
      }
      emit({{"command", "patches"},
            {"out", t_out},
            {"n_patches", grid.origins.size()}});
    } else if (*tl) {
      std::vector<Image> frames;
      for (const auto& f : sorted_pngs(l_dir)) frames.push_back(load_image(f));
      const auto gt = build_pseudo_gt(frames, def.epsilon8 / 255.0);
      fs::create_directories(l_out_dir);
      save_image(gt.v_max, (fs::path(l_out_dir) / "v_max.png").string());
      save_image(gt.v_min, (fs::path(l_out_dir) / "v_min.png").string());
      save_mask(gt.mask, (fs::path(l_out_dir) / "moving_mask.png").string());
      emit({{"command", "timelapse"},
            {"frames", frames.size()},
            {"mask_px", Eigen::Index(gt.mask.count())}});
    } else if (*ev) {
      json summary;
      if (fs::is_directory(e_result)) {
        // Batch mode: same file names expected in the three directories.
        double s = 0, n = 0, a = 0;
        std::size_t count = 0;
        for (const auto& f : sorted_pngs(e_result)) {
          const std::string name = fs::path(f).filename().string();
          const auto rep = mae_report(
              load_image(f), load_image((fs::path(e_gt) / name).string()),
              load_mask((fs::path(e_mask) / name).string()), def.eval_size,
              def.eval_size);
          if (rep.mae_shadow) s += *rep.mae_shadow;
          if (rep.mae_nonshadow) n += *rep.mae_nonshadow;
          a += rep.mae_all;
          ++count;
        }
        summary = {{"command", "eval"},
                   {"images", count},
                   {"mae",
                    {{"shadow", s / count},
                     {"non_shadow", n / count},
                     {"all", a / count}}}};
      } else {
        const auto rep = mae_report(load_image(e_result), load_image(e_gt),
                                    load_mask(e_mask), def.eval_size,
                                    def.eval_size);
        summary = eval_report_to_json(rep);
        summary["command"] = "eval";
      }
      if (!e_out.empty()) write_json(summary, e_out);
      emit(summary);
    } else if (*cc) {
      const auto corr = color_correct_gt(load_image(c_shadow), load_image(c_gt),
                                         load_mask(c_mask));
      save_image(corr.corrected, c_out);
      const json j = {{"command", "color-correct"},
                      {"a", {corr.a[0], corr.a[1], corr.a[2]}},
                      {"c", {corr.c[0], corr.c[1], corr.c[2]}},
                      {"degenerate",
                       {corr.degenerate[0], corr.degenerate[1], corr.degenerate[2]}}};
      if (!c_json.empty()) write_json(j, c_json);
      emit(j);
    } else if (*ls) {
      const Image out_img = load_image(ls_out);
      const Matte matte = load_matte(ls_matte);
      const auto pen = penumbra_masks(load_mask(ls_mask), def.r_in, def.r_out);
      LossReport report;
      json weights;
      if (ls_mode == "fully") {
        if (ls_gt.empty() || ls_pred.empty() || ls_target.empty())
          throw std::invalid_argument(
              "losses: fully mode needs --gt, --pred-params, --target-params");
        const Image gt = load_image(ls_gt);
        const Image final_img = ls_final.empty() ? out_img : load_image(ls_final);
        Mask band = pen.inner || pen.outer;
        FullyTerms t;
        t.regression = regression_loss(params_from_json(read_json(ls_pred)),
                                       params_from_json(read_json(ls_target)));
        t.smoothness = smoothness_loss(matte);
        t.penumbra = l1_reconstruction(out_img, gt, &band);
        t.rec_mat = l1_reconstruction(out_img, gt);
        t.rec_final = l1_reconstruction(final_img, gt);
        report = total_fully(t, def.weights);
        weights = {{"reg", def.weights.reg},
                   {"sm", def.weights.sm},
                   {"pen", def.weights.pen},
                   {"rec_mat", def.weights.rec_mat},
                   {"rec_final", def.weights.rec_final}};
      } else {
        WeaklyTerms t;
        t.smoothness = smoothness_loss(matte);
        t.matting = matting_loss(matte, pen);
        t.boundary = boundary_loss(out_img, pen);
        t.gan = gan_loss(ls_d_score);
        report = total_weakly(t, def.weights);
        weights = {{"bd", def.weights.bd},
                   {"mat", def.weights.mat},
                   {"sm_w", def.weights.sm_w},
                   {"adv", def.weights.adv}};
      }
      emit(loss_report_to_json(report, weights));
    } else if (*mr) {
      save_matte(interpolate_matte(load_matte(z_matte), z_h, z_w), z_out);
      emit({{"command", "matte-resize"}, {"out", z_out}});
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
  return 0;
}
