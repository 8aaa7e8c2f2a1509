// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rrpn/rrpn.hpp"
#include "rrpn/text_io.hpp"

namespace rrpn::cli {

namespace fs = std::filesystem;

namespace {

/// Failure that has already been worded for the user.
class CommandError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path) {
  try {
    return text::read_file(path);
  } catch (const std::exception& e) {
    throw CommandError(e.what());
  }
}

template <typename Fn>
auto parse_file(const std::string& path, Fn&& parse) {
  const std::string contents = read_input(path);
  try {
    return parse(contents);
  } catch (const ParseError& e) {
    throw CommandError(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw CommandError(path + ": " + e.what());
  }
}

std::vector<RotatedBoxd> load_boxes(const std::string& path, const std::string& format) {
  if (format == "dets") return parse_file(path, [](const std::string& s) { return parse_boxes(s); });
  const GtFormat f = parse_gt_format(format);
  std::vector<RotatedBoxd> boxes;
  for (const auto& gt : parse_file(path, [f](const std::string& s) { return parse_ground_truth(f, s); })) {
    boxes.push_back(gt.box);
  }
  return boxes;
}

std::vector<Detection> load_detections(const std::string& path) {
  return parse_file(path, [](const std::string& s) { return parse_detections(s); });
}

std::string format_prf(double p, double r, double f) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "P=%.4f R=%.4f F=%.4f", p, r, f);
  return buf;
}

// Image key shared by a ground-truth file and its detection file:
// "gt_img_1.txt" and "res_img_1.txt" both map to "img_1".
std::string image_key(const fs::path& file, std::string_view prefix) {
  std::string stem = file.stem().string();
  if (stem.starts_with(prefix)) stem.erase(0, prefix.size());
  return stem;
}

std::map<std::string, fs::path> list_files(const std::string& dir, std::string_view prefix) {
  if (!fs::is_directory(dir)) throw CommandError("not a directory: " + dir);
  std::map<std::string, fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file()) files.emplace(image_key(entry.path(), prefix), entry.path());
  }
  return files;
}

struct AngleOption {
  std::string text;
  bool bare_degrees;
  double radians() const { return parse_angle_flag(text, bare_degrees); }
};

}  // namespace

double parse_angle_flag(std::string_view value, bool bare_unit_degrees) {
  value = text::trim(value);
  bool degrees = bare_unit_degrees;
  if (value.ends_with("deg")) {
    degrees = true;
    value.remove_suffix(3);
  } else if (value.ends_with("rad")) {
    degrees = false;
    value.remove_suffix(3);
  }
  double v = 0;
  if (!text::parse_double(value, v)) throw CommandError("invalid angle '" + std::string(value) + "'");
  return degrees ? deg_to_rad(v) : v;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rotated-box geometry toolkit for oriented text detection", "rrpn"};
  app.require_subcommand(1);

  // iou
  auto* iou_cmd = app.add_subcommand("iou", "Skew-IoU matrix between the boxes of two files");
  std::string iou_a, iou_b, iou_format = "dets";
  iou_cmd->add_option("file_a", iou_a, "Rows")->required();
  iou_cmd->add_option("file_b", iou_b, "Columns")->required();
  iou_cmd->add_option("--format", iou_format, "dets, msra, icdar13 or icdar15")
      ->check(CLI::IsMember({"dets", "msra", "icdar13", "icdar15"}));

  // nms
  auto* nms_cmd = app.add_subcommand("nms", "Skew non-maximum suppression over a detection file");
  std::string nms_file;
  NmsConfig nms_cfg;
  AngleOption nms_angle{"15deg", false};
  nms_cmd->add_option("dets_file", nms_file)->required();
  nms_cmd->add_option("--iou-keep", nms_cfg.iou_keep, "Suppress above this IoU")->capture_default_str();
  nms_cmd->add_option("--iou-low", nms_cfg.iou_low, "Lower end of the angle-checked IoU band")->capture_default_str();
  nms_cmd->add_option("--angle-limit", nms_angle.text, "Angle gap; 'deg' suffix or radians")->capture_default_str();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Precision/recall/F-measure of detections against ground truth");
  std::string dets_dir, gts_dir, eval_format = "msra";
  double eval_iou = 0.5;
  bool horizontal = false;
  eval_cmd->add_option("dets_dir", dets_dir)->required();
  eval_cmd->add_option("gts_dir", gts_dir)->required();
  eval_cmd->add_option("--format", eval_format)->check(CLI::IsMember({"msra", "icdar13", "icdar15"}))->capture_default_str();
  eval_cmd->add_option("--iou", eval_iou, "Match threshold (strict >)")->capture_default_str();
  eval_cmd->add_flag("--horizontal", horizontal, "Fit every box to its axis-aligned bounds first");

  // link
  auto* link_cmd = app.add_subcommand("link", "Merge collinear detections into text lines");
  std::string link_file;
  AngleOption link_angle{"10", true};
  link_cmd->add_option("dets_file", link_file)->required();
  link_cmd->add_option("--angle-threshold", link_angle.text, "Degrees, or 'rad' suffix")->capture_default_str();

  // augment
  auto* aug_cmd = app.add_subcommand("augment", "Rotate and enlarge a ground-truth file");
  std::string aug_file, aug_format = "msra";
  AngleOption aug_alpha{"0", false};
  int image_w = 0, image_h = 0;
  double enlarge = 1.0;
  aug_cmd->add_option("gt_file", aug_file)->required();
  aug_cmd->add_option("--format", aug_format)->check(CLI::IsMember({"msra", "icdar13", "icdar15"}))->capture_default_str();
  aug_cmd->add_option("--alpha", aug_alpha.text, "Image rotation in [0, 2pi); 'deg' suffix or radians")->capture_default_str();
  aug_cmd->add_option("--image-w", image_w)->required()->check(CLI::PositiveNumber);
  aug_cmd->add_option("--image-h", image_h)->required()->check(CLI::PositiveNumber);
  aug_cmd->add_option("--enlarge", enlarge, "Context enlargement factor")->capture_default_str();

  // anchors
  auto* anc_cmd = app.add_subcommand("anchors", "Dump the rotation-anchor lattice");
  int feat_w = 0, feat_h = 0;
  double stride = AnchorSpec{}.stride, padding = 0.25;
  std::optional<int> anc_img_w, anc_img_h;
  anc_cmd->add_option("--feat-w", feat_w)->required()->check(CLI::PositiveNumber);
  anc_cmd->add_option("--feat-h", feat_h)->required()->check(CLI::PositiveNumber);
  anc_cmd->add_option("--stride", stride)->capture_default_str();
  auto* img_w_opt = anc_cmd->add_option("--image-w", anc_img_w, "Enables border filtering");
  auto* img_h_opt = anc_cmd->add_option("--image-h", anc_img_h);
  img_w_opt->needs(img_h_opt);
  img_h_opt->needs(img_w_opt);
  anc_cmd->add_option("--padding", padding, "Border padding factor")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*iou_cmd) {
      const auto as = load_boxes(iou_a, iou_format);
      const auto bs = load_boxes(iou_b, iou_format);
      const auto m = skew_iou_matrix(as, bs);
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        std::string row;
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
          if (j) row += ' ';
          row += text::format_fixed6(m(i, j));
        }
        out << row << '\n';
      }
    } else if (*nms_cmd) {
      nms_cfg.angle_limit = nms_angle.radians();
      out << serialize_detections(skew_nms(load_detections(nms_file), nms_cfg));
    } else if (*eval_cmd) {
      const GtFormat format = parse_gt_format(eval_format);
      const auto gt_files = list_files(gts_dir, "gt_");
      const auto det_files = list_files(dets_dir, "res_");
      std::vector<std::string> missing;
      for (const auto& [key, path] : det_files) {
        if (!gt_files.contains(key)) missing.push_back(path.filename().string());
      }
      if (!missing.empty()) {
        std::string msg = "no ground truth for:";
        for (const auto& m : missing) msg += ' ' + m;
        throw CommandError(msg);
      }
      EvalCounts total;
      for (const auto& [key, gt_path] : gt_files) {
        auto gts = parse_file(gt_path.string(), [format](const std::string& s) { return parse_ground_truth(format, s); });
        std::vector<Detection> dets;
        if (auto it = det_files.find(key); it != det_files.end()) dets = load_detections(it->second.string());
        if (horizontal) {
          for (auto& g : gts) g.box = to_horizontal(g.box);
          for (auto& d : dets) d.box = to_horizontal(d.box);
        }
        const EvalResult r = evaluate(dets, gts, eval_iou);
        out << gt_path.filename().string() << ' ' << format_prf(r.precision, r.recall, r.f_measure) << '\n';
        total += r.counts;
      }
      out << format_prf(total.precision(), total.recall(), total.f_measure()) << '\n';
    } else if (*link_cmd) {
      LinkConfig cfg{rad_to_deg(link_angle.radians())};
      out << serialize_detections(link_detections(load_detections(link_file), cfg));
    } else if (*aug_cmd) {
      const GtFormat format = parse_gt_format(aug_format);
      const double alpha = aug_alpha.radians();
      const ImageSize img(image_w, image_h);
      auto gts = parse_file(aug_file, [format](const std::string& s) { return parse_ground_truth(format, s); });
      for (auto& g : gts) g.box = canonicalize(enlarge_context(rotate_ground_truth(g.box, alpha, img), enlarge));
      out << serialize_ground_truth(format, gts);
    } else if (*anc_cmd) {
      AnchorSpec spec;
      spec.stride = stride;
      const AnchorGrid grid = generate_anchors(spec, feat_w, feat_h);
      std::vector<IndexedAnchor> kept;
      if (anc_img_w) {
        kept = filter_border(grid, ImageSize(*anc_img_w, *anc_img_h), padding);
      } else {
        kept.reserve(grid.boxes.size());
        for (std::size_t i = 0; i < grid.boxes.size(); ++i) kept.push_back({i, grid.boxes[i]});
      }
      std::string dump;
      for (const auto& a : kept) {
        dump += std::to_string(a.index) + ' ' + text::format_fixed6(a.box.x) + ' ' + text::format_fixed6(a.box.y) +
                ' ' + text::format_fixed6(a.box.w) + ' ' + text::format_fixed6(a.box.h) + ' ' +
                text::format_fixed6(a.box.theta) + '\n';
      }
      out << dump;
      err << "anchors: " << kept.size() << " kept of " << grid.boxes.size() << '\n';
    }
  } catch (const std::exception& e) {
    err << "rrpn: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rrpn::cli
