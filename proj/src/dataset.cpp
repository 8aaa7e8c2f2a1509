// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <set>

#include "rrpn/errors.hpp"
#include "rrpn/text_io.hpp"

namespace rrpn {

namespace {

constexpr std::string_view kUnreadableMark = "###";
constexpr std::string_view kUtf8Bom = "\xEF\xBB\xBF";

double number_or_throw(std::string_view token, std::size_t line, const char* field) {
  double v = 0;
  if (!text::parse_double(token, v)) {
    throw ParseError(line, std::string("expected a number for ") + field + ", got '" + std::string(token) + "'");
  }
  return v;
}

std::optional<std::string> transcription_of(std::string_view word) {
  if (word.empty()) return std::nullopt;
  return std::string(word);
}

// Transcription to write back out; unreadable instances always carry the mark.
std::string written_transcription(const GroundTruthInstance& gt) {
  if (!gt.readable) return std::string(kUnreadableMark);
  return gt.transcription.value_or("");
}

struct AxisBounds {
  double left, top, right, bottom;
};

AxisBounds axis_bounds(const RotatedBoxd& box) {
  const auto poly = box_vertices(box);
  AxisBounds b{poly[0].x(), poly[0].y(), poly[0].x(), poly[0].y()};
  for (const auto& v : poly.vertices) {
    b.left = std::min(b.left, v.x());
    b.right = std::max(b.right, v.x());
    b.top = std::min(b.top, v.y());
    b.bottom = std::max(b.bottom, v.y());
  }
  return b;
}

std::vector<Point2<double>> convex_hull(std::vector<Point2<double>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  pts.erase(std::unique(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return (a - b).norm() < 1e-9; }),
            pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2<double>> hull(2 * pts.size());
  std::size_t k = 0;
  auto turn = [](const Point2<double>& o, const Point2<double>& a, const Point2<double>& b) {
    return cross2<double>(a - o, b - o);
  };
  for (const auto& p : pts) {
    while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

GtFormat parse_gt_format(std::string_view name) {
  if (name == "msra") return GtFormat::Msra;
  if (name == "icdar13") return GtFormat::Icdar13;
  if (name == "icdar15") return GtFormat::Icdar15;
  throw InvalidArgument("unknown ground-truth format '" + std::string(name) + "'");
}

std::string_view to_string(GtFormat format) {
  switch (format) {
    case GtFormat::Msra:
      return "msra";
    case GtFormat::Icdar13:
      return "icdar13";
    case GtFormat::Icdar15:
      return "icdar15";
  }
  return "unknown";
}

std::vector<GroundTruthInstance> parse_msra(std::string_view contents) {
  std::vector<GroundTruthInstance> out;
  const auto lines = text::split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    const auto tokens = text::split_whitespace(lines[n]);
    if (tokens.empty()) continue;
    if (tokens.size() != 7) {
      throw ParseError(line_no, "expected 7 fields 'index difficulty x y w h angle', got " +
                                    std::to_string(tokens.size()));
    }
    long index = 0;
    long difficulty = 0;
    if (!text::parse_int(tokens[0], index)) throw ParseError(line_no, "bad index '" + std::string(tokens[0]) + "'");
    if (!text::parse_int(tokens[1], difficulty) || (difficulty != 0 && difficulty != 1)) {
      throw ParseError(line_no, "difficulty must be 0 or 1");
    }
    const double x = number_or_throw(tokens[2], line_no, "x");
    const double y = number_or_throw(tokens[3], line_no, "y");
    const double w = number_or_throw(tokens[4], line_no, "w");
    const double h = number_or_throw(tokens[5], line_no, "h");
    const double angle = number_or_throw(tokens[6], line_no, "angle");
    if (!(w > 0) || !(h > 0)) throw ParseError(line_no, "w and h must be positive");
    const RotatedBoxd box = canonicalize(RotatedBoxd(x + w / 2, y + h / 2, h, w, angle));
    out.push_back({box, difficulty == 0, std::nullopt});
  }
  return out;
}

std::string serialize_msra(const std::vector<GroundTruthInstance>& gts) {
  std::string out;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    const RotatedBoxd& b = gts[i].box;
    out += std::to_string(i) + ' ' + (gts[i].readable ? '0' : '1') + ' ' + text::format_shortest(b.x - b.w / 2) +
           ' ' + text::format_shortest(b.y - b.h / 2) + ' ' + text::format_shortest(b.w) + ' ' +
           text::format_shortest(b.h) + ' ' + text::format_shortest(b.theta) + '\n';
  }
  return out;
}

std::vector<GroundTruthInstance> parse_icdar15(std::string_view contents) {
  if (contents.starts_with(kUtf8Bom)) contents.remove_prefix(kUtf8Bom.size());
  std::vector<GroundTruthInstance> out;
  const auto lines = text::split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    std::string_view rest = lines[n];
    if (text::trim(rest).empty()) continue;
    std::array<double, 8> coords{};
    for (std::size_t c = 0; c < coords.size(); ++c) {
      const std::size_t comma = rest.find(',');
      if (comma == std::string_view::npos) {
        if (c == 7) {
          coords[c] = number_or_throw(rest, line_no, "vertex coordinate");
          rest = {};
          break;
        }
        throw ParseError(line_no, "expected 8 comma-separated vertex coordinates");
      }
      coords[c] = number_or_throw(rest.substr(0, comma), line_no, "vertex coordinate");
      rest.remove_prefix(comma + 1);
    }
    const std::string_view word = text::trim(rest);
    Quad quad;
    for (std::size_t k = 0; k < 4; ++k) quad[k] = {coords[2 * k], coords[2 * k + 1]};
    RotatedBoxd box = [&] {
      try {
        return quad_to_rotated_rect(quad);
      } catch (const DegenerateInput& e) {
        throw ParseError(line_no, e.what());
      }
    }();
    out.push_back({box, word != kUnreadableMark, transcription_of(word)});
  }
  return out;
}

std::string serialize_icdar15(const std::vector<GroundTruthInstance>& gts) {
  std::string out;
  for (const auto& gt : gts) {
    for (const auto& v : box_vertices(gt.box).vertices) {
      out += text::format_shortest(v.x()) + ',' + text::format_shortest(v.y()) + ',';
    }
    out += written_transcription(gt) + '\n';
  }
  return out;
}

std::vector<GroundTruthInstance> parse_icdar13(std::string_view contents) {
  if (contents.starts_with(kUtf8Bom)) contents.remove_prefix(kUtf8Bom.size());
  std::vector<GroundTruthInstance> out;
  const auto lines = text::split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const std::size_t line_no = n + 1;
    std::string_view line = text::trim(lines[n]);
    if (line.empty()) continue;

    std::string_view numbers = line;
    std::optional<std::string> word;
    if (const std::size_t q = line.find('"'); q != std::string_view::npos) {
      const std::size_t q_end = line.rfind('"');
      if (q_end == q) throw ParseError(line_no, "unterminated quoted transcription");
      numbers = line.substr(0, q);
      word = std::string(line.substr(q + 1, q_end - q - 1));
    }
    std::string cleaned(numbers);
    std::replace(cleaned.begin(), cleaned.end(), ',', ' ');
    auto tokens = text::split_whitespace(cleaned);
    if (!word && tokens.size() > 4) {
      // Unquoted word: everything after the fourth number.
      const auto w = static_cast<std::size_t>(tokens[4].data() - cleaned.data());
      word = std::string(text::trim(numbers.substr(w)));
      tokens.resize(4);
    }
    if (tokens.size() != 4) throw ParseError(line_no, "expected 'left, top, right, bottom, \"word\"'");
    const double left = number_or_throw(tokens[0], line_no, "left");
    const double top = number_or_throw(tokens[1], line_no, "top");
    const double right = number_or_throw(tokens[2], line_no, "right");
    const double bottom = number_or_throw(tokens[3], line_no, "bottom");
    if (!(right > left) || !(bottom > top)) throw ParseError(line_no, "need right > left and bottom > top");
    const RotatedBoxd box =
        canonicalize(RotatedBoxd((left + right) / 2, (top + bottom) / 2, bottom - top, right - left, 0.0));
    const bool readable = !(word && *word == kUnreadableMark);
    out.push_back({box, readable, word && !word->empty() ? word : std::nullopt});
  }
  return out;
}

std::string serialize_icdar13(const std::vector<GroundTruthInstance>& gts) {
  std::string out;
  for (const auto& gt : gts) {
    const AxisBounds b = axis_bounds(gt.box);
    out += text::format_shortest(b.left) + ", " + text::format_shortest(b.top) + ", " +
           text::format_shortest(b.right) + ", " + text::format_shortest(b.bottom) + ", \"" +
           written_transcription(gt) + "\"\n";
  }
  return out;
}

std::vector<GroundTruthInstance> parse_ground_truth(GtFormat format, std::string_view contents) {
  switch (format) {
    case GtFormat::Msra:
      return parse_msra(contents);
    case GtFormat::Icdar13:
      return parse_icdar13(contents);
    case GtFormat::Icdar15:
      return parse_icdar15(contents);
  }
  throw InvalidArgument("parse_ground_truth: unknown format");
}

std::string serialize_ground_truth(GtFormat format, const std::vector<GroundTruthInstance>& gts) {
  switch (format) {
    case GtFormat::Msra:
      return serialize_msra(gts);
    case GtFormat::Icdar13:
      return serialize_icdar13(gts);
    case GtFormat::Icdar15:
      return serialize_icdar15(gts);
  }
  throw InvalidArgument("serialize_ground_truth: unknown format");
}

RotatedBoxd quad_to_rotated_rect(const Quad& quad) {
  for (const auto& p : quad) {
    if (!p.allFinite()) throw DegenerateInput("quad_to_rotated_rect: non-finite vertex");
  }
  const auto hull = convex_hull({quad.begin(), quad.end()});
  if (hull.size() < 3) throw DegenerateInput("quad_to_rotated_rect: points are collinear or duplicated");
  Polygon<double> hull_poly{hull};
  double scale = 0;
  for (const auto& p : hull) scale = std::max(scale, (p - hull[0]).norm());
  if (shoelace_area(hull_poly) <= 1e-12 * scale * scale) {
    throw DegenerateInput("quad_to_rotated_rect: points span no area");
  }

  struct Candidate {
    double area;
    RotatedBoxd box;
  };
  std::vector<Candidate> candidates;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2<double> origin = hull[i];
    const Point2<double> e = (hull[(i + 1) % hull.size()] - origin).normalized();
    const Point2<double> nrm(-e.y(), e.x());
    double u_min = 0, u_max = 0, v_min = 0, v_max = 0;
    for (const auto& p : hull) {
      const Point2<double> d = p - origin;
      u_min = std::min(u_min, d.dot(e));
      u_max = std::max(u_max, d.dot(e));
      v_min = std::min(v_min, d.dot(nrm));
      v_max = std::max(v_max, d.dot(nrm));
    }
    const Point2<double> c = origin + e * ((u_min + u_max) / 2) + nrm * ((v_min + v_max) / 2);
    // Side along e is the box's w axis, whose direction is (cos t, -sin t).
    candidates.push_back({(u_max - u_min) * (v_max - v_min),
                          canonicalize(RotatedBoxd(c.x(), c.y(), v_max - v_min, u_max - u_min,
                                                   std::atan2(-e.y(), e.x())))});
  }
  double min_area = candidates.front().area;
  for (const auto& c : candidates) min_area = std::min(min_area, c.area);
  const Candidate* best = nullptr;
  for (const auto& c : candidates) {
    if (c.area > min_area * (1 + 1e-9)) continue;
    if (!best || std::abs(c.box.theta) < std::abs(best->box.theta)) best = &c;
  }
  return best->box;
}

RotatedBoxd enlarge_context(const RotatedBoxd& box, double factor) {
  if (!(factor > 0) || !std::isfinite(factor)) throw InvalidArgument("enlarge_context: factor must be positive");
  return {box.x, box.y, box.h * factor, box.w * factor, box.theta};
}

std::vector<GroundTruthInstance> filter_unreadable(const std::vector<GroundTruthInstance>& gts,
                                                   double remove_proportion, std::uint64_t seed) {
  if (!(remove_proportion >= 0 && remove_proportion <= 1)) {
    throw InvalidArgument("filter_unreadable: proportion must lie in [0, 1]");
  }
  std::vector<std::size_t> unreadable;
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (!gts[i].readable) unreadable.push_back(i);
  }
  // The small slack keeps products such as 0.29 * 100 from flooring to 28.
  const auto n_remove = static_cast<std::size_t>(
      std::floor(remove_proportion * static_cast<double>(unreadable.size()) + 1e-9));
  std::vector<std::size_t> removed;
  std::mt19937_64 rng(seed);
  std::sample(unreadable.begin(), unreadable.end(), std::back_inserter(removed), n_remove, rng);
  const std::set<std::size_t> drop(removed.begin(), removed.end());

  std::vector<GroundTruthInstance> out;
  out.reserve(gts.size() - drop.size());
  for (std::size_t i = 0; i < gts.size(); ++i) {
    if (!drop.contains(i)) out.push_back(gts[i]);
  }
  return out;
}

RotatedBoxd to_horizontal(const RotatedBoxd& box) {
  const AxisBounds b = axis_bounds(box);
  return canonicalize(
      RotatedBoxd((b.left + b.right) / 2, (b.top + b.bottom) / 2, b.bottom - b.top, b.right - b.left, 0.0));
}

}  // namespace rrpn
