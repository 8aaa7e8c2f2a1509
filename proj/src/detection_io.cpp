// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#include "rrpn/detection_io.hpp"

#include "rrpn/errors.hpp"
#include "rrpn/text_io.hpp"

namespace rrpn {

namespace {

struct Row {
  RotatedBoxd box;
  double score;
};

std::vector<Row> parse_rows(std::string_view contents, bool score_required) {
  std::vector<Row> rows;
  const auto lines = text::split_lines(contents);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto tokens = text::split_whitespace(lines[n]);
    if (tokens.empty()) continue;
    const std::size_t line_no = n + 1;
    if (tokens.size() != 6 && (score_required || tokens.size() != 5)) {
      throw ParseError(line_no, "expected 'cx cy w h theta score', got " + std::to_string(tokens.size()) + " fields");
    }
    double v[6] = {0, 0, 0, 0, 0, 1};
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (!text::parse_double(tokens[i], v[i])) {
        throw ParseError(line_no, "not a number: '" + std::string(tokens[i]) + "'");
      }
    }
    if (!(v[2] > 0) || !(v[3] > 0)) throw ParseError(line_no, "w and h must be positive");
    if (!(v[5] >= 0 && v[5] <= 1)) throw ParseError(line_no, "score must lie in [0, 1]");
    rows.push_back({canonicalize(RotatedBoxd(v[0], v[1], v[3], v[2], v[4])), v[5]});
  }
  return rows;
}

}  // namespace

std::vector<Detection> parse_detections(std::string_view contents) {
  std::vector<Detection> dets;
  for (const auto& r : parse_rows(contents, true)) dets.emplace_back(r.box, r.score);
  return dets;
}

std::vector<RotatedBoxd> parse_boxes(std::string_view contents) {
  std::vector<RotatedBoxd> boxes;
  for (const auto& r : parse_rows(contents, false)) boxes.push_back(r.box);
  return boxes;
}

std::string format_detection(const Detection& det) {
  const RotatedBoxd& b = det.box;
  return text::format_fixed6(b.x) + ' ' + text::format_fixed6(b.y) + ' ' + text::format_fixed6(b.w) + ' ' +
         text::format_fixed6(b.h) + ' ' + text::format_fixed6(b.theta) + ' ' + text::format_fixed6(det.score) +
         '\n';
}

std::string serialize_detections(const std::vector<Detection>& dets) {
  std::string out;
  for (const auto& d : dets) out += format_detection(d);
  return out;
}

}  // namespace rrpn
