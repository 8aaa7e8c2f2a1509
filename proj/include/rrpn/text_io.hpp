// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rrpn::text {

/// Splits on '\n', dropping a trailing '\r' from each line. A final
/// newline does not produce an extra empty line.
std::vector<std::string_view> split_lines(std::string_view contents);

std::string_view trim(std::string_view s);

std::vector<std::string_view> split_whitespace(std::string_view s);

/// Full-token numeric parse; false on trailing garbage or non-finite results.
bool parse_double(std::string_view token, double& out);
bool parse_int(std::string_view token, long& out);

/// Shortest decimal that reads back to the same double.
std::string format_shortest(double v);

/// Fixed six-decimal rendering used by all tabular outputs.
std::string format_fixed6(double v);

std::string read_file(const std::string& path);

}  // namespace rrpn::text
