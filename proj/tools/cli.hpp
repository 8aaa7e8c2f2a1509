// Copyright (C) 2026 The rrpn Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string_view>

namespace rrpn::cli {

/// Entry point shared by the `rrpn` binary and the tests. Results go to `out`,
/// diagnostics to `err`. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Angle flag value: "<number>deg", "<number>rad", or a bare number read in
/// `bare_unit_degrees ? degrees : radians`. Returns radians.
double parse_angle_flag(std::string_view text, bool bare_unit_degrees);

}  // namespace rrpn::cli
