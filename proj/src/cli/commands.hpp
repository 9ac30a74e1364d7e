// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#pragma once

#include <iosfwd>

namespace hstbeam::cli {

/// Full CLI entry point, callable in-process for tests. argv follows main()
/// conventions (argv[0] is the program name). Returns the process exit
/// code: 0 on success, 2 on configuration or usage errors, 1 on runtime
/// computation errors.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace hstbeam::cli
