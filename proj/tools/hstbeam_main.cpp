// SPDX-License-Identifier: Apache-2.0
//
// hstbeam: location-aware beam-forming toolkit for high-speed rail links

#include <iostream>

#include "cli/commands.hpp"

int main(int argc, char **argv) {
  return hstbeam::cli::run_cli(argc, argv, std::cout, std::cerr);
}
