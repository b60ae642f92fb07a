// Copyright Contributors to the murearr project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace murearr {

/// Exit codes of the command line front end.
enum ExitCode : int { kExitPass = 0, kExitAssertion = 1, kExitUsage = 2, kExitNumerical = 3 };

/// Runs `mu_rearrange` with args (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace murearr
