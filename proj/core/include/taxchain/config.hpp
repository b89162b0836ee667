#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>

#include "taxchain/scenario.hpp"

namespace taxchain {

// INI-style scenario files:
//
//   [demand]  kind = normal|uniform|exponential; mu, sigma | lo, hi | rate
//   [market]  m, gamma0, eta, k
//   [tax]     tau, tau0
//   [policy]  alpha, beta
//   [agent]   reservation            (optional, default 0)
//   [solver]  tol, max_iter, grid_points, damping   (optional)
//
// '#' and ';' start comments. Unknown sections or keys are errors.
// Overrides have the form "section.key=value" and are applied before the
// scenario is assembled and validated.

Scenario parse_config_text(std::string_view text, std::span<const std::string> overrides = {},
                           std::string_view source = "<config>");

Scenario parse_config(const std::filesystem::path& path,
                      std::span<const std::string> overrides = {});

/// Serializes a scenario in the same schema; parse_config_text inverts it.
std::string to_config_text(const Scenario& s);

}  // namespace taxchain
