#pragma once

#include <string>

#include "inscribed/config_space.hpp"

namespace inscribed {

struct SvgOptions {
  int width = 800;
  int height = 800;
  int rectangles_per_component = 40;  // capped at 40
  double margin = 0.08;               // fraction of the view left blank at each side
};

/// One family per relabeling orbit.  Output depends only on the analysis
/// and the options.
std::string render_svg(const Analysis& analysis, const SvgOptions& options = {});

}  // namespace inscribed
