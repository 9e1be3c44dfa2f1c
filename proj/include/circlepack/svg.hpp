#pragma once

#include <string>

#include "circlepack/io.hpp"

namespace circlepack {

struct SvgOptions {
    double stroke = 1.0;
    bool labels = false;
    bool pockets = false;
};

// Paper coordinates with y up, fitted into a 1000 unit viewport.
std::string render_svg(const io::LayoutFile& l, const SvgOptions& opt = {});

}  // namespace circlepack
