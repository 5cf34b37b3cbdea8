#pragma once

#include <string>
#include <vector>

namespace fpls::svg {

struct Box {
    std::string label;
    double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

struct Panel {
    std::string title;
    std::vector<Box> boxes;
};

/// Renders side-by-side boxplot panels (whiskers at min/max, matching the
/// summary CSV) as a standalone SVG document. Output is deterministic.
std::string render_boxplots(const std::vector<Panel>& panels);

}  // namespace fpls::svg
