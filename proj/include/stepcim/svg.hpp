#pragma once

#include <string>
#include <vector>

namespace stepcim::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string line_chart(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series);

// One group per category, one bar per series inside each group.
std::string bar_chart(const std::string& title, const std::string& ylabel,
                      const std::vector<std::string>& categories,
                      const std::vector<Series>& series);

}  // namespace stepcim::svg
