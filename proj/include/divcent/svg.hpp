#pragma once

#include <string>
#include <vector>

namespace divcent::svg {

struct Series {
    std::string name;
    std::vector<double> values;  // one per category / x position
};

/// Grouped vertical bars, one group per category and one bar per series.
/// Negative values hang below a zero baseline.
struct BarChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<std::string> categories;
    std::vector<Series> series;
};

/// Polylines over shared x positions.
struct LineChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> x;
    std::vector<Series> series;
};

/// Self-contained SVG documents (no external references, no scripts).
std::string render(const BarChart& chart);
std::string render(const LineChart& chart);

std::string escape_xml(const std::string& text);

}  // namespace divcent::svg
