#include "divcent/svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace divcent::svg {
namespace {

constexpr double kWidth = 860;
constexpr double kHeight = 500;
constexpr double kLeft = 90;
constexpr double kRight = 170;
constexpr double kTop = 50;
constexpr double kBottom = 70;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

constexpr std::array<const char*, 6> kPalette{"#c0392b", "#7f8c8d", "#2e6fbd",
                                              "#27ae60", "#8e44ad", "#e67e22"};

const char* colour(std::size_t i) { return kPalette[i % kPalette.size()]; }

struct Scale {
    double lo = 0.0;
    double hi = 1.0;
    double step = 0.25;

    double to_px(double v, double px_lo, double px_hi) const {
        return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
    }
};

// Round axis bounds outward to a 1/2/5 step giving about six ticks.
Scale nice_scale(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi <= lo) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 6.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    return {std::floor(lo / step) * step, std::ceil(hi / step) * step, step};
}

std::string fmt_num(double v) {
    if (std::abs(v) < 1e-300) return "0";
    return fmt::format("{:.4g}", v);
}

void header(std::string& out, const std::string& title) {
    out += fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
        "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n"
        "<text x=\"{2}\" y=\"28\" text-anchor=\"middle\" font-size=\"16\">{3}</text>\n",
        kWidth, kHeight, kLeft + kPlotW / 2, escape_xml(title));
}

void y_axis(std::string& out, const Scale& s, const std::string& label) {
    const double bottom = kTop + kPlotH;
    for (double v = s.lo; v <= s.hi + s.step * 1e-6; v += s.step) {
        const double y = s.to_px(v, bottom, kTop);
        out += fmt::format(
            "<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"#e0e0e0\"/>\n"
            "<text x=\"{3}\" y=\"{4:.2f}\" text-anchor=\"end\">{5}</text>\n",
            kLeft, y, kLeft + kPlotW, kLeft - 6, y + 4, fmt_num(v));
    }
    out += fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n"
        "<text x=\"20\" y=\"{3}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {3})\">{4}</text>\n",
        kLeft, kTop, bottom, kTop + kPlotH / 2, escape_xml(label));
}

void x_label(std::string& out, const std::string& label) {
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                       kLeft + kPlotW / 2, kHeight - 18, escape_xml(label));
}

void legend(std::string& out, const std::vector<Series>& series) {
    const double x = kLeft + kPlotW + 20;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double y = kTop + 10 + 22.0 * static_cast<double>(i);
        out += fmt::format(
            "<rect x=\"{0}\" y=\"{1}\" width=\"14\" height=\"14\" fill=\"{2}\"/>\n"
            "<text x=\"{3}\" y=\"{4}\">{5}</text>\n",
            x, y, colour(i), x + 20, y + 11, escape_xml(series[i].name));
    }
}

std::pair<double, double> value_range(const std::vector<Series>& series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const auto& s : series) {
        for (double v : s.values) {
            if (!std::isfinite(v)) continue;
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    return {lo, hi};
}

}  // namespace

std::string escape_xml(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string render(const BarChart& chart) {
    std::string out;
    header(out, chart.title);
    auto [lo, hi] = value_range(chart.series);
    const Scale s = nice_scale(std::min(0.0, lo), std::max(0.0, hi));
    y_axis(out, s, chart.y_label);
    x_label(out, chart.x_label);

    const double bottom = kTop + kPlotH;
    const double zero = s.to_px(0.0, bottom, kTop);
    const auto groups = std::max<std::size_t>(1, chart.categories.size());
    const double group_w = kPlotW / static_cast<double>(groups);
    const auto bars = std::max<std::size_t>(1, chart.series.size());
    const double bar_w = group_w * 0.8 / static_cast<double>(bars);

    for (std::size_t g = 0; g < chart.categories.size(); ++g) {
        const double gx = kLeft + group_w * static_cast<double>(g);
        for (std::size_t b = 0; b < chart.series.size(); ++b) {
            const auto& vals = chart.series[b].values;
            if (g >= vals.size() || !std::isfinite(vals[g])) continue;
            const double y = s.to_px(vals[g], bottom, kTop);
            out += fmt::format(
                "<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\">"
                "<title>{}: {}</title></rect>\n",
                gx + group_w * 0.1 + bar_w * static_cast<double>(b), std::min(y, zero), bar_w,
                std::abs(zero - y), colour(b), escape_xml(chart.series[b].name), fmt_num(vals[g]));
        }
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                           gx + group_w / 2, bottom + 18, escape_xml(chart.categories[g]));
    }
    out += fmt::format("<line x1=\"{0}\" y1=\"{1:.2f}\" x2=\"{2}\" y2=\"{1:.2f}\" stroke=\"black\"/>\n",
                       kLeft, zero, kLeft + kPlotW);
    legend(out, chart.series);
    out += "</svg>\n";
    return out;
}

std::string render(const LineChart& chart) {
    std::string out;
    header(out, chart.title);
    auto [lo, hi] = value_range(chart.series);
    const Scale ys = nice_scale(std::min(0.0, lo), hi);
    double xlo = chart.x.empty() ? 0.0 : *std::min_element(chart.x.begin(), chart.x.end());
    double xhi = chart.x.empty() ? 1.0 : *std::max_element(chart.x.begin(), chart.x.end());
    const Scale xs = nice_scale(std::min(0.0, xlo), xhi);
    y_axis(out, ys, chart.y_label);
    x_label(out, chart.x_label);

    const double bottom = kTop + kPlotH;
    for (double v = xs.lo; v <= xs.hi + xs.step * 1e-6; v += xs.step) {
        const double x = xs.to_px(v, kLeft, kLeft + kPlotW);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", x,
                           bottom + 18, fmt_num(v));
    }
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n",
                       kLeft, bottom, kLeft + kPlotW);

    for (std::size_t k = 0; k < chart.series.size(); ++k) {
        std::string points;
        const auto& vals = chart.series[k].values;
        for (std::size_t i = 0; i < std::min(vals.size(), chart.x.size()); ++i) {
            const double px = xs.to_px(chart.x[i], kLeft, kLeft + kPlotW);
            const double py = ys.to_px(vals[i], bottom, kTop);
            points += fmt::format("{}{:.2f},{:.2f}", points.empty() ? "" : " ", px, py);
            out += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px, py,
                               colour(k));
        }
        out += fmt::format(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"2\"/>\n", points,
            colour(k));
    }
    legend(out, chart.series);
    out += "</svg>\n";
    return out;
}

}  // namespace divcent::svg
