#include "stepcim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace stepcim::svg {

namespace {

constexpr double W = 640, H = 420, L = 70, R = 150, T = 40, B = 60;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string escape(const std::string& s) {
    std::string o;
    for (char c : s) {
        if (c == '<') o += "&lt;";
        else if (c == '>') o += "&gt;";
        else if (c == '&') o += "&amp;";
        else o += c;
    }
    return o;
}

std::string header(const std::string& title, const std::string& xlabel, const std::string& ylabel) {
    std::string s = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"12\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        "<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n"
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n"
        "<text x=\"16\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
        W, H, (L + W - R) / 2, escape(title), (L + W - R) / 2, H - 15, escape(xlabel),
        (T + H - B) / 2, (T + H - B) / 2, escape(ylabel));
    s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     L, T, W - L - R, H - T - B);
    return s;
}

std::string legend(const std::vector<Series>& series) {
    std::string s;
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double y = T + 10 + 18.0 * k;
        s += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n", W - R + 10, y,
                         kColors[k % 6]);
        s += fmt::format("<text x=\"{}\" y=\"{}\">{}</text>\n", W - R + 28, y + 10, escape(series[k].label));
    }
    return s;
}

std::string yaxis(double lo, double hi) {
    std::string s;
    for (int k = 0; k <= 4; ++k) {
        const double v = lo + (hi - lo) * k / 4;
        const double y = H - B - (H - T - B) * k / 4;
        s += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", L - 5, y + 4, v);
    }
    return s;
}

void pad(double& lo, double& hi) {
    if (hi <= lo) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& xlabel,
                       const std::string& ylabel, const std::vector<Series>& series) {
    double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo, ylo = xlo, yhi = -xlo;
    for (const auto& s : series)
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
            xlo = std::min(xlo, s.x[k]);
            xhi = std::max(xhi, s.x[k]);
            ylo = std::min(ylo, s.y[k]);
            yhi = std::max(yhi, s.y[k]);
        }
    if (!std::isfinite(xlo)) xlo = 0, xhi = 1, ylo = 0, yhi = 1;
    pad(xlo, xhi);
    pad(ylo, yhi);
    std::string out = header(title, xlabel, ylabel) + yaxis(ylo, yhi);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", L, H - B + 16, xlo);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", W - R, H - B + 16, xhi);
    for (std::size_t k = 0; k < series.size(); ++k) {
        std::string pts;
        const auto& s = series[k];
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            const double px = L + (s.x[i] - xlo) / (xhi - xlo) * (W - L - R);
            const double py = H - B - (s.y[i] - ylo) / (yhi - ylo) * (H - T - B);
            pts += fmt::format("{:.2f},{:.2f} ", px, py);
        }
        out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
                           kColors[k % 6], pts);
    }
    return out + legend(series) + "</svg>\n";
}

std::string bar_chart(const std::string& title, const std::string& ylabel,
                      const std::vector<std::string>& categories, const std::vector<Series>& series) {
    double yhi = 0.0;
    for (const auto& s : series)
        for (double v : s.y) yhi = std::max(yhi, v);
    if (yhi <= 0.0) yhi = 1.0;
    std::string out = header(title, "", ylabel) + yaxis(0.0, yhi);
    const double gw = (W - L - R) / std::max<std::size_t>(1, categories.size());
    const double bw = gw * 0.8 / std::max<std::size_t>(1, series.size());
    for (std::size_t c = 0; c < categories.size(); ++c) {
        const double gx = L + gw * c + gw * 0.1;
        for (std::size_t k = 0; k < series.size(); ++k) {
            if (c >= series[k].y.size()) continue;
            const double h = series[k].y[c] / yhi * (H - T - B);
            out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"{}\"/>\n",
                               gx + bw * k, H - B - h, bw, h, kColors[k % 6]);
        }
        out += fmt::format("<text x=\"{:.2f}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n", gx + gw * 0.4,
                           H - B + 16, escape(categories[c]));
    }
    return out + legend(series) + "</svg>\n";
}

}  // namespace stepcim::svg
