#include "edgekit/io.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

namespace edgekit {

std::string svg_plot(const CdfEstimate& est, const std::string& title) {
    est.check_invariants();
    if (est.lambda_grid.empty()) throw std::invalid_argument("svg_plot: empty estimate");
    constexpr double kWidth = 640.0;
    constexpr double kHeight = 420.0;
    constexpr double kLeft = 60.0;
    constexpr double kRight = 20.0;
    constexpr double kTop = 40.0;
    constexpr double kBottom = 50.0;
    const double x0 = est.lambda_grid.front();
    double x1 = est.lambda_grid.back();
    if (x1 <= x0) x1 = x0 + 1.0;
    auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); };
    auto py = [&](double y) { return kTop + (1.0 - y) * (kHeight - kTop - kBottom); };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
        kWidth, kHeight);
    out += fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"15\" text-anchor=\"middle\">{}</text>\n",
                       kWidth / 2, title);
    // Axes and ticks.
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kLeft, py(0.0), kWidth - kRight);
    out += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kLeft, py(0.0), py(1.0));
    for (int i = 0; i <= 4; ++i) {
        const double y = 0.25 * i;
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">{:.2f}</text>\n",
                           kLeft - 6, py(y) + 4, y);
        const double x = x0 + (x1 - x0) * 0.25 * i;
        out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{:.3g}</text>\n",
                           px(x), py(0.0) + 16, x);
    }
    out += fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">lambda</text>\n",
                       (kLeft + kWidth - kRight) / 2, kHeight - 10);
    out += fmt::format("<text x=\"14\" y=\"{0}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
                       "transform=\"rotate(-90 14 {0})\">P(Lambda_0 &gt; lambda)</text>\n",
                       (kTop + kHeight - kBottom) / 2);

    // Error band, then the curve.
    std::string band;
    const std::size_t n = est.lambda_grid.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double y = std::min(1.0, est.survival[i] + 2.0 * est.std_error[i]);
        band += fmt::format("{:.2f},{:.2f} ", px(est.lambda_grid[i]), py(y));
    }
    for (std::size_t i = n; i-- > 0;) {
        const double y = std::max(0.0, est.survival[i] - 2.0 * est.std_error[i]);
        band += fmt::format("{:.2f},{:.2f} ", px(est.lambda_grid[i]), py(y));
    }
    out += fmt::format("<polygon points=\"{}\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"none\"/>\n", band);
    std::string line;
    for (std::size_t i = 0; i < n; ++i) {
        line += fmt::format("{:.2f},{:.2f} ", px(est.lambda_grid[i]), py(est.survival[i]));
    }
    out += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\"/>\n", line);
    out += "</svg>\n";
    return out;
}

} // namespace edgekit
