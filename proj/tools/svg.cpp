#include "svg.hpp"
#include "textio.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace royden::svg {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

std::string polyline(const std::vector<std::pair<double, double>>& pts, const std::string& style,
                     bool close) {
    std::string d;
    for (size_t i = 0; i < pts.size(); ++i) {
        d += (i == 0 ? "M" : "L");
        d += num(pts[i].first) + " " + num(pts[i].second);
    }
    if (close) d += "Z";
    return "<path d=\"" + d + "\" " + style + "/>\n";
}

} // namespace

std::string polar_plot(const std::vector<SphereSample>& samples) {
    const double W = 640.0, H = 640.0, margin = 40.0;
    double rmax = 1e-12;
    for (const auto& s : samples) rmax = std::max(rmax, s.r);
    double scale = (0.5 * W - margin) / rmax;
    auto X = [&](double x) { return 0.5 * W + scale * x; };
    auto Y = [&](double y) { return 0.5 * H - scale * y; };

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) +
                      "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // axes
    out += "<line x1=\"" + num(margin / 2) + "\" y1=\"" + num(H / 2) + "\" x2=\"" +
           num(W - margin / 2) + "\" y2=\"" + num(H / 2) +
           "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    out += "<line x1=\"" + num(W / 2) + "\" y1=\"" + num(margin / 2) + "\" x2=\"" + num(W / 2) +
           "\" y2=\"" + num(H - margin / 2) + "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";

    // dashed rays at near-singular directions, both ends of the diameter
    for (const auto& s : samples) {
        if (!s.near_singular) continue;
        double c = std::cos(s.theta), sn = std::sin(s.theta);
        double L = 1.08 * rmax;
        out += "<line x1=\"" + num(X(0)) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" + num(X(L * c)) +
               "\" y2=\"" + num(Y(L * sn)) +
               "\" stroke=\"#777777\" stroke-width=\"1\" stroke-dasharray=\"6 4\"/>\n";
    }

    std::vector<std::pair<double, double>> pts;
    for (const auto& s : samples)
        pts.emplace_back(X(s.r * std::cos(s.theta)), Y(s.r * std::sin(s.theta)));
    out += polyline(pts, "fill=\"none\" stroke=\"black\" stroke-width=\"1.6\"", true);

    out += "<text x=\"" + num(W / 2 + scale * rmax) + "\" y=\"" + num(H / 2 - 6) +
           "\" font-size=\"12\" fill=\"#555555\">r = " + textio::format_double(rmax).substr(0, 6) +
           "</text>\n";
    out += "</svg>\n";
    return out;
}

std::string derivative_panels(const std::vector<SphereSample>& samples) {
    const double W = 900.0, H = 640.0;
    const double pw = W / 2.0, ph = H / 2.0, pad = 42.0;
    const char* titles[4] = {"r", "r'", "r''", "r'''"};

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) +
                      "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) +
                      "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (int panel = 0; panel < 4; ++panel) {
        double ox = (panel % 2) * pw, oy = (panel / 2) * ph;
        double x0 = ox + pad, x1 = ox + pw - pad / 2;
        double y0 = oy + pad / 2, y1 = oy + ph - pad;

        auto value = [&](const SphereSample& s) {
            switch (panel) {
                case 0: return s.r;
                case 1: return s.d1;
                case 2: return s.d2;
                default: return s.d3;
            }
        };
        double vmin = 1e300, vmax = -1e300;
        for (const auto& s : samples) {
            vmin = std::min(vmin, value(s));
            vmax = std::max(vmax, value(s));
        }
        if (vmax - vmin < 1e-12) {
            vmax += 1.0;
            vmin -= 1.0;
        }
        double tmax = 2.0 * std::numbers::pi;
        auto X = [&](double th) { return x0 + (x1 - x0) * th / tmax; };
        auto Y = [&](double v) { return y1 - (y1 - y0) * (v - vmin) / (vmax - vmin); };

        out += "<rect x=\"" + num(x0) + "\" y=\"" + num(y0) + "\" width=\"" + num(x1 - x0) +
               "\" height=\"" + num(y1 - y0) + "\" fill=\"none\" stroke=\"#999999\"/>\n";
        if (vmin < 0.0 && vmax > 0.0)
            out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(Y(0)) + "\" x2=\"" + num(x1) +
                   "\" y2=\"" + num(Y(0)) + "\" stroke=\"#dddddd\"/>\n";

        for (const auto& s : samples) {
            if (!s.near_singular) continue;
            out += "<line x1=\"" + num(X(s.theta)) + "\" y1=\"" + num(y0) + "\" x2=\"" +
                   num(X(s.theta)) + "\" y2=\"" + num(y1) +
                   "\" stroke=\"#bbbbbb\" stroke-width=\"1\" stroke-dasharray=\"5 4\"/>\n";
        }

        std::vector<std::pair<double, double>> pts;
        for (const auto& s : samples) pts.emplace_back(X(s.theta), Y(value(s)));
        out += polyline(pts, "fill=\"none\" stroke=\"black\" stroke-width=\"1.2\"", false);

        out += "<text x=\"" + num(x0 + 6) + "\" y=\"" + num(y0 + 16) +
               "\" font-size=\"14\" fill=\"#333333\">" + titles[panel] + "</text>\n";
        // theta ticks at 0, pi, 2 pi
        for (double tick : {0.0, std::numbers::pi, 2.0 * std::numbers::pi}) {
            out += "<line x1=\"" + num(X(tick)) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(X(tick)) +
                   "\" y2=\"" + num(y1 + 5) + "\" stroke=\"#999999\"/>\n";
        }
    }
    out += "</svg>\n";
    return out;
}

} // namespace royden::svg
