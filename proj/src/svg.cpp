#include "fracollapse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "fracollapse/errors.hpp"

namespace fracollapse {

namespace {

constexpr double kW = 720.0, kH = 480.0;
constexpr double kML = 70.0, kMR = 20.0, kMT = 40.0, kMB = 50.0;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

void SvgPlot::add_series(std::string label, std::vector<double> x, std::vector<double> y,
                         std::string color) {
    if (x.size() != y.size()) throw error("SvgPlot: series size mismatch");
    series_.push_back({std::move(label), std::move(x), std::move(y), std::move(color)});
}

void SvgPlot::write(const std::string& path) const {
    std::ofstream os(path);
    if (!os) throw io_error("cannot open for writing: " + path);

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series_) {
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            double y = s.y[i];
            if (log_y_ && !(y > 0.0)) continue;
            if (log_y_) y = std::log10(y);
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (!(xmin < xmax)) xmax = xmin + 1.0;
    if (!(ymin < ymax)) ymax = ymin + 1.0;

    auto sx = [&](double x) { return kML + (x - xmin) / (xmax - xmin) * (kW - kML - kMR); };
    auto sy = [&](double y) {
        if (log_y_) y = std::log10(y);
        return kH - kMB - (y - ymin) / (ymax - ymin) * (kH - kMT - kMB);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title_ << "</text>\n";

    // Axes
    os << "<line x1=\"" << kML << "\" y1=\"" << kH - kMB << "\" x2=\"" << kW - kMR << "\" y2=\""
       << kH - kMB << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kML << "\" y1=\"" << kMT << "\" x2=\"" << kML << "\" y2=\""
       << kH - kMB << "\" stroke=\"black\"/>\n";

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        double fx = xmin + (xmax - xmin) * i / nticks;
        double px = sx(fx);
        os << "<line x1=\"" << px << "\" y1=\"" << kH - kMB << "\" x2=\"" << px << "\" y2=\""
           << kH - kMB + 5 << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << kH - kMB + 20
           << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt(fx) << "</text>\n";
        double fy = ymin + (ymax - ymin) * i / nticks;
        double py = kH - kMB - (fy - ymin) / (ymax - ymin) * (kH - kMT - kMB);
        os << "<line x1=\"" << kML - 5 << "\" y1=\"" << py << "\" x2=\"" << kML << "\" y2=\"" << py
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << kML - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-size=\"11\">"
           << (log_y_ ? "1e" + fmt(fy) : fmt(fy)) << "</text>\n";
    }
    os << "<text x=\"" << (kML + kW - kMR) / 2 << "\" y=\"" << kH - 10
       << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label_ << "</text>\n";
    os << "<text x=\"16\" y=\"" << (kMT + kH - kMB) / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
       << (kMT + kH - kMB) / 2 << ")\">" << y_label_ << "</text>\n";

    double legend_y = kMT + 8;
    for (const auto& s : series_) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_y_ && !(s.y[i] > 0.0)) continue;
            os << fmt(sx(s.x[i])) << "," << fmt(sy(s.y[i])) << " ";
        }
        os << "\"/>\n";
        os << "<rect x=\"" << kW - kMR - 150 << "\" y=\"" << legend_y - 9
           << "\" width=\"12\" height=\"3\" fill=\"" << s.color << "\"/>\n";
        os << "<text x=\"" << kW - kMR - 132 << "\" y=\"" << legend_y - 3
           << "\" font-size=\"11\">" << s.label << "</text>\n";
        legend_y += 16;
    }
    os << "</svg>\n";
}

}  // namespace fracollapse
