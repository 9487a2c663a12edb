#pragma once

#include <string>
#include <vector>

namespace fracollapse {

// Minimal self-contained SVG line plots for diagnostics; no external plotting
// dependency so the acceptance suite stays headless.
class SvgPlot {
  public:
    SvgPlot(std::string title, std::string x_label, std::string y_label)
        : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

    void set_log_y(bool log_y) { log_y_ = log_y; }
    void add_series(std::string label, std::vector<double> x, std::vector<double> y,
                    std::string color = "#1f77b4");

    void write(const std::string& path) const;

  private:
    struct Series {
        std::string label;
        std::vector<double> x, y;
        std::string color;
    };
    std::string title_, x_label_, y_label_;
    bool log_y_ = false;
    std::vector<Series> series_;
};

}  // namespace fracollapse
