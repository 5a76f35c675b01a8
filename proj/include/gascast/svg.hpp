#pragma once

#include <string>
#include <vector>

namespace gascast::svg {

struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct ChartOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool timestamp = false;
};

// multi-series polyline chart with axes, ticks and a legend
void write_line_chart(const std::string& path, const std::vector<Series>& series,
                      const ChartOptions& opts);

// points only, with an optional y = x reference line
void write_scatter(const std::string& path, const std::vector<Series>& series,
                   const ChartOptions& opts, bool diagonal = false);

struct HistogramPanel {
    std::string label;
    std::vector<double> values;
};

// vertically stacked histogram panels on a shared x range
void write_histograms(const std::string& path, const std::vector<HistogramPanel>& panels, int bins,
                      const ChartOptions& opts);

}  // namespace gascast::svg
