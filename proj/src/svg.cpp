#include "gascast/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>

#include "gascast/errors.hpp"

namespace gascast::svg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f"};

struct Extent {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (!(hi > lo)) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

std::string fnum(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

class Canvas {
public:
    Canvas(const std::string& path, int width, int height, bool timestamp)
        : out_(path), width_(width), height_(height) {
        if (!out_) throw CsvError("cannot write " + path);
        out_ << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
        if (timestamp) {
            char buf[64];
            const std::time_t now = std::time(nullptr);
            std::tm tm_utc{};
            gmtime_r(&now, &tm_utc);
            std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
            out_ << "<!-- generated: " << buf << " -->\n";
        }
        out_ << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
             << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
             << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    }
    ~Canvas() { out_ << "</svg>\n"; }

    std::ofstream& os() { return out_; }

    void text(double x, double y, const std::string& s, int size = 12,
              const std::string& anchor = "start") {
        out_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-family=\"sans-serif\" font-size=\""
             << size << "\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
    }
    void line(double x1, double y1, double x2, double y2, const std::string& color = "#333",
              double w = 1.0) {
        out_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
             << "\" stroke=\"" << color << "\" stroke-width=\"" << w << "\"/>\n";
    }

private:
    std::ofstream out_;
    int width_;
    int height_;
};

struct Frame {
    double left, top, right, bottom;  // plot area in canvas units
    Extent xe, ye;

    double px(double x) const { return left + (x - xe.lo) / (xe.hi - xe.lo) * (right - left); }
    double py(double y) const { return bottom - (y - ye.lo) / (ye.hi - ye.lo) * (bottom - top); }
};

void draw_axes(Canvas& c, const Frame& f, const ChartOptions& opts) {
    c.line(f.left, f.bottom, f.right, f.bottom);
    c.line(f.left, f.top, f.left, f.bottom);
    for (int i = 0; i <= 5; ++i) {
        const double fx = f.xe.lo + (f.xe.hi - f.xe.lo) * i / 5.0;
        const double fy = f.ye.lo + (f.ye.hi - f.ye.lo) * i / 5.0;
        const double px = f.px(fx);
        const double py = f.py(fy);
        c.line(px, f.bottom, px, f.bottom + 4);
        c.text(px, f.bottom + 18, fnum(fx), 11, "middle");
        c.line(f.left - 4, py, f.left, py);
        c.text(f.left - 8, py + 4, fnum(fy), 11, "end");
    }
    if (!opts.title.empty()) c.text((f.left + f.right) / 2, f.top - 10, opts.title, 14, "middle");
    if (!opts.x_label.empty()) c.text((f.left + f.right) / 2, f.bottom + 36, opts.x_label, 12, "middle");
    if (!opts.y_label.empty()) {
        c.os() << "<text x=\"16\" y=\"" << (f.top + f.bottom) / 2
               << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
               << "transform=\"rotate(-90 16 " << (f.top + f.bottom) / 2 << ")\">" << opts.y_label
               << "</text>\n";
    }
}

void draw_legend(Canvas& c, const Frame& f, const std::vector<Series>& series) {
    double y = f.top + 14;
    for (std::size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % 8];
        c.line(f.right - 110, y - 4, f.right - 90, y - 4, color, 2.0);
        c.text(f.right - 84, y, series[i].label, 11);
        y += 16;
    }
}

Frame fit_frame(const std::vector<Series>& series, double left, double top, double right,
                double bottom) {
    Frame f{left, top, right, bottom, {}, {}};
    for (const auto& s : series) {
        for (double v : s.x) f.xe.add(v);
        for (double v : s.y) f.ye.add(v);
    }
    f.xe.pad();
    f.ye.pad();
    return f;
}

}  // namespace

void write_line_chart(const std::string& path, const std::vector<Series>& series,
                      const ChartOptions& opts) {
    Canvas c(path, 900, 480, opts.timestamp);
    Frame f = fit_frame(series, 70, 40, 870, 420);
    draw_axes(c, f, opts);
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        c.os() << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 8]
               << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            c.os() << f.px(s.x[j]) << "," << f.py(s.y[j]) << " ";
        }
        c.os() << "\"/>\n";
    }
    draw_legend(c, f, series);
}

void write_scatter(const std::string& path, const std::vector<Series>& series,
                   const ChartOptions& opts, bool diagonal) {
    Canvas c(path, 560, 520, opts.timestamp);
    Frame f = fit_frame(series, 70, 40, 530, 460);
    if (diagonal) {
        // shared scale makes the reference line meaningful
        f.xe.add(f.ye.lo);
        f.xe.add(f.ye.hi);
        f.ye.add(f.xe.lo);
        f.ye.add(f.xe.hi);
    }
    draw_axes(c, f, opts);
    if (diagonal) {
        const double lo = std::max(f.xe.lo, f.ye.lo);
        const double hi = std::min(f.xe.hi, f.ye.hi);
        c.os() << "<line x1=\"" << f.px(lo) << "\" y1=\"" << f.py(lo) << "\" x2=\"" << f.px(hi)
               << "\" y2=\"" << f.py(hi)
               << "\" stroke=\"#999\" stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto& s = series[i];
        for (std::size_t j = 0; j < s.x.size(); ++j) {
            c.os() << "<circle cx=\"" << f.px(s.x[j]) << "\" cy=\"" << f.py(s.y[j])
                   << "\" r=\"3.2\" fill=\"" << kPalette[i % 8] << "\"/>\n";
        }
    }
    draw_legend(c, f, series);
}

void write_histograms(const std::string& path, const std::vector<HistogramPanel>& panels, int bins,
                      const ChartOptions& opts) {
    if (panels.empty() || bins < 1) throw Error("histogram: nothing to draw");
    Extent xe;
    for (const auto& p : panels) {
        for (double v : p.values) xe.add(v);
    }
    xe.pad();

    const int panel_h = 130;
    const int height = 60 + panel_h * static_cast<int>(panels.size());
    Canvas c(path, 900, height, opts.timestamp);
    if (!opts.title.empty()) c.text(450, 24, opts.title, 14, "middle");

    for (std::size_t pi = 0; pi < panels.size(); ++pi) {
        const auto& panel = panels[pi];
        const double top = 40 + static_cast<double>(pi) * panel_h;
        const double bottom = top + panel_h - 30;
        const double left = 70;
        const double right = 870;

        std::vector<int> counts(static_cast<std::size_t>(bins), 0);
        for (double v : panel.values) {
            int b = static_cast<int>((v - xe.lo) / (xe.hi - xe.lo) * bins);
            b = std::clamp(b, 0, bins - 1);
            ++counts[static_cast<std::size_t>(b)];
        }
        const int peak = std::max(1, *std::max_element(counts.begin(), counts.end()));

        c.line(left, bottom, right, bottom);
        const double bw = (right - left) / bins;
        for (int b = 0; b < bins; ++b) {
            const double h = (bottom - top) * counts[static_cast<std::size_t>(b)] / peak;
            if (h <= 0.0) continue;
            c.os() << "<rect x=\"" << left + b * bw << "\" y=\"" << bottom - h << "\" width=\""
                   << bw * 0.92 << "\" height=\"" << h << "\" fill=\"" << kPalette[pi % 8]
                   << "\" fill-opacity=\"0.75\"/>\n";
        }
        c.text(left + 4, top + 12, panel.label, 12);
        for (int i = 0; i <= 5; ++i) {
            const double fx = xe.lo + (xe.hi - xe.lo) * i / 5.0;
            const double px = left + (right - left) * i / 5.0;
            c.line(px, bottom, px, bottom + 4);
            c.text(px, bottom + 16, fnum(fx), 10, "middle");
        }
    }
    if (!opts.x_label.empty()) c.text(450, height - 8, opts.x_label, 12, "middle");
}

}  // namespace gascast::svg
