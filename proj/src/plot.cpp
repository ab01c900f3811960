#include "otfs/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "otfs/sweep.hpp"

namespace otfs {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 560;
constexpr int kLeft = 80;
constexpr int kRight = 220; // legend gutter
constexpr int kTop = 40;
constexpr int kBottom = 60;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#e377c2", "#17becf", "#7f7f7f"};

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points; // (snr_db, value)
};

double nice_floor_pow10(double v) { return std::pow(10.0, std::floor(std::log10(v))); }

std::string fmt(double v) {
    std::ostringstream s;
    s << v;
    return s.str();
}

void render_chart(const std::string& path, const std::string& title, const std::string& y_label,
                  std::vector<Series> series, bool log_y) {
    double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            x_min = std::min(x_min, x);
            x_max = std::max(x_max, x);
            if (!log_y || y > 0.0) {
                y_min = std::min(y_min, y);
                y_max = std::max(y_max, y);
            }
        }
    }
    if (x_max <= x_min) {
        x_max = x_min + 1.0;
    }
    if (log_y) {
        if (y_min >= 1e300) { // every value was zero
            y_min = 1e-6;
            y_max = 1.0;
        }
        y_min = std::max(nice_floor_pow10(y_min), 1e-12);
        y_max = 1.0;
    } else {
        y_min = 0.0;
        y_max = y_max <= 0.0 ? 1.0 : y_max * 1.1;
    }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    const auto x_of = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    const auto y_of = [&](double y) {
        double fr;
        if (log_y) {
            fr = (std::log10(y) - std::log10(y_min)) / (std::log10(y_max) - std::log10(y_min));
        } else {
            fr = (y - y_min) / (y_max - y_min);
        }
        return kTop + (1.0 - fr) * plot_h;
    };

    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write chart: " + path);
    }
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kLeft << "\" y=\"24\" font-size=\"16\">" << title << "</text>\n";

    // frame + y grid
    out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << plot_w
        << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"#333\"/>\n";
    if (log_y) {
        for (double tick = y_min; tick <= y_max * 1.0001; tick *= 10.0) {
            const double y = y_of(tick);
            out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w
                << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
            out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4
                << "\" text-anchor=\"end\">1e" << static_cast<int>(std::round(std::log10(tick)))
                << "</text>\n";
        }
    } else {
        for (int i = 0; i <= 5; ++i) {
            const double tick = y_min + (y_max - y_min) * i / 5.0;
            const double y = y_of(tick);
            out << "<line x1=\"" << kLeft << "\" y1=\"" << y << "\" x2=\"" << kLeft + plot_w
                << "\" y2=\"" << y << "\" stroke=\"#ddd\"/>\n";
            out << "<text x=\"" << kLeft - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
                << fmt(std::round(tick * 100.0) / 100.0) << "</text>\n";
        }
    }
    // x ticks
    const int x_ticks = 8;
    for (int i = 0; i <= x_ticks; ++i) {
        const double tick = x_min + (x_max - x_min) * i / x_ticks;
        const double x = x_of(tick);
        out << "<line x1=\"" << x << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << x << "\" y2=\""
            << kTop + plot_h + 5 << "\" stroke=\"#333\"/>\n";
        out << "<text x=\"" << x << "\" y=\"" << kTop + plot_h + 20
            << "\" text-anchor=\"middle\">" << fmt(std::round(tick * 10.0) / 10.0)
            << "</text>\n";
    }
    out << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 16
        << "\" text-anchor=\"middle\">SNR (dB)</text>\n";
    out << "<text x=\"20\" y=\"" << kTop + plot_h / 2
        << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 " << kTop + plot_h / 2 << ")\">"
        << y_label << "</text>\n";

    int color = 0;
    int legend_y = kTop + 10;
    for (Series& s : series) {
        std::sort(s.points.begin(), s.points.end());
        const char* stroke = kPalette[color % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream poly;
        bool pen_down = false;
        for (const auto& [x, y] : s.points) {
            if (log_y && y <= 0.0) {
                pen_down = false; // gap at exact zeros on a log axis
                continue;
            }
            poly << (pen_down ? " L" : " M") << x_of(x) << " " << y_of(std::max(y, y_min));
            pen_down = true;
        }
        out << "<path d=\"" << poly.str() << "\" fill=\"none\" stroke=\"" << stroke
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<line x1=\"" << kLeft + plot_w + 16 << "\" y1=\"" << legend_y << "\" x2=\""
            << kLeft + plot_w + 44 << "\" y2=\"" << legend_y << "\" stroke=\"" << stroke
            << "\" stroke-width=\"1.8\"/>\n";
        out << "<text x=\"" << kLeft + plot_w + 50 << "\" y=\"" << legend_y + 4 << "\">"
            << s.label << "</text>\n";
        legend_y += 20;
        ++color;
    }
    out << "</svg>\n";
}

bool has_header(const std::string& path, const std::string& expected) {
    std::ifstream in(path);
    std::string line;
    return in && std::getline(in, line) && line == expected;
}

} // namespace

int plot_csv(const std::string& csv_path, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    const auto stem = std::filesystem::path(csv_path).stem().string();

    if (has_header(csv_path, "snr_db,scheme,signal,p_analytic,p_mc,ci95,trials")) {
        const std::vector<OutageRow> rows = read_outage_csv(csv_path);
        if (rows.empty()) {
            throw ConfigError(csv_path + ": no data rows to plot");
        }
        std::map<std::string, Series> analytic, mc;
        for (const OutageRow& r : rows) {
            const std::string key = r.scheme + " " + r.signal;
            analytic[key].label = key;
            analytic[key].points.emplace_back(r.snr_db, r.p_analytic);
            mc[key].label = key;
            mc[key].points.emplace_back(r.snr_db, r.p_mc);
        }
        std::vector<Series> sa, sm;
        for (auto& [k, v] : analytic) sa.push_back(std::move(v));
        for (auto& [k, v] : mc) sm.push_back(std::move(v));
        const std::string f1 = (std::filesystem::path(out_dir) / (stem + "_analytic.svg")).string();
        const std::string f2 = (std::filesystem::path(out_dir) / (stem + "_mc.svg")).string();
        render_chart(f1, "Outage probability (analytic)", "outage probability", sa, true);
        render_chart(f2, "Outage probability (Monte Carlo)", "outage probability", sm, true);
        return 2;
    }

    if (has_header(csv_path, "snr_db,scheme,sr_analytic,sr_mc")) {
        const std::vector<SumRateRow> rows = read_sumrate_csv(csv_path);
        if (rows.empty()) {
            throw ConfigError(csv_path + ": no data rows to plot");
        }
        std::map<std::string, Series> series;
        for (const SumRateRow& r : rows) {
            series[r.scheme + " analytic"].label = r.scheme + " analytic";
            series[r.scheme + " analytic"].points.emplace_back(r.snr_db, r.sr_analytic);
            series[r.scheme + " mc"].label = r.scheme + " mc";
            series[r.scheme + " mc"].points.emplace_back(r.snr_db, r.sr_mc);
        }
        std::vector<Series> all;
        for (auto& [k, v] : series) all.push_back(std::move(v));
        const std::string f = (std::filesystem::path(out_dir) / (stem + ".svg")).string();
        render_chart(f, "Outage sum rate", "sum rate (BPCU)", all, false);
        return 1;
    }

    throw ConfigError(csv_path + ": unrecognized CSV header");
}

} // namespace otfs
