// CSV and SVG emission.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "raes/error.hpp"
#include "raes/harness.hpp"

namespace raes {

namespace {

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line, long row) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    fields.back() += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                fields.back() += ch;
            }
        } else if (ch == '"') {
            if (!fields.back().empty()) throw ParseError(row, "stray quote");
            quoted = true;
        } else if (ch == ',') {
            fields.emplace_back();
        } else {
            fields.back() += ch;
        }
    }
    if (quoted) throw ParseError(row, "unterminated quote");
    return fields;
}

double to_real(const std::string& s, long row, const char* col) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError(row, std::string("bad ") + col + " '" + s + "'");
    return v;
}

long to_int(const std::string& s, long row, const char* col) {
    char* end = nullptr;
    const long v = std::strtol(s.c_str(), &end, 10);
    if (s.empty() || end != s.c_str() + s.size())
        throw ParseError(row, std::string("bad ") + col + " '" + s + "'");
    return v;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        switch (ch) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += ch;
        }
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

} // namespace

void write_csv(const std::vector<RegretTrace>& traces, std::ostream& os) {
    os << kCsvHeader << '\n';
    char buf[256];
    for (const auto& tr : traces) {
        if (tr.cumulative.size() != tr.steps.size())
            throw InvariantError("trace '" + tr.algo + "' has mismatched column lengths");
        const std::string algo = csv_field(tr.algo);
        for (std::size_t i = 0; i < tr.steps.size(); ++i) {
            const auto& s = tr.steps[i];
            std::snprintf(buf, sizeof buf, ",%ld,%ld,", tr.seed, s.t);
            os << algo << buf << csv_field(s.branch);
            // fixed decimals keep the absolute round-trip error under 1e-9
            const int n = std::snprintf(buf, sizeof buf, ",%.9f,%.9f\n", s.inst_regret,
                                        tr.cumulative[i]);
            if (n < 0 || n >= static_cast<int>(sizeof buf))
                throw InvariantError("regret value too large to format");
            os << buf;
        }
    }
    if (!os) throw IoError("write failed");
}

void write_csv(const std::vector<RegretTrace>& traces, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    write_csv(traces, f);
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

std::vector<RegretTrace> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ParseError(1, "missing header");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) throw ParseError(1, "unexpected header '" + line + "'");

    std::vector<RegretTrace> out;
    long row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_csv_line(line, row);
        if (f.size() != 6)
            throw ParseError(row, "expected 6 fields, got " + std::to_string(f.size()));
        const long seed = to_int(f[1], row, "seed");
        const long t = to_int(f[2], row, "t");
        const double inst = to_real(f[4], row, "inst_regret");
        const double cum = to_real(f[5], row, "cum_regret");
        if (out.empty() || out.back().algo != f[0] || out.back().seed != seed) {
            RegretTrace tr;
            tr.algo = f[0];
            tr.seed = seed;
            out.push_back(std::move(tr));
        }
        out.back().steps.push_back(TraceStep{t, f[3], inst});
        out.back().cumulative.push_back(cum);
    }
    return out;
}

std::vector<RegretTrace> read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "'");
    return read_csv(f);
}

double ChartFrame::px(double x) const { return left + (x - x_min) / (x_max - x_min) * plot_w; }
double ChartFrame::py(double y) const { return top + plot_h - (y - y_min) / (y_max - y_min) * plot_h; }

ChartFrame chart_frame(const std::vector<Series>& series, const ChartOptions& opt) {
    if (series.empty()) throw Error(ErrorCode::invalid_argument, "render_svg: no series");
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw Error(ErrorCode::invalid_argument, "series '" + s.name + "': x/y length mismatch");
        for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!(xmin <= xmax)) xmin = 0.0, xmax = 1.0;
    if (!(ymin <= ymax)) ymin = 0.0, ymax = 0.0;
    if (xmax == xmin) xmax = xmin + 1.0;
    ymin = std::min(0.0, ymin);
    if (ymax == ymin) ymax = ymin + 1.0;

    ChartFrame f{xmin, xmax, ymin, ymax, 80.0, 50.0, 0.0, 0.0};
    f.plot_w = std::max(10.0, opt.width - f.left - 200.0);
    f.plot_h = std::max(10.0, opt.height - f.top - 60.0);
    return f;
}

std::string render_svg(const std::vector<Series>& series, const ChartOptions& opt) {
    const ChartFrame f = chart_frame(series, opt);
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\""
      << opt.height << "\" viewBox=\"0 0 " << opt.width << ' ' << opt.height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << num(f.left + f.plot_w / 2) << "\" y=\"25\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(opt.title) << "</text>\n";

    const double x0 = f.left, y0 = f.top + f.plot_h;
    o << "<g stroke=\"black\" stroke-width=\"1\">"
      << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0 + f.plot_w)
      << "\" y2=\"" << num(y0) << "\"/>"
      << "<line x1=\"" << num(x0) << "\" y1=\"" << num(f.top) << "\" x2=\"" << num(x0)
      << "\" y2=\"" << num(y0) << "\"/></g>\n";

    char lab[32];
    o << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = f.x_min + (f.x_max - f.x_min) * i / 5.0;
        const double yv = f.y_min + (f.y_max - f.y_min) * i / 5.0;
        std::snprintf(lab, sizeof lab, "%.4g", xv);
        o << "<text x=\"" << num(f.px(xv)) << "\" y=\"" << num(y0 + 16)
          << "\" text-anchor=\"middle\">" << lab << "</text>\n";
        std::snprintf(lab, sizeof lab, "%.4g", yv);
        o << "<text x=\"" << num(x0 - 6) << "\" y=\"" << num(f.py(yv) + 4)
          << "\" text-anchor=\"end\">" << lab << "</text>\n";
    }
    o << "</g>\n";
    o << "<text x=\"" << num(f.left + f.plot_w / 2) << "\" y=\"" << num(y0 + 40)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(opt.x_label) << "</text>\n";
    o << "<text transform=\"translate(20," << num(f.top + f.plot_h / 2)
      << ") rotate(-90)\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << xml_escape(opt.y_label) << "</text>\n";

    const std::size_t cap = std::max<std::size_t>(2, opt.max_points);
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kPalette[k % std::size(kPalette)];
        const std::size_t n = s.x.size();
        const std::size_t stride = n > cap ? (n + cap - 2) / (cap - 1) : 1;
        o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < n; i += stride) {
            if (i) o << ' ';
            o << num(f.px(s.x[i])) << ',' << num(f.py(s.y[i]));
        }
        if (n > 0 && (n - 1) % stride != 0)
            o << ' ' << num(f.px(s.x[n - 1])) << ',' << num(f.py(s.y[n - 1]));
        o << "\"/>\n";

        const double ly = f.top + 10 + 18.0 * static_cast<double>(k);
        const double lx = f.left + f.plot_w + 15;
        o << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 20)
          << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
          << "<text x=\"" << num(lx + 25) << "\" y=\"" << num(ly + 4)
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(s.name) << "</text>\n";
    }
    o << "</svg>\n";
    return o.str();
}

void render_svg(const std::vector<Series>& series, const std::string& path,
                const ChartOptions& opt) {
    const std::string svg = render_svg(series, opt);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    f << svg;
    f.flush();
    if (!f) throw IoError("write to '" + path + "' failed");
}

} // namespace raes
