#include "sios/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sios/ingest.hpp"

namespace sios::svg {

namespace {

constexpr double kWidth = 960.0;
constexpr double kPanelHeight = 320.0;
constexpr double kMarginLeft = 70.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Largest of 1/2/5 x 10^k not exceeding the raw step: the usual "nice
// ticks" rule.
double nice_step(double range, int target_ticks) {
  const double raw = range / std::max(1, target_ticks);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {5.0, 2.0, 1.0})
    if (m * mag <= raw) return m * mag;
  return mag;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double span() const { return hi - lo; }
};

Axis pad(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  return {lo, hi};
}

class Panel {
 public:
  Panel(std::ostringstream& out, double y_top, Axis x, Axis y, const std::string& x_label,
        const std::string& y_label)
      : out_(out), y_top_(y_top), x_(x), y_(y) {
    const double x0 = kMarginLeft;
    const double x1 = kWidth - kMarginRight;
    const double y0 = y_top_ + kPanelHeight - kMarginBottom;
    const double y1 = y_top_ + kMarginTop;
    out_ << "<rect x='" << num(x0) << "' y='" << num(y1) << "' width='" << num(x1 - x0)
         << "' height='" << num(y0 - y1)
         << "' fill='none' stroke='#888' stroke-width='1'/>\n";
    draw_x_ticks(x_label);
    draw_y_ticks(y_label);
  }

  double map_x(double v) const {
    return kMarginLeft + (v - x_.lo) / x_.span() * (kWidth - kMarginLeft - kMarginRight);
  }
  double map_y(double v) const {
    const double y0 = y_top_ + kPanelHeight - kMarginBottom;
    const double y1 = y_top_ + kMarginTop;
    return y0 - (v - y_.lo) / y_.span() * (y0 - y1);
  }

  void polyline(const std::vector<double>& x, const std::vector<double>& y,
                const char* color) {
    out_ << "<polyline fill='none' stroke='" << color << "' stroke-width='1' points='";
    for (std::size_t i = 0; i < x.size(); ++i)
      out_ << num(map_x(x[i])) << ',' << num(map_y(y[i])) << ' ';
    out_ << "'/>\n";
  }

  void stems(const std::vector<double>& x, const std::vector<double>& y,
             const char* color) {
    const double base = map_y(std::max(0.0, y_.lo));
    out_ << "<g stroke='" << color << "' stroke-width='1'>\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (y[i] == 0.0) continue;
      const double px = map_x(x[i]);
      out_ << "<line x1='" << num(px) << "' y1='" << num(base) << "' x2='" << num(px)
           << "' y2='" << num(map_y(y[i])) << "'/>\n";
    }
    out_ << "</g>\n";
  }

 private:
  void draw_x_ticks(const std::string& label) {
    const double y0 = y_top_ + kPanelHeight - kMarginBottom;
    const double step = nice_step(x_.span(), 8);
    for (double v = std::ceil(x_.lo / step) * step; v <= x_.hi + 1e-9 * x_.span();
         v += step) {
      const double px = map_x(v);
      out_ << "<line x1='" << num(px) << "' y1='" << num(y0) << "' x2='" << num(px)
           << "' y2='" << num(y0 + 5) << "' stroke='#888'/>\n";
      out_ << "<text x='" << num(px) << "' y='" << num(y0 + 20)
           << "' font-size='11' text-anchor='middle'>" << num(v) << "</text>\n";
    }
    out_ << "<text x='" << num(kWidth / 2) << "' y='" << num(y0 + 38)
         << "' font-size='12' text-anchor='middle'>" << label << "</text>\n";
  }

  void draw_y_ticks(const std::string& label) {
    const double step = nice_step(y_.span(), 5);
    for (double v = std::ceil(y_.lo / step) * step; v <= y_.hi + 1e-9 * y_.span();
         v += step) {
      const double py = map_y(v);
      out_ << "<line x1='" << num(kMarginLeft - 5) << "' y1='" << num(py) << "' x2='"
           << num(kMarginLeft) << "' y2='" << num(py) << "' stroke='#888'/>\n";
      out_ << "<text x='" << num(kMarginLeft - 8) << "' y='" << num(py + 4)
           << "' font-size='11' text-anchor='end'>" << num(v) << "</text>\n";
    }
    out_ << "<text x='14' y='" << num(y_top_ + kPanelHeight / 2)
         << "' font-size='12' text-anchor='middle' transform='rotate(-90 14 "
         << num(y_top_ + kPanelHeight / 2) << ")'>" << label << "</text>\n";
  }

  std::ostringstream& out_;
  double y_top_;
  Axis x_;
  Axis y_;
};

std::string document(double height, const std::string& title, const std::string& body) {
  std::ostringstream out;
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(kWidth) << "' height='"
      << num(height) << "' viewBox='0 0 " << num(kWidth) << ' ' << num(height) << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << num(kWidth / 2)
      << "' y='24' font-size='15' text-anchor='middle'>" << title << "</text>\n";
  out << body;
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string spectrum_plot(const PowerSpectrum& spectrum, const std::string& title) {
  if (spectrum.size() == 0) throw std::invalid_argument("spectrum_plot: empty spectrum");
  const double max_p = *std::max_element(spectrum.power.begin(), spectrum.power.end());

  std::ostringstream body;
  Panel panel(body, 0.0, pad(spectrum.frequency_hz.front(), spectrum.frequency_hz.back()),
              pad(0.0, max_p), "frequency [Hz]", "power");
  panel.polyline(spectrum.frequency_hz, spectrum.power, "#1f77b4");
  return document(kPanelHeight, title, body.str());
}

std::string sios_plot(const Sios& sios, const std::string& title) {
  if (sios.grid.size() == 0) throw std::invalid_argument("sios_plot: empty grid");
  std::vector<double> counts(sios.harmonic_count.begin(), sios.harmonic_count.end());
  const double max_n = *std::max_element(counts.begin(), counts.end());
  const double max_e =
      *std::max_element(sios.harmonic_power.begin(), sios.harmonic_power.end());
  const Axis x = pad(sios.grid.components.front(), sios.grid.components.back());

  std::ostringstream body;
  Panel top(body, 0.0, x, pad(0.0, max_n), "grid component [Hz]", "harmonic count N");
  top.stems(sios.grid.components, counts, "#d62728");
  Panel bottom(body, kPanelHeight, x, pad(0.0, max_e), "grid component [Hz]",
               "harmonic power E");
  bottom.stems(sios.grid.components, sios.harmonic_power, "#2ca02c");
  return document(2 * kPanelHeight, title, body.str());
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace sios::svg
