#include "hedgehog/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace hedgehog {

namespace {

std::string f4(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

struct Frame {
  double x0, y0, scale;
  double W, H;
  // plane -> svg (y flipped)
  std::string pt(cplx z) const { return f4((z.real() - x0) * scale + 10) + "," + f4((y0 - z.imag()) * scale + 10); }
};

Frame frame_for(const Domain& d, double width = 600) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (auto s : d.squares) {
    cplx p = position(s, d.delta);
    xmin = std::min(xmin, p.real()), xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag()), ymax = std::max(ymax, p.imag());
  }
  double pad = d.delta;
  xmin -= pad, xmax += pad, ymin -= pad, ymax += pad;
  double scale = width / std::max(xmax - xmin, ymax - ymin);
  return {xmin, ymax, scale, (xmax - xmin) * scale + 20, (ymax - ymin) * scale + 20};
}

// Corners of square s: its four vertices.
std::string square_points(const Frame& fr, LatticeCoord s, double delta) {
  std::string out;
  for (LatticeCoord o : {LatticeCoord{1, 0}, {0, 1}, {-1, 0}, {0, -1}}) {
    out += fr.pt(position(s + o, delta)) + " ";
  }
  return out;
}

std::string header(double W, double H) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + f4(W) + "\" height=\"" + f4(H) +
         "\" viewBox=\"0 0 " + f4(W) + " " + f4(H) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

// blue -> white -> red
std::string colour(double t) {
  t = std::clamp(t, 0.0, 1.0);
  int r, g, b;
  if (t < 0.5) {
    double s = t / 0.5;
    r = static_cast<int>(40 + 215 * s), g = static_cast<int>(80 + 175 * s), b = 255;
  } else {
    double s = (t - 0.5) / 0.5;
    r = 255, g = static_cast<int>(255 - 175 * s), b = static_cast<int>(255 - 215 * s);
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

}  // namespace

std::string render_tiling_svg(const Domain& d, const Tiling& t, const HeightField* h) {
  Frame fr = frame_for(d);
  std::ostringstream os;
  os << header(fr.W, fr.H);
  for (auto s : d.squares) {
    os << "<polygon points=\"" << square_points(fr, s, d.delta) << "\" fill=\""
       << (is_black_square(s) ? "#b0b0b0" : "#f4f4f4") << "\" stroke=\"#d0d0d0\" stroke-width=\"0.5\"/>\n";
  }
  for (auto [u, v] : t.partner) {
    cplx a = position(u, d.delta), b = position(v, d.delta);
    os << "<line x1=\"" << f4((a.real() - fr.x0) * fr.scale + 10) << "\" y1=\""
       << f4((fr.y0 - a.imag()) * fr.scale + 10) << "\" x2=\"" << f4((b.real() - fr.x0) * fr.scale + 10)
       << "\" y2=\"" << f4((fr.y0 - b.imag()) * fr.scale + 10)
       << "\" stroke=\"#202020\" stroke-width=\"" << f4(0.35 * d.delta * fr.scale)
       << "\" stroke-linecap=\"round\"/>\n";
  }
  if (h) {
    double fs = std::max(4.0, 0.35 * d.delta * fr.scale);
    for (auto [z, val] : h->values) {
      cplx p = position(z, d.delta);
      os << "<text x=\"" << f4((p.real() - fr.x0) * fr.scale + 10) << "\" y=\""
         << f4((fr.y0 - p.imag()) * fr.scale + 10 + fs / 3) << "\" font-size=\"" << f4(fs)
         << "\" text-anchor=\"middle\" fill=\"#c00000\">" << val << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_field_svg(const Domain& d, const std::map<LatticeCoord, double>& values,
                             const std::string& title) {
  Frame fr = frame_for(d);
  double lo = INFINITY, hi = -INFINITY;
  for (auto& kv : values) lo = std::min(lo, kv.second), hi = std::max(hi, kv.second);
  double span = hi > lo ? hi - lo : 1.0;
  std::ostringstream os;
  os << header(fr.W, fr.H + 20);
  for (auto s : d.squares) {
    os << "<polygon points=\"" << square_points(fr, s, d.delta)
       << "\" fill=\"none\" stroke=\"#e0e0e0\" stroke-width=\"0.4\"/>\n";
  }
  const double r = 0.5 * d.delta;
  for (auto [z, val] : values) {
    cplx p = position(z, d.delta);
    std::string pts;
    for (cplx o : {cplx(r, 0), cplx(0, r), cplx(-r, 0), cplx(0, -r)}) pts += fr.pt(p + o) + " ";
    os << "<polygon points=\"" << pts << "\" fill=\"" << colour((val - lo) / span) << "\"/>\n";
  }
  os << "<text x=\"10\" y=\"" << f4(fr.H + 12) << "\" font-size=\"12\">" << title << " [" << f4(lo)
     << ", " << f4(hi) << "]</text>\n</svg>\n";
  return os.str();
}

std::string render_error_plot_svg(const std::vector<Series>& series, const std::string& title) {
  const double W = 480, H = 360, L = 60, R = 20, T = 30, B = 50;
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (auto& s : series)
    for (auto [x, y] : s.points) {
      if (x <= 0 || y <= 0) continue;
      xmin = std::min(xmin, std::log10(x)), xmax = std::max(xmax, std::log10(x));
      ymin = std::min(ymin, std::log10(y)), ymax = std::max(ymax, std::log10(y));
    }
  if (!std::isfinite(xmin)) xmin = -2, xmax = 0, ymin = -2, ymax = 0;
  xmin = std::floor(xmin * 2) / 2 - 0.1, xmax = std::ceil(xmax * 2) / 2 + 0.1;
  ymin = std::floor(ymin * 2) / 2 - 0.1, ymax = std::ceil(ymax * 2) / 2 + 0.1;
  auto X = [&](double x) { return L + (std::log10(x) - xmin) / (xmax - xmin) * (W - L - R); };
  auto Y = [&](double y) { return T + (ymax - std::log10(y)) / (ymax - ymin) * (H - T - B); };
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  std::ostringstream os;
  os << header(W, H);
  os << "<text x=\"" << f4(W / 2) << "\" y=\"18\" font-size=\"13\" text-anchor=\"middle\">" << title
     << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double e = std::ceil(xmin); e <= xmax; e += 1) {
    double x = X(std::pow(10.0, e));
    os << "<text x=\"" << f4(x) << "\" y=\"" << f4(H - B + 16) << "\" font-size=\"10\" text-anchor=\"middle\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  for (double e = std::ceil(ymin); e <= ymax; e += 1) {
    double y = Y(std::pow(10.0, e));
    os << "<text x=\"" << L - 4 << "\" y=\"" << f4(y + 3) << "\" font-size=\"10\" text-anchor=\"end\">1e"
       << static_cast<int>(e) << "</text>\n";
  }
  os << "<text x=\"" << f4(W / 2) << "\" y=\"" << f4(H - 12) << "\" font-size=\"11\" text-anchor=\"middle\">mesh size</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* c = palette[k % 4];
    std::string pts;
    for (auto [x, y] : series[k].points) {
      if (x <= 0 || y <= 0) continue;
      pts += f4(X(x)) + "," + f4(Y(y)) + " ";
      os << "<circle cx=\"" << f4(X(x)) << "\" cy=\"" << f4(Y(y)) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
    }
    os << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\"" << c << "\"/>\n";
    os << "<text x=\"" << L + 8 << "\" y=\"" << T + 14 + 14 * k << "\" font-size=\"11\" fill=\"" << c << "\">"
       << series[k].label << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace hedgehog
