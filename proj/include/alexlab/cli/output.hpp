#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace alexlab::cli {

/// 17 significant digits, '.' decimal; "nan" / "inf" for non-finite values.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Writes through a temporary file in the same directory and renames it, so
/// readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
    if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string str() const {
    std::string s;
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) s += ',';
        s += cells[i];
      }
      s += '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return s;
  }
};

/// Log-log scatter of (x, y) points with the least-squares line
/// y = exp(b) x^slope drawn across the data range.
inline std::string loglog_svg(const std::vector<double>& x, const std::vector<double>& y, double slope,
                              const std::string& xlabel, const std::string& ylabel) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] > 0 && y[i] > 0) {
      lx.push_back(std::log10(x[i]));
      ly.push_back(std::log10(y[i]));
    }
  }
  const int W = 480;
  const int H = 360;
  const int m = 50;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(W) + "\" height=\"" +
                  std::to_string(H) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s += "<line x1=\"" + std::to_string(m) + "\" y1=\"" + std::to_string(H - m) + "\" x2=\"" + std::to_string(W - m / 2) +
       "\" y2=\"" + std::to_string(H - m) + "\" stroke=\"black\"/>\n";
  s += "<line x1=\"" + std::to_string(m) + "\" y1=\"" + std::to_string(m / 2) + "\" x2=\"" + std::to_string(m) +
       "\" y2=\"" + std::to_string(H - m) + "\" stroke=\"black\"/>\n";
  s += "<text x=\"" + std::to_string(W / 2) + "\" y=\"" + std::to_string(H - 12) + "\" text-anchor=\"middle\">log10 " +
       xlabel + "</text>\n";
  s += "<text x=\"14\" y=\"" + std::to_string(H / 2) + "\" transform=\"rotate(-90 14 " + std::to_string(H / 2) +
       ")\" text-anchor=\"middle\">log10 " + ylabel + "</text>\n";
  if (lx.empty()) return s + "</svg>\n";
  double x0 = *std::min_element(lx.begin(), lx.end());
  double x1 = *std::max_element(lx.begin(), lx.end());
  double y0 = *std::min_element(ly.begin(), ly.end());
  double y1 = *std::max_element(ly.begin(), ly.end());
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y1 = y0 + 1;
  const double pad = 0.05;
  x0 -= pad * (x1 - x0);
  x1 += pad * (x1 - x0);
  y0 -= pad * (y1 - y0);
  y1 += pad * (y1 - y0);
  auto px = [&](double v) { return m + (W - 1.5 * m) * (v - x0) / (x1 - x0); };
  auto py = [&](double v) { return (H - m) - (H - 1.5 * m) * (v - y0) / (y1 - y0); };
  char buf[200];
  for (std::size_t i = 0; i < lx.size(); ++i) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"steelblue\"/>\n", px(lx[i]), py(ly[i]));
    s += buf;
  }
  if (std::isfinite(slope)) {
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
      mx += lx[i];
      my += ly[i];
    }
    mx /= lx.size();
    my /= lx.size();
    const double a = *std::min_element(lx.begin(), lx.end());
    const double b = *std::max_element(lx.begin(), lx.end());
    std::snprintf(buf, sizeof buf, "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"firebrick\"/>\n",
                  px(a), py(my + slope * (a - mx)), px(b), py(my + slope * (b - mx)));
    s += buf;
    std::snprintf(buf, sizeof buf, "<text x=\"%d\" y=\"%d\">slope %.4f</text>\n", m + 10, m / 2 + 14, slope);
    s += buf;
  }
  return s + "</svg>\n";
}

}  // namespace alexlab::cli
