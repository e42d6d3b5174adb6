// Copyright 2026 The rwrs Authors
// SPDX-License-Identifier: Apache-2.0

#include "rwrs/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "rwrs/error.hpp"

namespace rwrs {

namespace {

using nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(4);
  os << x;
  return os.str();
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

Check make_check(std::string name, double value, double std_error, double lower, double upper) {
  return {std::move(name), value, std_error, lower, upper,
          std::isfinite(value) && value >= lower && value <= upper};
}

bool CommandResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

std::string version() { return RWRS_VERSION; }

std::string manifest_json(const ExperimentConfig& config, const std::vector<std::string>& files) {
  ordered_json j;
  j["command"] = config.command;
  j["seed"] = config.seed;
  j["version"] = version();
  j["config"] = config.canonical();
  ordered_json entries = ordered_json::object();
  for (const auto& [k, v] : config.entries()) entries[k] = v;
  j["entries"] = entries;
  j["files"] = files;
  return j.dump(2) + "\n";
}

std::string summary_json(const CommandResult& result) {
  ordered_json j;
  j["command"] = result.command;
  j["passed"] = result.passed();
  ordered_json checks = ordered_json::array();
  for (const auto& c : result.checks)
    checks.push_back({{"name", c.name},
                      {"estimate", c.value},
                      {"std_error", c.std_error},
                      {"lower", c.lower},
                      {"upper", c.upper},
                      {"passed", c.passed}});
  j["checks"] = checks;
  ordered_json est = ordered_json::object();
  for (const auto& [k, v] : result.estimates) est[k] = v;
  j["estimates"] = est;
  return j.dump(2) + "\n";
}

std::string render_svg(const Plot& plot) {
  constexpr double W = 640.0;
  constexpr double H = 420.0;
  constexpr double L = 70.0;
  constexpr double R = 160.0;
  constexpr double T = 40.0;
  constexpr double B = 50.0;
  auto tx = [&](double x) { return plot.log_x ? std::log10(x) : x; };
  auto ty = [&](double y) { return plot.log_y ? std::log10(y) : y; };
  auto usable = [&](double x, double y) {
    return std::isfinite(tx(x)) && std::isfinite(ty(y));
  };

  double x0 = std::numeric_limits<double>::infinity();
  double x1 = -x0;
  double y0 = x0;
  double y1 = -x0;
  for (const auto& s : plot.series)
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      x0 = std::min(x0, tx(x));
      x1 = std::max(x1, tx(x));
      y0 = std::min(y0, ty(y));
      y1 = std::max(y1, ty(y));
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - B - (ty(y) - y0) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape_xml(plot.title) << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\""
     << H - T - B << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0;
    const double fy = y0 + (y1 - y0) * i / 4.0;
    const double sx = L + (W - L - R) * i / 4.0;
    const double sy = H - B - (H - T - B) * i / 4.0;
    os << "<text x=\"" << sx << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
       << fmt(plot.log_x ? std::pow(10.0, fx) : fx) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << sy + 4 << "\" text-anchor=\"end\">"
       << fmt(plot.log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
     << escape_xml(plot.x_label) << (plot.log_x ? " (log)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">" << escape_xml(plot.y_label) << (plot.log_y ? " (log)" : "")
     << "</text>\n";

  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    if (s.scatter) {
      for (const auto& [x, y] : s.points)
        if (usable(x, y))
          os << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"3\" fill=\"" << color
             << "\"/>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points)
        if (usable(x, y)) os << px(x) << ',' << py(y) << ' ';
      os << "\"/>\n";
    }
    const double ly = T + 14 + 18.0 * static_cast<double>(i);
    os << "<rect x=\"" << W - R + 12 << "\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\""
       << color << "\"/>\n";
    os << "<text x=\"" << W - R + 28 << "\" y=\"" << ly << "\">" << escape_xml(s.name) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_artifacts(const CommandResult& result, const ExperimentConfig& config,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> files{"raw.csv", "summary.json"};
  for (const auto& p : result.plots) files.push_back(p.file);
  write_file(dir / "manifest.json", manifest_json(config, files));
  write_file(dir / "raw.csv", result.raw_csv);
  write_file(dir / "summary.json", summary_json(result));
  for (const auto& p : result.plots) write_file(dir / p.file, render_svg(p));
}

}  // namespace rwrs
