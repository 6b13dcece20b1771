#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "core/errors.hpp"
#include "core/experiment.hpp"

namespace qflab::experiment {

namespace {

constexpr int kSchemaVersion = 1;

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return num(v);
        }
        return v;
      },
      c);
}

bool numeric(const Cell& c, double& out) {
  if (auto d = std::get_if<double>(&c)) {
    out = *d;
    return std::isfinite(*d);
  }
  if (auto i = std::get_if<std::int64_t>(&c)) {
    out = static_cast<double>(*i);
    return true;
  }
  return false;
}

std::ptrdiff_t column_index(const ExperimentReport& r, const std::string& name) {
  const auto it = std::find(r.columns.begin(), r.columns.end(), name);
  return it == r.columns.end() ? -1 : it - r.columns.begin();
}

std::string stem(const ExperimentReport& r) {
  return r.config.name.empty() ? std::string(command_name(r.config.command)) : r.config.name;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::io, "cannot write " + path.string());
  out << content;
  if (!out) fail(Errc::io, "write failed for " + path.string());
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return num(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

std::string to_csv(const ExperimentReport& r) {
  std::string out;
  if (!r.error.empty() && r.rows.empty()) {
    out = "command,error\n";
    out += csv_escape(command_name(r.config.command)) + "," + csv_escape(r.error) + "\n";
    return out;
  }
  for (std::size_t i = 0; i < r.columns.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(r.columns[i]);
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += csv_escape(format_cell(row[i]));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const ExperimentReport& r, bool include_timing) {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_name(r.config.command);
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.config.echo()) cfg[k] = v;
  j["config"] = cfg;
  j["columns"] = r.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) {
    nlohmann::ordered_json o = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size() && i < r.columns.size(); ++i) o[r.columns[i]] = cell_json(row[i]);
    rows.push_back(std::move(o));
  }
  j["rows"] = std::move(rows);
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.summary) summary[k] = std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(num(v));
  j["summary"] = std::move(summary);
  nlohmann::ordered_json asserts = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions) {
    asserts.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  }
  j["assertions"] = std::move(asserts);
  j["passed"] = r.passed();
  if (!r.error.empty()) j["error"] = r.error;
  if (include_timing) j["wall_clock_seconds"] = r.wall_clock_seconds;
  return j.dump(2) + "\n";
}

std::string to_svg(const ExperimentReport& r) {
  if (r.plot == PlotKind::none) return {};
  const auto xi = column_index(r, r.plot_x);
  const auto yi = column_index(r, r.plot_y);
  if (xi < 0 || yi < 0) return {};
  std::vector<std::pair<double, double>> pts;
  for (const auto& row : r.rows) {
    double x = 0, y = 0;
    if (numeric(row[static_cast<std::size_t>(xi)], x) && numeric(row[static_cast<std::size_t>(yi)], y)) {
      // discriminants are plotted by |D|
      if (r.plot_x == "D") x = std::fabs(x);
      pts.emplace_back(x, y);
    }
  }
  if (pts.empty()) return {};

  const bool logx = r.plot == PlotKind::error_vs_X;
  auto tx = [&](double x) { return logx ? std::log10(std::max(x, 1e-300)) : x; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (auto [x, y] : pts) {
    x0 = std::min(x0, tx(x));
    x1 = std::max(x1, tx(x));
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  }
  y0 = std::min(y0, 0.0);
  if (x1 - x0 < 1e-12) {
    x0 -= 1;
    x1 += 1;
  }
  if (y1 - y0 < 1e-12) y1 = y0 + 1;

  const double W = 640, H = 400, L = 70, R = 20, T = 30, Bm = 50;
  auto px = [&](double x) { return L + (tx(x) - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return H - Bm - (y - y0) / (y1 - y0) * (H - T - Bm); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\" font-size=\"14\">" << command_name(r.config.command)
    << ": " << r.plot_y << " vs " << (r.plot_x == "D" ? "|D|" : r.plot_x) << (logx ? " (log x)" : "") << "</text>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << H - Bm << "\" x2=\"" << W - R << "\" y2=\"" << H - Bm
    << "\" stroke=\"black\"/>\n";
  s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - Bm << "\" stroke=\"black\"/>\n";
  if (y0 < 0 && y1 > 0) {
    s << "<line x1=\"" << L << "\" y1=\"" << py(0) << "\" x2=\"" << W - R << "\" y2=\"" << py(0)
      << "\" stroke=\"#bbb\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double xv = x0 + (x1 - x0) * k / 4.0;
    const double yv = y0 + (y1 - y0) * k / 4.0;
    const double xl = logx ? std::pow(10.0, xv) : xv;
    s << "<text x=\"" << L + (W - L - R) * k / 4.0 << "\" y=\"" << H - Bm + 18
      << "\" text-anchor=\"middle\" font-size=\"11\">" << num(std::round(xl * 1000) / 1000) << "</text>\n";
    s << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\" font-size=\"11\">"
      << num(std::round(yv * 10000) / 10000) << "</text>\n";
  }
  for (auto [x, y] : pts) {
    s << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"2.5\" fill=\"#1f77b4\" fill-opacity=\"0.7\"/>\n";
  }
  if (r.plot == PlotKind::error_vs_X) {
    std::map<double, std::vector<double>> groups;
    for (auto [x, y] : pts) groups[x].push_back(y);
    std::string path;
    for (auto& [x, ys] : groups) {
      std::sort(ys.begin(), ys.end());
      const std::size_t n = ys.size();
      const double med = n % 2 ? ys[n / 2] : 0.5 * (ys[n / 2 - 1] + ys[n / 2]);
      path += (path.empty() ? "M" : " L") + num(px(x)) + " " + num(py(med));
    }
    s << "<path d=\"" << path << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

WrittenFiles write_report(const ExperimentReport& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) fail(Errc::io, "cannot create " + dir + ": " + ec.message());
  WrittenFiles out;
  const fs::path base = fs::path(dir) / stem(r);
  out.csv = base.string() + ".csv";
  write_file(out.csv, to_csv(r));
  if (r.config.format == Format::json) {
    out.json = base.string() + ".json";
    write_file(out.json, to_json(r));
  }
  const auto svg = to_svg(r);
  if (!svg.empty()) {
    out.svg = base.string() + ".svg";
    write_file(out.svg, svg);
  }
  return out;
}

}  // namespace qflab::experiment
