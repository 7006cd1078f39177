#include "fup/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "fup/error.hpp"
#include "fup/testfn.hpp"

namespace fup {
namespace {

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 360.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 36.0, kBottom = 50.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(x) < 1e-300 ? 0.0 : x);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

struct Range {
  double lo = 0.0, hi = 1.0;
};

Range padded(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 0.5 : std::abs(lo) * 0.1;
    return {lo - pad, hi + pad};
  }
  const double pad = 0.05 * (hi - lo);
  return {lo - pad, hi + pad};
}

void render_panel(std::ostringstream& out, const PlotPanel& panel, double y0) {
  double xlo = INFINITY, xhi = -INFINITY, ylo = INFINITY, yhi = -INFINITY;
  for (const auto& s : panel.series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  for (double v : panel.vlines) {
    xlo = std::min(xlo, v);
    xhi = std::max(xhi, v);
  }
  if (!std::isfinite(xlo)) xlo = 0.0, xhi = 1.0;
  if (!std::isfinite(ylo)) ylo = 0.0, yhi = 1.0;
  const Range xr = padded(xlo, xhi), yr = padded(ylo, yhi);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kPanelHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return y0 + kTop + (1.0 - (y - yr.lo) / (yr.hi - yr.lo)) * ph; };

  out << "<g>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(y0 + 22) << "\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(panel.title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(y0 + kTop) << "\" width=\"" << num(pw) << "\" height=\""
      << num(ph) << "\" fill=\"none\" stroke=\"#000\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << num(y0 + kTop + ph) << "\" x2=\"" << num(px(xv)) << "\" y2=\""
        << num(y0 + kTop + ph + 5) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << num(y0 + kTop + ph + 18)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(xv) << "</text>\n";
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(py(yv)) << "\" stroke=\"#000\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(yv) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(yv) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(y0 + kPanelHeight - 8)
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(panel.xlabel) << "</text>\n";
  const double ymid = y0 + kTop + ph / 2;
  out << "<text x=\"16\" y=\"" << num(ymid) << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 "
      << num(ymid) << ")\">" << escape(panel.ylabel) << "</text>\n";

  for (double v : panel.vlines)
    out << "<line x1=\"" << num(px(v)) << "\" y1=\"" << num(y0 + kTop) << "\" x2=\"" << num(px(v)) << "\" y2=\""
        << num(y0 + kTop + ph) << "\" stroke=\"#000\" stroke-width=\"1.5\"/>\n";

  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const PlotSeries& s = panel.series[si];
    const char* color = kPalette[si % std::size(kPalette)];
    if (s.line && s.points.size() > 1) {
      out << "<path fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" d=\"";
      bool pen = false;
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) {
          pen = false;
          continue;
        }
        out << (pen ? " L" : "M") << num(px(x)) << ' ' << num(py(y));
        pen = true;
      }
      out << "\"/>\n";
    }
    if (s.markers)
      for (const auto& [x, y] : s.points)
        if (std::isfinite(x) && std::isfinite(y))
          out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << color
              << "\"/>\n";
    const double ly = y0 + kTop + 14 + 16 * static_cast<double>(si);
    out << "<rect x=\"" << num(kLeft + pw - 150) << "\" y=\"" << num(ly - 9) << "\" width=\"10\" height=\"10\" fill=\""
        << color << "\"/>\n";
    out << "<text x=\"" << num(kLeft + pw - 135) << "\" y=\"" << num(ly) << "\" font-size=\"11\">" << escape(s.label)
        << "</text>\n";
  }
  out << "</g>\n";
}

std::string series_key(json params, const char* drop) {
  params.erase(drop);
  std::string key;
  for (const auto& [k, v] : params.items()) {
    if (!key.empty()) key += ' ';
    key += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return key;
}

const json* beta_field(const SweepPoint& pt) {
  if (pt.status != "ok" || !pt.result.contains("report")) return nullptr;
  const json& rep = pt.result.at("report");
  return rep.contains("beta_k") ? &rep.at("beta_k") : nullptr;
}

}  // namespace

std::string to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::kBetaVsK:
      return "beta-vs-k";
    case PlotKind::kGapVsN:
      return "gap-vs-N";
    case PlotKind::kProfile:
      return "profile";
  }
  return "unknown";
}

PlotKind parse_plot_kind(const std::string& name) {
  for (auto k : {PlotKind::kBetaVsK, PlotKind::kGapVsN, PlotKind::kProfile})
    if (to_string(k) == name) return k;
  throw ParameterError("unknown plot kind: " + name);
}

std::string render_svg(const std::vector<PlotPanel>& panels) {
  std::ostringstream out;
  const double height = kPanelHeight * static_cast<double>(std::max<std::size_t>(panels.size(), 1));
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(height)
      << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) render_panel(out, panels[i], kPanelHeight * static_cast<double>(i));
  out << "</svg>\n";
  return out.str();
}

std::vector<PlotPanel> profile_panels(std::int64_t base, double delta, int samples) {
  if (samples < 2) throw ParameterError("profile needs at least 2 samples");
  const Alphabet band = build_alphabet_interval(base, delta);
  std::vector<std::int64_t> all(static_cast<std::size_t>(base));
  std::iota(all.begin(), all.end(), 0);
  const SeedFunction g = gaussian_seed(Alphabet(base, all));
  const SeedFunction g_band = gaussian_seed(band);

  PlotPanel left;
  left.title = "g on Z_M, M=" + std::to_string(base) + ", delta=" + tick_label(delta);
  left.xlabel = "l";
  left.ylabel = "g(l)";
  PlotSeries gs{"g", {}, true, false};
  for (std::int64_t l = 0; l < base; ++l) gs.points.emplace_back(static_cast<double>(l), g.values[l].real());
  left.series.push_back(std::move(gs));
  left.vlines = {static_cast<double>(band.letters().front()), static_cast<double>(band.letters().back())};

  PlotPanel right;
  right.title = "|G_g| and |G_{g 1_A}| on [0, 1]";
  right.xlabel = "x";
  right.ylabel = "modulus";
  PlotSeries full{"|G_g|", {}, false, true}, cut{"|G_{g 1_A}|", {}, false, true};
  for (int i = 0; i < samples; ++i) {
    const double x = static_cast<double>(i) / (samples - 1);
    full.points.emplace_back(x, std::abs(symbol_eval(g, x)));
    cut.points.emplace_back(x, std::abs(symbol_eval(g_band, x)));
  }
  right.series.push_back(std::move(full));
  right.series.push_back(std::move(cut));
  const double m = static_cast<double>(base);
  right.vlines = {static_cast<double>(band.letters().front()) / m, static_cast<double>(band.letters().back() + 1) / m};
  return {left, right};
}

std::vector<std::pair<double, double>> upper_envelope(std::vector<std::pair<double, double>> points) {
  std::sort(points.begin(), points.end());
  double run = -INFINITY;
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    run = std::max(run, it->second);
    it->second = run;
  }
  return points;
}

std::vector<PlotPanel> plot_panels(const RunRecord& record, PlotKind kind) {
  switch (kind) {
    case PlotKind::kBetaVsK: {
      std::map<std::string, PlotSeries> groups;
      for (const auto& pt : record.points) {
        const json* beta = beta_field(pt);
        if (!beta || !pt.params.contains("k") || beta->is_null()) continue;
        const std::string key = series_key(pt.params, "k");
        auto& s = groups[key];
        s.label = key;
        s.points.emplace_back(pt.params.at("k").get<double>(), beta->get<double>());
      }
      if (groups.empty()) throw ParameterError("beta-vs-k plot needs records with k and report.beta_k");
      PlotPanel p{"finite-k exponent", "k", "beta_k", {}, {}};
      for (auto& [key, s] : groups) {
        std::sort(s.points.begin(), s.points.end());
        p.series.push_back(std::move(s));
      }
      return {p};
    }
    case PlotKind::kGapVsN: {
      std::map<std::string, std::vector<std::pair<double, double>>> groups;
      for (const auto& pt : record.points) {
        if (pt.status != "ok" || !pt.params.contains("N") || !pt.result.contains("gelfand")) continue;
        const json& g = pt.result.at("gelfand");
        if (!g.contains("rho_upper")) continue;
        groups[series_key(pt.params, "N")].emplace_back(pt.params.at("N").get<double>(),
                                                        g.at("rho_upper").get<double>());
      }
      if (groups.empty()) throw ParameterError("gap-vs-N plot needs baker records with N and rho_upper");
      PlotPanel p{"spectral radius bound", "N", "rho_upper", {}, {}};
      for (auto& [key, pts] : groups) {
        std::sort(pts.begin(), pts.end());
        p.series.push_back(PlotSeries{key, pts, true, false});
        p.series.push_back(PlotSeries{key + " envelope", upper_envelope(pts), false, true});
      }
      return {p};
    }
    case PlotKind::kProfile: {
      for (const auto& pt : record.points)
        if (pt.params.contains("M") && pt.params.contains("delta"))
          return profile_panels(pt.params.at("M").get<std::int64_t>(), pt.params.at("delta").get<double>());
      throw ParameterError("profile plot needs a record with M and delta");
    }
  }
  throw ParameterError("unknown plot kind");
}

void emit_plot(const RunRecord& record, PlotKind kind, const std::filesystem::path& path) {
  const std::string svg = render_svg(plot_panels(record, kind));
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << svg;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace fup
