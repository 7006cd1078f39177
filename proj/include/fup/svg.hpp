#pragma once

// Standalone SVG plots of sweep records. Output is a pure function of the
// input, so identical records give byte-identical files.

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "fup/sweep.hpp"

namespace fup {

enum class PlotKind { kBetaVsK, kGapVsN, kProfile };

std::string to_string(PlotKind kind);
PlotKind parse_plot_kind(const std::string& name);

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool markers = true;
  bool line = true;
};

struct PlotPanel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotSeries> series;
  std::vector<double> vlines;  // vertical guide lines at these x values
};

/// Renders panels stacked vertically into one SVG document.
std::string render_svg(const std::vector<PlotPanel>& panels);

/// Panels for the seed g on Z_M (left) and |G_g|, |G_{g 1_A}| on [0, 1]
/// (right) for the interval alphabet of (M, delta).
std::vector<PlotPanel> profile_panels(std::int64_t base, double delta, int samples = 2000);

/// Builds the panels for `kind` from a record. Throws ParameterError when the
/// record lacks the needed fields.
std::vector<PlotPanel> plot_panels(const RunRecord& record, PlotKind kind);

/// render_svg(plot_panels(record, kind)) written to `path`.
void emit_plot(const RunRecord& record, PlotKind kind, const std::filesystem::path& path);

/// max over N' >= N of rho(N'): a non-increasing envelope of a (N, rho) series
/// sorted by N.
std::vector<std::pair<double, double>> upper_envelope(std::vector<std::pair<double, double>> points);

}  // namespace fup
