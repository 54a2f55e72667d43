#pragma once

#include "usvctl/scenario.hpp"
#include "usvctl/sim.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace usvctl {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
};

/// Horizontal overlay line, used for actuator bounds.
struct PlotHLine {
  double value = 0.0;
  std::string label;
};

/// Writes a single SVG line plot (axes, ticks, legend, optional bound
/// overlays). Long series are stride-downsampled for file size.
void write_line_plot(const std::filesystem::path& path,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<PlotSeries>& series,
                     const std::vector<PlotHLine>& hlines = {});

/// Renders the standard figure set for one run into out_dir:
/// xy_track, control_inputs, pose_vs_reference, tracking_errors, body_rates,
/// disturbance_estimate and input_rate (seven SVG files). Input plots carry
/// bound overlays except for the unbounded baseline.
void render_plots(const std::vector<SimRecord>& records,
                  const ScenarioConfig& cfg,
                  const std::filesystem::path& out_dir);

}  // namespace usvctl
