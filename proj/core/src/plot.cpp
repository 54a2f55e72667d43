#include "usvctl/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace usvctl {

namespace {

constexpr int kWidth = 860;
constexpr int kHeight = 520;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;
constexpr size_t kMaxPointsPerSeries = 1600;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
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

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void expand(double v) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double margin = 0.05 * (hi - lo);
    lo -= margin;
    hi += margin;
  }
};

double nice_tick(double span) {
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double norm = raw / mag;
  double step = 10.0;
  if (norm <= 1.5) step = 1.0;
  else if (norm <= 3.5) step = 2.0;
  else if (norm <= 7.5) step = 5.0;
  return step * mag;
}

}  // namespace

void write_line_plot(const std::filesystem::path& path,
                     const std::string& title, const std::string& x_label,
                     const std::string& y_label,
                     const std::vector<PlotSeries>& series,
                     const std::vector<PlotHLine>& hlines) {
  Range rx, ry;
  for (const auto& s : series) {
    for (double v : s.x) rx.expand(v);
    for (double v : s.y) ry.expand(v);
  }
  for (const auto& h : hlines) ry.expand(h.value);
  rx.pad();
  ry.pad();

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto sx = [&](double v) {
    return kMarginLeft + (v - rx.lo) / (rx.hi - rx.lo) * plot_w;
  };
  auto sy = [&](double v) {
    return kMarginTop + (ry.hi - v) / (ry.hi - ry.lo) * plot_h;
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
         std::to_string(kWidth) + "\" height=\"" + std::to_string(kHeight) +
         "\" viewBox=\"0 0 " + std::to_string(kWidth) + " " +
         std::to_string(kHeight) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + std::to_string(kWidth / 2) +
         "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">" +
         xml_escape(title) + "</text>\n";

  // Grid and ticks
  const double tick_x = nice_tick(rx.hi - rx.lo);
  const double tick_y = nice_tick(ry.hi - ry.lo);
  svg += "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">\n";
  for (double v = std::ceil(rx.lo / tick_x) * tick_x; v <= rx.hi;
       v += tick_x) {
    const double px = sx(v);
    svg += "<line x1=\"" + fmt(px) + "\" y1=\"" +
           std::to_string(kMarginTop) + "\" x2=\"" + fmt(px) + "\" y2=\"" +
           std::to_string(kHeight - kMarginBottom) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + fmt(px) + "\" y=\"" +
           std::to_string(kHeight - kMarginBottom + 16) +
           "\" text-anchor=\"middle\">" + fmt(v) + "</text>\n";
  }
  for (double v = std::ceil(ry.lo / tick_y) * tick_y; v <= ry.hi;
       v += tick_y) {
    const double py = sy(v);
    svg += "<line x1=\"" + std::to_string(kMarginLeft) + "\" y1=\"" +
           fmt(py) + "\" x2=\"" + std::to_string(kWidth - kMarginRight) +
           "\" y2=\"" + fmt(py) +
           "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + std::to_string(kMarginLeft - 6) + "\" y=\"" +
           fmt(py + 4) + "\" text-anchor=\"end\">" + fmt(v) + "</text>\n";
  }
  svg += "</g>\n";

  // Axes
  svg += "<rect x=\"" + std::to_string(kMarginLeft) + "\" y=\"" +
         std::to_string(kMarginTop) + "\" width=\"" + fmt(plot_w) +
         "\" height=\"" + fmt(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + std::to_string(kMarginLeft + (int)plot_w / 2) +
         "\" y=\"" + std::to_string(kHeight - 12) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\">" +
         xml_escape(x_label) + "</text>\n";
  svg += "<text x=\"16\" y=\"" + std::to_string(kMarginTop + (int)plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"12\" transform=\"rotate(-90 16 " +
         std::to_string(kMarginTop + (int)plot_h / 2) + ")\">" +
         xml_escape(y_label) + "</text>\n";

  // Bound overlays
  for (const auto& h : hlines) {
    const double py = sy(h.value);
    svg += "<line class=\"bound\" data-value=\"" + fmt(h.value) + "\" x1=\"" +
           std::to_string(kMarginLeft) + "\" y1=\"" + fmt(py) + "\" x2=\"" +
           std::to_string(kWidth - kMarginRight) + "\" y2=\"" + fmt(py) +
           "\" stroke=\"#555555\" stroke-width=\"1.2\" "
           "stroke-dasharray=\"7 4\"/>\n";
    if (!h.label.empty()) {
      svg += "<text x=\"" + std::to_string(kWidth - kMarginRight - 4) +
             "\" y=\"" + fmt(py - 4) +
             "\" text-anchor=\"end\" font-family=\"sans-serif\" "
             "font-size=\"10\" fill=\"#555555\">" +
             xml_escape(h.label) + "</text>\n";
    }
  }

  // Series
  for (size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const size_t n = std::min(s.x.size(), s.y.size());
    if (n == 0) continue;
    const size_t stride = std::max<size_t>(1, n / kMaxPointsPerSeries);
    std::string pts;
    for (size_t k = 0; k < n; k += stride) {
      pts += fmt(sx(s.x[k])) + "," + fmt(sy(s.y[k])) + " ";
    }
    if ((n - 1) % stride != 0) {
      pts += fmt(sx(s.x[n - 1])) + "," + fmt(sy(s.y[n - 1]));
    }
    const std::string color =
        s.color.empty() ? kPalette[i % 8] : s.color;
    svg += "<polyline fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.4\" points=\"" + pts + "\"/>\n";
  }

  // Legend
  double ly = kMarginTop + 14;
  for (size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    const std::string color = s.color.empty() ? kPalette[i % 8] : s.color;
    svg += "<line x1=\"" + std::to_string(kMarginLeft + 10) + "\" y1=\"" +
           fmt(ly - 4) + "\" x2=\"" + std::to_string(kMarginLeft + 34) +
           "\" y2=\"" + fmt(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + std::to_string(kMarginLeft + 40) + "\" y=\"" +
           fmt(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\">" +
           xml_escape(s.label) + "</text>\n";
    ly += 15;
  }

  svg += "</svg>\n";

  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  out.write(svg.data(), static_cast<std::streamsize>(svg.size()));
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

void render_plots(const std::vector<SimRecord>& records,
                  const ScenarioConfig& cfg,
                  const std::filesystem::path& out_dir) {
  if (records.empty()) {
    throw std::invalid_argument("render_plots: empty record stream");
  }
  std::filesystem::create_directories(out_dir);

  const size_t n = records.size();
  std::vector<double> t(n);
  std::vector<std::vector<double>> eta(3, std::vector<double>(n));
  std::vector<std::vector<double>> nu(3, std::vector<double>(n));
  std::vector<std::vector<double>> eta_d(3, std::vector<double>(n));
  std::vector<std::vector<double>> tau(3, std::vector<double>(n));
  std::vector<std::vector<double>> tau_rate(3, std::vector<double>(n));
  std::vector<std::vector<double>> b(3, std::vector<double>(n));
  std::vector<std::vector<double>> b_hat(3, std::vector<double>(n));
  std::vector<std::vector<double>> z1(3, std::vector<double>(n));
  for (size_t i = 0; i < n; ++i) {
    const SimRecord& r = records[i];
    t[i] = r.t;
    for (int a = 0; a < 3; ++a) {
      eta[a][i] = r.eta[a];
      nu[a][i] = r.nu[a];
      eta_d[a][i] = r.eta_d[a];
      tau[a][i] = r.tau[a];
      tau_rate[a][i] = r.tau_rate[a];
      b[a][i] = r.b[a];
      b_hat[a][i] = r.b_hat[a];
      z1[a][i] = r.z1[a];
    }
  }

  const bool overlay_bounds = cfg.method != Method::Unbounded;
  const bool magrate_bounds =
      cfg.method == Method::ProposedMagrate ||
      (cfg.method != Method::ProposedAsym &&
       cfg.baseline_stack == SatStack::Magrate);

  write_line_plot(out_dir / "xy_track.svg", "Vessel track", "East y [m]",
                  "North x [m]",
                  {{"actual", eta[1], eta[0], "#1f77b4"},
                   {"desired", eta_d[1], eta_d[0], "#d62728"}});

  std::vector<PlotHLine> input_bounds;
  if (overlay_bounds) {
    if (magrate_bounds) {
      for (int a = 0; a < 3; ++a) {
        input_bounds.push_back({cfg.magrate.tau_max[a], "+tau_max"});
        input_bounds.push_back({-cfg.magrate.tau_max[a], "-tau_max"});
      }
    } else {
      for (int a = 0; a < 3; ++a) {
        input_bounds.push_back({cfg.asym.tau_max[a], "+tau_max"});
        input_bounds.push_back({-cfg.asym.tau_min_mag[a], "-tau_min"});
      }
    }
  }
  write_line_plot(out_dir / "control_inputs.svg", "Control inputs", "t [s]",
                  "tau [N, N, N m]",
                  {{"tau_1", t, tau[0], "#1f77b4"},
                   {"tau_2", t, tau[1], "#d62728"},
                   {"tau_3", t, tau[2], "#2ca02c"}},
                  input_bounds);

  write_line_plot(out_dir / "pose_vs_reference.svg", "Pose vs reference",
                  "t [s]", "x [m], y [m], psi [rad]",
                  {{"x", t, eta[0], "#1f77b4"},
                   {"x_d", t, eta_d[0], "#9ecae1"},
                   {"y", t, eta[1], "#d62728"},
                   {"y_d", t, eta_d[1], "#ff9896"},
                   {"psi", t, eta[2], "#2ca02c"},
                   {"psi_d", t, eta_d[2], "#98df8a"}});

  write_line_plot(out_dir / "tracking_errors.svg",
                  "Position and heading errors", "t [s]",
                  "z1 [m, m, rad]",
                  {{"x error", t, z1[0], "#1f77b4"},
                   {"y error", t, z1[1], "#d62728"},
                   {"heading error", t, z1[2], "#2ca02c"}});

  write_line_plot(out_dir / "body_rates.svg", "Surge, sway and yaw rate",
                  "t [s]", "u [m/s], v [m/s], r [rad/s]",
                  {{"u", t, nu[0], "#1f77b4"},
                   {"v", t, nu[1], "#d62728"},
                   {"r", t, nu[2], "#2ca02c"}});

  write_line_plot(out_dir / "disturbance_estimate.svg",
                  "Disturbance and estimate", "t [s]", "b [N, N, N m]",
                  {{"b_1", t, b[0], "#1f77b4"},
                   {"b_1 est", t, b_hat[0], "#9ecae1"},
                   {"b_2", t, b[1], "#d62728"},
                   {"b_2 est", t, b_hat[1], "#ff9896"},
                   {"b_3", t, b[2], "#2ca02c"},
                   {"b_3 est", t, b_hat[2], "#98df8a"}});

  std::vector<PlotHLine> rate_bounds;
  if (overlay_bounds && magrate_bounds) {
    for (int a = 0; a < 3; ++a) {
      rate_bounds.push_back({cfg.magrate.rate_max[a], "+rate_max"});
      rate_bounds.push_back({-cfg.magrate.rate_max[a], "-rate_max"});
    }
  }
  write_line_plot(out_dir / "input_rate.svg", "Control input rate", "t [s]",
                  "dtau/dt [N/s]",
                  {{"dtau_1/dt", t, tau_rate[0], "#1f77b4"},
                   {"dtau_2/dt", t, tau_rate[1], "#d62728"},
                   {"dtau_3/dt", t, tau_rate[2], "#2ca02c"}},
                  rate_bounds);
}

}  // namespace usvctl
