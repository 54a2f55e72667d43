#include "usvctl/scenario.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace usvctl {

namespace {

using nlohmann::json;

Vec3 vec3_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) {
    throw std::invalid_argument("scenario: '" + where +
                                "' must be an array of 3 numbers");
  }
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json vec3_to(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

TrajectoryConfig trajectory_from(const json& j) {
  TrajectoryConfig cfg;
  const std::string preset = j.value("preset", "ellipse");
  if (preset == "ellipse") {
    cfg = TrajectoryConfig::ellipse();
  } else if (preset == "figure8") {
    cfg = TrajectoryConfig::figure8();
  } else {
    throw std::invalid_argument("scenario: unknown trajectory preset '" +
                                preset + "' (expected ellipse or figure8)");
  }
  if (j.contains("amplitudes")) cfg.amplitude = vec3_from(j["amplitudes"], "trajectory.amplitudes");
  if (j.contains("frequencies")) cfg.omega = vec3_from(j["frequencies"], "trajectory.frequencies");
  return cfg;
}

VesselParams vessel_from(const json& j) {
  if (j.is_string() || (j.is_object() && j.contains("preset"))) {
    const std::string preset = j.is_string() ? j.get<std::string>()
                                             : j["preset"].get<std::string>();
    if (preset == "cybership2") return cybership2_params();
    throw std::invalid_argument("scenario: unknown vessel preset '" + preset +
                                "'");
  }
  return vessel_params_from_json_text(j.dump());
}

SatStack stack_from_string(const std::string& s) {
  if (s == "asym") return SatStack::Asym;
  if (s == "magrate") return SatStack::Magrate;
  throw std::invalid_argument("scenario: unknown saturation stack '" + s +
                              "' (expected asym or magrate)");
}

}  // namespace

void ScenarioConfig::validate() const {
  if (!(dt > 0.0)) throw std::invalid_argument("scenario: dt must be > 0");
  if (!(duration >= dt)) {
    throw std::invalid_argument("scenario: duration must cover at least one step");
  }
  if (!(observer_gain.array() > 0.0).all()) {
    throw std::invalid_argument("scenario: observer gain must be positive");
  }
  if (!eta0.allFinite() || !nu0.allFinite()) {
    throw std::invalid_argument("scenario: initial state must be finite");
  }
  gains.validate();
  asym.validate();
  magrate.validate();
  mass_matrix(vessel);  // rejects non-positive-definite parameter sets
}

ScenarioConfig default_scenario(Method method, TrajectoryKind kind) {
  ScenarioConfig cfg;
  cfg.method = method;
  cfg.trajectory = kind == TrajectoryKind::Ellipse
                       ? TrajectoryConfig::ellipse()
                       : TrajectoryConfig::figure8();
  cfg.duration = kind == TrajectoryKind::Ellipse ? 400.0 : 300.0;
  const bool magrate_stack = method == Method::ProposedMagrate;
  cfg.gains = magrate_stack ? ControllerGains::magrate_defaults()
                            : ControllerGains::asym_defaults();
  cfg.baseline_stack = magrate_stack ? SatStack::Magrate : SatStack::Asym;
  cfg.name = std::string(kind == TrajectoryKind::Ellipse ? "ellipse" : "figure8") +
             "-" + to_string(method);
  return cfg;
}

ScenarioConfig scenario_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("scenario: invalid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) {
    throw std::invalid_argument("scenario: expected a JSON object");
  }
  const std::string schema = j.value("schema", "");
  if (schema != kScenarioSchema) {
    throw std::invalid_argument(
        "scenario: missing or unsupported schema tag (expected \"" +
        std::string(kScenarioSchema) + "\")");
  }

  const Method method = method_from_string(j.value("method", "proposed-asym"));
  TrajectoryKind kind = TrajectoryKind::Ellipse;
  if (j.contains("trajectory") &&
      j["trajectory"].value("preset", "ellipse") == "figure8") {
    kind = TrajectoryKind::Figure8;
  }

  ScenarioConfig cfg = default_scenario(method, kind);
  cfg.name = j.value("name", cfg.name);
  if (j.contains("trajectory")) cfg.trajectory = trajectory_from(j["trajectory"]);
  if (j.contains("vessel")) cfg.vessel = vessel_from(j["vessel"]);

  if (j.contains("initial")) {
    const auto& init = j["initial"];
    if (init.contains("eta")) cfg.eta0 = vec3_from(init["eta"], "initial.eta");
    if (init.contains("nu")) cfg.nu0 = vec3_from(init["nu"], "initial.nu");
  }

  if (j.contains("gains")) {
    const auto& g = j["gains"];
    if (g.contains("K0")) cfg.observer_gain = vec3_from(g["K0"], "gains.K0");
    if (g.contains("K1")) cfg.gains.k1 = vec3_from(g["K1"], "gains.K1");
    if (g.contains("K2")) cfg.gains.k2 = vec3_from(g["K2"], "gains.K2");
    if (g.contains("K3")) cfg.gains.k3 = vec3_from(g["K3"], "gains.K3");
    if (g.contains("K4")) cfg.gains.k4 = vec3_from(g["K4"], "gains.K4");
  }

  if (j.contains("saturation")) {
    const auto& s = j["saturation"];
    if (s.contains("asym")) {
      const auto& a = s["asym"];
      if (a.contains("tau_M")) cfg.asym.tau_max = vec3_from(a["tau_M"], "saturation.asym.tau_M");
      if (a.contains("tau_m")) cfg.asym.tau_min_mag = vec3_from(a["tau_m"], "saturation.asym.tau_m").cwiseAbs();
      if (a.contains("rho")) cfg.asym.rho = vec3_from(a["rho"], "saturation.asym.rho");
      if (a.contains("n")) cfg.asym.n = a["n"].get<int>();
      if (a.contains("tau_cM")) cfg.asym.drive_norm_bound = a["tau_cM"].get<double>();
    }
    if (s.contains("magrate")) {
      const auto& m = s["magrate"];
      if (m.contains("tau_M")) cfg.magrate.tau_max = vec3_from(m["tau_M"], "saturation.magrate.tau_M");
      if (m.contains("tau_dM")) cfg.magrate.rate_max = vec3_from(m["tau_dM"], "saturation.magrate.tau_dM");
      if (m.contains("rho1")) cfg.magrate.rho1 = vec3_from(m["rho1"], "saturation.magrate.rho1");
      if (m.contains("rho2")) cfg.magrate.rho2 = vec3_from(m["rho2"], "saturation.magrate.rho2");
      if (m.contains("n")) cfg.magrate.n = m["n"].get<int>();
      if (m.contains("T_M")) cfg.magrate.drive_norm_bound = m["T_M"].get<double>();
    }
  }
  if (j.contains("baseline_stack")) {
    cfg.baseline_stack = stack_from_string(j["baseline_stack"].get<std::string>());
  }

  if (j.contains("disturbance")) {
    const auto& d = j["disturbance"];
    if (d.contains("amplitude")) cfg.disturbance.amplitude = vec3_from(d["amplitude"], "disturbance.amplitude");
    if (d.contains("frequency")) cfg.disturbance.omega = vec3_from(d["frequency"], "disturbance.frequency");
    if (d.contains("phase")) cfg.disturbance.phase = vec3_from(d["phase"], "disturbance.phase");
    if (d.contains("offset")) cfg.disturbance.offset = vec3_from(d["offset"], "disturbance.offset");
  }

  if (j.contains("integrator")) {
    const auto& i = j["integrator"];
    cfg.dt = i.value("dt", cfg.dt);
    cfg.duration = i.value("duration", cfg.duration);
  }

  if (j.contains("options")) {
    cfg.cubic_surge_damping =
        j["options"].value("cubic_surge_damping", cfg.cubic_surge_damping);
  }

  if (j.contains("metrics")) {
    const auto& m = j["metrics"];
    cfg.settle_pos_threshold = m.value("settle_pos", cfg.settle_pos_threshold);
    cfg.settle_heading_threshold =
        m.value("settle_heading", cfg.settle_heading_threshold);
  }

  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open scenario file: " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json_text(buf.str());
}

std::string scenario_to_json_text(const ScenarioConfig& cfg) {
  nlohmann::ordered_json j;
  j["schema"] = kScenarioSchema;
  j["name"] = cfg.name;
  j["method"] = to_string(cfg.method);

  nlohmann::ordered_json traj;
  traj["preset"] =
      cfg.trajectory.kind == TrajectoryKind::Ellipse ? "ellipse" : "figure8";
  traj["amplitudes"] = vec3_to(cfg.trajectory.amplitude);
  traj["frequencies"] = vec3_to(cfg.trajectory.omega);
  j["trajectory"] = traj;

  j["vessel"] = nlohmann::ordered_json::parse(vessel_params_to_json_text(cfg.vessel));
  j["initial"] = {{"eta", vec3_to(cfg.eta0)}, {"nu", vec3_to(cfg.nu0)}};
  j["gains"] = {{"K0", vec3_to(cfg.observer_gain)},
                {"K1", vec3_to(cfg.gains.k1)},
                {"K2", vec3_to(cfg.gains.k2)},
                {"K3", vec3_to(cfg.gains.k3)},
                {"K4", vec3_to(cfg.gains.k4)}};
  j["saturation"] = {
      {"asym",
       {{"tau_M", vec3_to(cfg.asym.tau_max)},
        {"tau_m", vec3_to(cfg.asym.tau_min_mag)},
        {"rho", vec3_to(cfg.asym.rho)},
        {"n", cfg.asym.n},
        {"tau_cM", cfg.asym.drive_norm_bound}}},
      {"magrate",
       {{"tau_M", vec3_to(cfg.magrate.tau_max)},
        {"tau_dM", vec3_to(cfg.magrate.rate_max)},
        {"rho1", vec3_to(cfg.magrate.rho1)},
        {"rho2", vec3_to(cfg.magrate.rho2)},
        {"n", cfg.magrate.n},
        {"T_M", cfg.magrate.drive_norm_bound}}}};
  j["baseline_stack"] =
      cfg.baseline_stack == SatStack::Asym ? "asym" : "magrate";
  j["disturbance"] = {{"amplitude", vec3_to(cfg.disturbance.amplitude)},
                      {"frequency", vec3_to(cfg.disturbance.omega)},
                      {"phase", vec3_to(cfg.disturbance.phase)},
                      {"offset", vec3_to(cfg.disturbance.offset)}};
  j["integrator"] = {{"dt", cfg.dt}, {"duration", cfg.duration}};
  j["options"] = {{"cubic_surge_damping", cfg.cubic_surge_damping}};
  j["metrics"] = {{"settle_pos", cfg.settle_pos_threshold},
                  {"settle_heading", cfg.settle_heading_threshold}};
  return j.dump(2) + "\n";
}

}  // namespace usvctl
