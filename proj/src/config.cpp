#include "curvesolve/config.hpp"

#include <cmath>
#include <fstream>

#include "curvesolve/harmonics.hpp"
#include <sstream>

#include <json.hpp>

namespace curvesolve {

using nlohmann::json;

namespace {

double finite(const json& j, const std::string& where) {
  if (!j.is_number()) throw ConfigError(where + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw ConfigError(where + ": value must be finite");
  return v;
}

std::vector<HarmonicTerm> parse_terms(const json& j, const std::string& where) {
  if (!j.is_array()) throw ConfigError(where + ": expected an array of {l,m,coeff}");
  std::vector<HarmonicTerm> terms;
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const auto& e = j[i];
    if (!e.is_object() || !e.contains("l") || !e.contains("m") || !e.contains("coeff")) {
      throw ConfigError(at + ": expected fields l, m, coeff");
    }
    HarmonicTerm t;
    t.l = e.at("l").get<int>();
    t.m = e.at("m").get<int>();
    t.coeff = finite(e.at("coeff"), at + ".coeff");
    if (t.l < 0 || t.l > kMaxHarmonicDegree || std::abs(t.m) > t.l) {
      throw ConfigError(at + ": invalid (l, m) = (" + std::to_string(t.l) + ", " +
                        std::to_string(t.m) + ")");
    }
    terms.push_back(t);
  }
  return terms;
}

json terms_to_json(const std::vector<HarmonicTerm>& terms) {
  json arr = json::array();
  for (const auto& t : terms) {
    arr.push_back({{"l", t.l}, {"m", t.m}, {"coeff", t.coeff}});
  }
  return arr;
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return metric_terms == o.metric_terms && curvature_offset == o.curvature_offset &&
         curvature_terms == o.curvature_terms && solver == o.solver &&
         schedule == o.schedule && seeds == o.seeds && nodes == o.nodes &&
         grid_resolution == o.grid_resolution &&
         separation_threshold == o.separation_threshold &&
         output_dir == o.output_dir && formats == o.formats;
}

ContinuationSchedule RunConfig::continuation_schedule() const {
  auto sched = ContinuationSchedule::l_shaped(schedule.s_target, schedule.s_steps,
                                              schedule.t_steps);
  sched.min_step = schedule.min_step;
  sched.monitors = schedule.monitors;
  sched.continuity_threshold = schedule.continuity_threshold;
  sched.clearance = solver.clearance;
  sched.grid_resolution = grid_resolution;
  return sched;
}

RunConfig parse_config_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level must be an object");

  RunConfig cfg;

  if (!j.contains("metric") || !j.at("metric").is_object()) {
    throw ConfigError("metric: required object with a terms array");
  }
  cfg.metric_terms = parse_terms(j.at("metric").value("terms", json::array()),
                                 "metric.terms");

  if (!j.contains("curvature")) throw ConfigError("curvature: required");
  const auto& cj = j.at("curvature");
  if (cj.is_object() && cj.contains("constant")) {
    cfg.curvature_offset = finite(cj.at("constant"), "curvature.constant");
  } else if (cj.is_object()) {
    cfg.curvature_offset = finite(cj.value("offset", json(0.0)), "curvature.offset");
    cfg.curvature_terms = parse_terms(cj.value("terms", json::array()),
                                      "curvature.terms");
  } else {
    throw ConfigError("curvature: expected {constant} or {offset, terms}");
  }

  if (j.contains("solver")) {
    const auto& sj = j.at("solver");
    cfg.solver.tol = finite(sj.value("tol", json(cfg.solver.tol)), "solver.tol");
    cfg.solver.max_iter = sj.value("max_iter", cfg.solver.max_iter);
    cfg.solver.damping = finite(sj.value("damping", json(cfg.solver.damping)),
                                "solver.damping");
    cfg.solver.newton = sj.value("newton", cfg.solver.newton);
    cfg.solver.embeddedness_monitor =
        sj.value("embeddedness_monitor", cfg.solver.embeddedness_monitor);
    cfg.solver.clearance = finite(sj.value("clearance", json(cfg.solver.clearance)),
                                  "solver.clearance");
  }

  if (j.contains("schedule")) {
    const auto& sj = j.at("schedule");
    auto& sc = cfg.schedule;
    sc.s_steps = sj.value("s_steps", sc.s_steps);
    sc.t_steps = sj.value("t_steps", sc.t_steps);
    sc.s_target = finite(sj.value("s_target", json(sc.s_target)), "schedule.s_target");
    sc.min_step = finite(sj.value("min_step", json(sc.min_step)), "schedule.min_step");
    sc.continuity_threshold =
        finite(sj.value("continuity_threshold", json(sc.continuity_threshold)),
               "schedule.continuity_threshold");
    sc.theorem_mode = sj.value("theorem_mode", sc.theorem_mode);
    sc.small_curvature_threshold =
        finite(sj.value("small_curvature_threshold", json(sc.small_curvature_threshold)),
               "schedule.small_curvature_threshold");
    if (sj.contains("monitors")) {
      const auto& mj = sj.at("monitors");
      sc.monitors.length_bound = mj.value("length_bound", true);
      sc.monitors.embeddedness = mj.value("embeddedness", true);
      sc.monitors.convexity = mj.value("convexity", true);
      sc.monitors.speed = mj.value("speed", true);
    }
    if (sc.s_target < 0.0) throw ConfigError("schedule.s_target: must be >= 0");
    if (sc.s_steps < 2 || sc.t_steps < 2) {
      throw ConfigError("schedule.s_steps/t_steps: need at least 2 per leg");
    }
    if (sc.min_step <= 0.0 || sc.min_step > 1.0) {
      throw ConfigError("schedule.min_step: must lie in (0, 1]");
    }
  }

  if (j.contains("seeds")) {
    const auto& sj = j.at("seeds");
    if (!sj.is_array() || sj.empty()) throw ConfigError("seeds: expected nonempty array");
    cfg.seeds.clear();
    for (size_t i = 0; i < sj.size(); ++i) {
      const std::string at = "seeds[" + std::to_string(i) + "]";
      const auto& e = sj[i];
      if (!e.is_object() || !e.contains("axis") || !e.at("axis").is_array() ||
          e.at("axis").size() != 3) {
        throw ConfigError(at + ": expected {axis: [x,y,z]}");
      }
      SeedConfig seed;
      seed.axis = Vec3(finite(e.at("axis")[0], at + ".axis[0]"),
                       finite(e.at("axis")[1], at + ".axis[1]"),
                       finite(e.at("axis")[2], at + ".axis[2]"));
      if (seed.axis.norm() < 1e-12) throw ConfigError(at + ".axis: zero vector");
      if (e.contains("kappa")) seed.kappa = finite(e.at("kappa"), at + ".kappa");
      cfg.seeds.push_back(seed);
    }
  }

  if (j.contains("curve")) {
    cfg.nodes = j.at("curve").value("n", cfg.nodes);
    if (cfg.nodes < 16) throw ConfigError("curve.n: must be >= 16");
  }
  if (j.contains("grid")) {
    cfg.grid_resolution = j.at("grid").value("resolution", cfg.grid_resolution);
    if (cfg.grid_resolution < 16) throw ConfigError("grid.resolution: must be >= 16");
  }
  cfg.separation_threshold =
      finite(j.value("separation_threshold", json(cfg.separation_threshold)),
             "separation_threshold");

  if (j.contains("output")) {
    const auto& oj = j.at("output");
    cfg.output_dir = oj.value("dir", cfg.output_dir);
    if (oj.contains("formats")) {
      for (const auto& f : oj.at("formats")) {
        cfg.formats.push_back(f.get<std::string>());
      }
    }
  }
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

std::string serialize_config(const RunConfig& cfg) {
  json j;
  j["metric"]["terms"] = terms_to_json(cfg.metric_terms);
  if (cfg.curvature_terms.empty()) {
    j["curvature"]["constant"] = cfg.curvature_offset;
  } else {
    j["curvature"]["offset"] = cfg.curvature_offset;
    j["curvature"]["terms"] = terms_to_json(cfg.curvature_terms);
  }
  j["solver"] = {{"tol", cfg.solver.tol},
                 {"max_iter", cfg.solver.max_iter},
                 {"damping", cfg.solver.damping},
                 {"newton", cfg.solver.newton},
                 {"embeddedness_monitor", cfg.solver.embeddedness_monitor},
                 {"clearance", cfg.solver.clearance}};
  j["schedule"] = {{"s_steps", cfg.schedule.s_steps},
                   {"t_steps", cfg.schedule.t_steps},
                   {"s_target", cfg.schedule.s_target},
                   {"min_step", cfg.schedule.min_step},
                   {"continuity_threshold", cfg.schedule.continuity_threshold},
                   {"theorem_mode", cfg.schedule.theorem_mode},
                   {"small_curvature_threshold", cfg.schedule.small_curvature_threshold},
                   {"monitors",
                    {{"length_bound", cfg.schedule.monitors.length_bound},
                     {"embeddedness", cfg.schedule.monitors.embeddedness},
                     {"convexity", cfg.schedule.monitors.convexity},
                     {"speed", cfg.schedule.monitors.speed}}}};
  j["seeds"] = json::array();
  for (const auto& seed : cfg.seeds) {
    json e = {{"axis", {seed.axis.x(), seed.axis.y(), seed.axis.z()}}};
    if (seed.kappa) e["kappa"] = *seed.kappa;
    j["seeds"].push_back(e);
  }
  j["curve"]["n"] = cfg.nodes;
  j["grid"]["resolution"] = cfg.grid_resolution;
  j["separation_threshold"] = cfg.separation_threshold;
  j["output"]["dir"] = cfg.output_dir;
  j["output"]["formats"] = cfg.formats;
  return j.dump(2) + "\n";
}

}  // namespace curvesolve
