#include "curvesolve/runner.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <json.hpp>

namespace curvesolve {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string branch_status_name(BranchStatus s) {
  switch (s) {
    case BranchStatus::complete: return "complete";
    case BranchStatus::step_collapse: return "step-collapse";
    case BranchStatus::monitor_violation: return "monitor-violation";
  }
  return "unknown";
}

json diagnostics_to_json(const Diagnostics& d) {
  json j;
  j["length"] = d.length;
  j["lambda1"] = d.lambda1;
  j["min_gauss_curvature"] = d.min_gauss_curvature;
  j["length_bound"] = d.length_bound;
  if (std::isnan(d.gauss_bonnet_residual)) {
    j["gauss_bonnet_residual"] = nullptr;
  } else {
    j["gauss_bonnet_residual"] = d.gauss_bonnet_residual;
  }
  j["max_curvature_error"] = d.max_curvature_error;
  j["embedded"] = d.embedded;
  j["speed_variation"] = d.speed_variation;
  j["notes"] = d.notes;
  return j;
}

json branch_to_json(const Branch& b) {
  json j;
  j["seed_id"] = b.seed_id;
  j["status"] = branch_status_name(b.status);
  j["message"] = b.message;
  j["states"] = json::array();
  for (const auto& st : b.states) {
    json s;
    s["t"] = st.t;
    s["s"] = st.s;
    s["diagnostics"] = diagnostics_to_json(st.diagnostics);
    json nodes = json::array();
    for (const auto& p : st.curve.nodes()) {
      nodes.push_back({p.x(), p.y(), p.z()});
    }
    s["nodes"] = std::move(nodes);
    j["states"].push_back(std::move(s));
  }
  return j;
}

fs::path fresh_run_dir(const fs::path& base) {
  fs::create_directories(base);
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::localtime(&tt));
  for (int i = 0;; ++i) {
    fs::path dir = base / ("run-" + std::string(stamp) +
                           (i == 0 ? "" : "-" + std::to_string(i)));
    if (!fs::exists(dir)) {
      fs::create_directories(dir);
      return dir;
    }
  }
}

std::string shortest(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string sig17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunOutcome run(const RunConfig& cfg, std::ostream& log,
               const std::optional<std::string>& output_override, int threads) {
  // Setup phase: every failure here is a configuration/domain error.
  std::optional<ConformalMetric> metric;
  std::optional<CurvatureSpec> spec;
  ContinuationSchedule schedule;
  try {
    metric.emplace(cfg.metric_terms, 1.0, cfg.grid_resolution);
    spec.emplace(cfg.curvature_offset, cfg.curvature_terms, cfg.schedule.s_target);
    schedule = cfg.continuation_schedule();
    if (cfg.schedule.theorem_mode) {
      const double cmax = spec->max_value(cfg.grid_resolution);
      if (cmax > cfg.schedule.small_curvature_threshold) {
        throw ConfigError("theorem mode: s * max c = " + std::to_string(cmax) +
                          " exceeds the small-curvature threshold " +
                          std::to_string(cfg.schedule.small_curvature_threshold));
      }
    }
  } catch (const std::exception& e) {
    log << "error: " << e.what() << "\n";
    return {kExitConfigError, ""};
  }

  const fs::path run_dir = fresh_run_dir(output_override.value_or(cfg.output_dir));
  {
    std::ofstream out(run_dir / "config.json");
    out << serialize_config(cfg);
  }

  const double s0 = schedule.path.front().second;

  auto trace = [&](const SeedConfig& seed, int index) -> std::pair<Branch, bool> {
    const double kappa =
        seed.kappa.value_or(spec->with_scale(s0).max_value(cfg.grid_resolution));
    const std::string id = "seed-" + std::to_string(index);
    try {
      const DiscreteCurve circle = seed_circle(kappa, seed.axis, cfg.nodes);
      return {continue_path(circle, *metric, *spec, schedule, cfg.solver, id), false};
    } catch (const std::exception& e) {
      Branch b;
      b.seed_id = id;
      b.status = BranchStatus::step_collapse;
      b.message = std::string("seed failure: ") + e.what();
      return {std::move(b), true};
    }
  };

  std::vector<Branch> branches;
  bool seed_failure = false;
  if (threads > 1 && cfg.seeds.size() > 1) {
    std::vector<std::future<std::pair<Branch, bool>>> futures;
    for (size_t i = 0; i < cfg.seeds.size(); ++i) {
      futures.push_back(std::async(std::launch::async, trace, cfg.seeds[i],
                                   static_cast<int>(i)));
    }
    for (auto& f : futures) {
      auto [b, failed] = f.get();
      seed_failure |= failed;
      branches.push_back(std::move(b));
    }
  } else {
    for (size_t i = 0; i < cfg.seeds.size(); ++i) {
      auto [b, failed] = trace(cfg.seeds[i], static_cast<int>(i));
      seed_failure |= failed;
      branches.push_back(std::move(b));
    }
  }

  json result;
  result["branches"] = json::array();
  bool all_complete = !seed_failure;
  for (const auto& b : branches) {
    all_complete &= b.complete() && !b.states.empty();
    result["branches"].push_back(branch_to_json(b));
  }

  if (branches.size() >= 2 && !branches[0].states.empty() &&
      !branches[1].states.empty()) {
    const double distinctness = aligned_distance(branches[0].terminal().curve,
                                                 branches[1].terminal().curve);
    result["distinctness"] = distinctness;
    if (all_complete && distinctness <= cfg.separation_threshold) {
      log << "warning: terminal curves may lie on the same orbit (aligned distance "
          << distinctness << ")\n";
      result["merged_warning"] = true;
    } else {
      result["merged_warning"] = false;
    }
  } else {
    result["distinctness"] = nullptr;
    result["merged_warning"] = false;
  }
  result["success"] = all_complete;

  {
    std::ofstream out(run_dir / "result.json");
    out << result.dump(2) << "\n";
  }
  for (const auto& fmt : cfg.formats) {
    export_run(run_dir.string(), fmt);
  }

  for (const auto& b : branches) {
    log << b.seed_id << ": " << branch_status_name(b.status) << " ("
        << b.states.size() << " states)";
    if (!b.message.empty()) log << " - " << b.message;
    log << "\n";
  }

  return {all_complete ? kExitOk : kExitPartial, run_dir.string()};
}

std::vector<std::string> export_run(const std::string& run_dir, const std::string& format,
                                    const std::optional<std::string>& out_dir) {
  const fs::path src = fs::path(run_dir) / "result.json";
  std::ifstream in(src);
  if (!in) throw std::runtime_error("export: cannot read " + src.string());
  json result = json::parse(in);
  const fs::path dst = out_dir ? fs::path(*out_dir) : fs::path(run_dir);
  fs::create_directories(dst);
  std::vector<std::string> written;

  if (format == "curve-table") {
    const fs::path file = dst / "curve_table.txt";
    std::ofstream out(file);
    for (const auto& branch : result.at("branches")) {
      int idx = 0;
      for (const auto& state : branch.at("states")) {
        const auto& nodes = state.at("nodes");
        out << "state " << idx << " branch " << branch.at("seed_id").get<std::string>()
            << " t " << sig17(state.at("t").get<double>()) << " s "
            << sig17(state.at("s").get<double>()) << " N " << nodes.size() << "\n";
        for (size_t k = 0; k < nodes.size(); ++k) {
          out << k << " " << sig17(nodes[k][0].get<double>()) << " "
              << sig17(nodes[k][1].get<double>()) << " "
              << sig17(nodes[k][2].get<double>()) << "\n";
        }
        ++idx;
      }
    }
    written.push_back(file.string());
  } else if (format == "diagnostics-table") {
    const fs::path file = dst / "diagnostics_table.txt";
    std::ofstream out(file);
    out << "branch state t s length lambda1 min_gauss_curvature length_bound "
           "gauss_bonnet_residual max_curvature_error embedded speed_variation\n";
    for (const auto& branch : result.at("branches")) {
      int idx = 0;
      for (const auto& state : branch.at("states")) {
        const auto& d = state.at("diagnostics");
        auto num = [&](const char* key) {
          return d.at(key).is_null() ? std::string("nan")
                                     : shortest(d.at(key).get<double>());
        };
        out << branch.at("seed_id").get<std::string>() << " " << idx << " "
            << shortest(state.at("t").get<double>()) << " "
            << shortest(state.at("s").get<double>()) << " " << num("length") << " "
            << num("lambda1") << " " << num("min_gauss_curvature") << " "
            << num("length_bound") << " " << num("gauss_bonnet_residual") << " "
            << num("max_curvature_error") << " "
            << (d.at("embedded").get<bool>() ? "1" : "0") << " "
            << num("speed_variation") << "\n";
        ++idx;
      }
    }
    written.push_back(file.string());
  } else if (format == "plot-bundle") {
    for (const auto& branch : result.at("branches")) {
      const fs::path file =
          dst / ("branch-" + branch.at("seed_id").get<std::string>() + ".xyz");
      std::ofstream out(file);
      for (const auto& state : branch.at("states")) {
        const auto& nodes = state.at("nodes");
        for (size_t k = 0; k <= nodes.size(); ++k) {
          const auto& p = nodes[k % nodes.size()];
          out << shortest(p[0].get<double>()) << " " << shortest(p[1].get<double>())
              << " " << shortest(p[2].get<double>()) << "\n";
        }
        out << "\n";  // block separator, one polyline per state
      }
      written.push_back(file.string());
    }
  } else {
    throw std::runtime_error("export: unknown format '" + format + "'");
  }
  return written;
}

}  // namespace curvesolve
