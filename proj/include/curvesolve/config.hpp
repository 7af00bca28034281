#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvesolve/continuation.hpp"

namespace curvesolve {

// Configuration error with field context; parsing is all-or-nothing.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool vec_equal(const Vec3& a, const Vec3& b) {
  return a.x() == b.x() && a.y() == b.y() && a.z() == b.z();
}

struct SeedConfig {
  Vec3 axis = Vec3::UnitZ();
  std::optional<double> kappa;  // defaults to s0 * max c at the first waypoint
  bool operator==(const SeedConfig& o) const {
    return vec_equal(axis, o.axis) && kappa == o.kappa;
  }
};

struct ScheduleConfig {
  int s_steps = 21;
  int t_steps = 41;
  double s_target = 1.0;
  double min_step = 1e-4;
  double continuity_threshold = 0.2;
  Monitors monitors;
  bool theorem_mode = true;
  double small_curvature_threshold = 0.25;
  bool operator==(const ScheduleConfig&) const = default;
};

struct RunConfig {
  std::vector<HarmonicTerm> metric_terms;
  double curvature_offset = 1.0;
  std::vector<HarmonicTerm> curvature_terms;
  SolverOptions solver;
  ScheduleConfig schedule;
  std::vector<SeedConfig> seeds = {SeedConfig{}};
  int nodes = 256;
  int grid_resolution = 64;
  double separation_threshold = 0.1;
  std::string output_dir = "out";
  std::vector<std::string> formats;

  bool operator==(const RunConfig& o) const;

  ContinuationSchedule continuation_schedule() const;
};

RunConfig parse_config_text(const std::string& json_text);
RunConfig parse_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

}  // namespace curvesolve
