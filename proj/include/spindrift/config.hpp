#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spindrift/coupling.hpp"
#include "spindrift/grid.hpp"
#include "spindrift/state.hpp"

namespace spindrift {

// Doping / contact-level specification: a constant, or the smooth bump
// base + amplitude*sin(pi x/Lx)*sin(pi y/Ly).
struct ProfileSpec {
  std::string kind = "constant";  // "constant" | "sine"
  Real base = 1.0;
  Real amplitude = 0.0;
};

struct OutputConfig {
  std::string directory = "out";
  bool snapshot = false;
};

// Parsed run document.  Scalar constraints are enforced at parse time; grid
// assembly and field materialization happen in build_run.
struct RunConfig {
  int nx = 32, ny = 32;
  Real Lx = 1.0, Ly = 1.0;

  Rect omega1{0.25, 0.75, 0.25, 0.75};
  std::optional<Rect> omega2;

  // left, right, bottom, top in {'D','N'}; ignored when periodic.
  std::array<char, 4> bc = {'D', 'D', 'N', 'N'};
  bool periodic = false;

  Real alpha = 1.0, beta = 0.1, gamma = 1.0, D = 1.0, tau = 1.0, rho_D = 1.0;
  ProfileSpec C;

  std::optional<Real> dt;   // exactly one of dt / cfl
  std::optional<Real> cfl;  // dt = cfl * min(hx, hy)
  Real t_end = 0.0;
  int output_every = 1;

  Real sigma = 1.0;
  Real picard_tol = 1e-8;
  int picard_max = 50;

  Real eps_x = 0.0, eps_t = 0.0;
  Real M_trunc = kInf;

  OutputConfig output;

  std::string init_profile = "uniform";
  Real init_amplitude = 0.1;
  bool skip_validation = false;

  std::uint64_t seed = 0;
};

// Parses the braces/key-value document: unquoted keys, // comments, and
// trailing commas are accepted; unknown keys are rejected.  Locale-free.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Built-in run documents; preset_text throws ConfigError for unknown names.
std::vector<std::string> preset_names();
std::string preset_text(const std::string& name);

// Everything a run needs, materialized from a parsed document.
struct BuildResult {
  Grid grid;
  PhysParams params;
  SimConfigs cfgs;
  SimState initial;
  OutputConfig output;
  bool skip_validation = false;
  std::uint64_t seed = 0;
};

BuildResult build_run(const RunConfig& rc);

}  // namespace spindrift
