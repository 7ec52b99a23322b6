#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bav/dynamics.hpp"
#include "bav/verify.hpp"

namespace bav::io {

// Trajectory CSV: one '#'-prefixed line of JSON metadata, the header row
// `t,s,x,y,vx,vy`, then one row per sample at 17 significant digits.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory_csv(std::istream& is);
Trajectory read_trajectory_csv(const std::filesystem::path& path);

struct RunConfig {
    double mass = 1.0;
    double k = 0.0;
    double nu = 0.0;
    State initial;
    IntegratorConfig integrator;
    std::optional<std::filesystem::path> trajectory_path;
    std::optional<std::filesystem::path> report_path;
    std::optional<std::filesystem::path> plot_path;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::filesystem::path& path);

std::string reports_to_json(const std::vector<VerificationReport>& reports);

struct Polyline {
    std::string label;
    std::string colour;
    std::vector<cplx> points;
};

/// Minimal SVG plot: axes through the origin and one polyline per series,
/// scaled to a common square viewport. Output depends only on the input.
std::string orbit_svg(const std::vector<Polyline>& series, const std::string& title);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bav::io
