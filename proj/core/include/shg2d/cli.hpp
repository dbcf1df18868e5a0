#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "shg2d/analysis.hpp"
#include "shg2d/background.hpp"
#include "shg2d/geometry.hpp"
#include "shg2d/solver.hpp"

namespace shg2d::cli {

inline constexpr int kSchemaVersion = 1;

enum class Subcommand { Analytic, Solve, Compare, Scan, Symmetry };
enum class Format { Json, Csv };

std::optional<Subcommand> parse_subcommand(std::string_view name);
std::optional<Format> parse_format(std::string_view name);
const char* to_string(Subcommand c);

struct ScanBlock {
  analysis::Channel channel = analysis::Channel::Omega;
  std::vector<double> deltas;
  analysis::ScanPath path = analysis::ScanPath::Analytic;
};

struct RunConfig {
  double r0 = 1.0;
  double epsilon = 0.0;
  std::vector<geometry::Mode> modes;
  std::vector<background::Term> background;
  double eps_omega = 0.0;
  double eps_2omega = 0.0;
  double chi_perp = 0.0;
  double chi_par = 0.0;
  int grid_n = 256;
  int m_max = 12;
  std::vector<double> radii{10.0, 20.0, 40.0, 80.0};
  std::optional<ScanBlock> scan;
  std::optional<std::string> output;
  Format format = Format::Json;
  int q_max = 64;
  double rel_tol = 1e-7;

  geometry::StarBoundary boundary() const;
  background::HarmonicBackground harmonic_background() const;
  solver::PipelineConfig pipeline() const;
};

// Parses and validates a JSON config. Unknown keys and precondition
// violations throw ConfigError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);

// The report document for a subcommand. Keys sorted, floats shortest
// round-trip; identical inputs give identical bytes.
std::string render_report(Subcommand cmd, const RunConfig& cfg, unsigned threads);
// Scan table as CSV with header delta,coefficient,mode,cond_number.
std::string render_scan_csv(const RunConfig& cfg, unsigned threads);

struct RunRequest {
  Subcommand command = Subcommand::Solve;
  std::string config_path;
  std::optional<std::string> out;
  std::optional<int> grid_n;
  std::optional<Format> format;
  unsigned threads = 1;
};

// Exit status: 0 success, 2 config error, 3 numerical failure. Reports go to
// the output path when one is set, otherwise to out.
int run(const RunRequest& req, std::ostream& out, std::ostream& err);

// Thread cap from SHG2D_THREADS, falling back to the hardware count.
unsigned threads_from_env();

// Writes via a temporary sibling file and rename.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace shg2d::cli
