#pragma once

// Parameter sweeps: a grid of points for one command, evaluated on a worker
// pool and persisted as JSON lines plus a CSV summary.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "fup/rational.hpp"
#include "fup/serialize.hpp"

namespace fup {

enum class SweepCommand { kBeta, kTheorem1, kTheorem2, kDirichlet, kBaker };

std::string to_string(SweepCommand c);
SweepCommand parse_sweep_command(const std::string& name);

struct SweepSpec {
  SweepCommand command = SweepCommand::kBeta;

  // Grid axes. Which ones are read depends on the command:
  //   beta       M x (alphabets | delta | Mdelta) x k
  //   theorem1   M x delta x k
  //   theorem2   M x Mdelta x k x alpha
  //   dirichlet  M x Mdelta x alpha
  //   baker      N x M x (alphabets | Mdelta)
  std::vector<std::int64_t> m_values;
  std::vector<std::vector<std::int64_t>> alphabets;
  std::vector<double> deltas;
  std::vector<std::int64_t> mdeltas;
  std::vector<int> k_values;
  std::vector<ExactRational> alphas;
  std::vector<std::int64_t> n_values;

  double tol = 1e-10;
  std::int64_t max_iterations = 100000;
  std::uint64_t seed = 0;
  std::int64_t grid_points = 100000;  // theorem1 Z grid
  std::int64_t n_max = 64;            // baker power schedule
  std::string cutoff = "bump";        // baker: bump | sharp
  double eps = 0.0;

  std::filesystem::path out_dir = ".";
  int threads = 1;
};

/// Reads a config object; unknown keys are rejected.
SweepSpec sweep_spec_from_json(const json& j);
/// Everything that affects results (not out_dir or threads).
json sweep_spec_to_json(const SweepSpec& spec);
/// 64-bit FNV-1a of the compact dump of sweep_spec_to_json, as 16 hex digits.
std::string spec_hash(const SweepSpec& spec);

struct SweepPoint {
  std::size_t index = 0;
  json params;
  std::string status;  // ok | skipped | failed
  std::string reason;
  json result;
  json invariants;     // name -> bool, only for status ok
  double seconds = 0.0;  // wall time; kept out of the written files
};

struct RunRecord {
  std::string spec_hash;
  std::string version;
  SweepCommand command = SweepCommand::kBeta;
  std::vector<SweepPoint> points;
  double seconds = 0.0;

  std::size_t count(const std::string& status) const;
  /// Points whose asserted invariants include a false entry, plus failed points.
  std::size_t invariant_failures() const;
};

/// Expands the grid in a fixed order (outermost axis first).
std::vector<json> expand_grid(const SweepSpec& spec);

/// Evaluates one grid point. Never throws for bad parameters; they come back
/// as skipped.
SweepPoint evaluate_point(const SweepSpec& spec, std::size_t index, const json& params);

/// Runs every grid point on `spec.threads` workers. Results are ordered by
/// grid index regardless of scheduling.
RunRecord run_sweep(const SweepSpec& spec);

/// Writes results.jsonl, summary.csv and run.json into spec.out_dir.
void write_run(const SweepSpec& spec, const RunRecord& record);

/// Fixed CSV header for a command.
std::vector<std::string> csv_columns(SweepCommand command);
std::string csv_row(SweepCommand command, const SweepPoint& point);

json point_to_json(const SweepPoint& point);
/// Loads results.jsonl back into a record (timing and hash are left empty).
RunRecord load_results(const std::filesystem::path& jsonl);

}  // namespace fup
