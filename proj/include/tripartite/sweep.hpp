#pragma once

// Lambda sweeps over site arrangements of the XXZ chain.
//
// Arrangements are written in compact relative notation: "12" is the pair
// (x, x+1), "135" the triple (x, x+2, x+4), where x = N/2 - 3 is the 1-based
// anchor site near the chain centre.

#include "tripartite/xxz_ed.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tripartite {

enum class Quantity { Concurrence, Witness };

std::string to_string(Quantity q);
Quantity quantity_from_string(std::string_view s);

struct SweepConfig {
  int n_sites = 16;
  int n_up = -1;  // -1 selects the J_z = 0 sector, N/2
  double coupling = 1.0;
  std::vector<double> lambdas;
  std::vector<std::string> arrangements;
  std::vector<Quantity> quantities{Quantity::Concurrence, Quantity::Witness};
  std::string output;  // empty: standard output
  std::uint64_t seed = 1;
  unsigned threads = 0;  // 0: TRIPWIT_THREADS or hardware concurrency
};

/// Parses the JSON config. Unknown keys, wrong types and invalid values throw
/// std::invalid_argument. A missing "lambdas" selects default_lambda_grid().
SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::string& path);

/// 120 points on [-1.2, 1.2], densified logarithmically towards -1 from above.
std::vector<double> default_lambda_grid();

inline constexpr double kLambdaClampWindow = 1e-3;

/// Moves lambda out of the degenerate window |lambda + 1| < 1e-3 to the window
/// edge on its own side (exactly -1 goes to -1 + 1e-3). Sets *clamped.
double clamp_lambda(double lambda, bool* clamped = nullptr);

/// 1-based anchor site x = N/2 - 3, floored at 1 for short chains.
int anchor_site(int n_sites);

struct Arrangement {
  std::string label;
  std::vector<int> sites;  // 0-based absolute, strictly increasing
};

/// Resolves a relative label. Throws if the label is malformed, not
/// increasing, or runs past the end of the chain.
Arrangement resolve_arrangement(std::string_view label, int n_sites);

struct SweepRecord {
  double lambda = 0.0;
  std::string arrangement;
  Quantity kind = Quantity::Concurrence;
  double value = 0.0;
  double witness_r0 = 0.0;       // NaN for concurrence records
  int witness_orientation = 0;
  double ground_energy = 0.0;
  bool gap_flag = false;
  std::string sites;  // 1-based absolute sites joined by '-'

  bool operator==(const SweepRecord& other) const;
};

/// One ground-state solve per lambda, then every arrangement. Records are
/// sorted by (lambda, arrangement, kind) and independent of the thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// Number of worker threads the sweep would use for `config`.
unsigned sweep_thread_count(const SweepConfig& config);

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records);
std::vector<SweepRecord> read_csv(std::istream& is);

}  // namespace tripartite
