#include "tripartite/sweep.hpp"

#include "tripartite/entanglement_measures.hpp"
#include "tripartite/invariant_geometry.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace tripartite {

namespace {

using nlohmann::json;

constexpr const char* kCsvHeader =
    "lambda,arrangement,kind,value,witness_r0,witness_orientation,ground_energy,gap_flag,sites";

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view field) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw std::invalid_argument("not a number: '" + std::string(field) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string join_sites(const std::vector<int>& sites) {
  std::string s;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (i > 0) s += '-';
    s += std::to_string(sites[i] + 1);
  }
  return s;
}

struct PlannedArrangement {
  Arrangement arrangement;
  Quantity kind;
};

std::vector<PlannedArrangement> plan(const SweepConfig& config) {
  auto wants = [&](Quantity q) {
    return std::find(config.quantities.begin(), config.quantities.end(), q) != config.quantities.end();
  };
  std::vector<PlannedArrangement> planned;
  for (const auto& label : config.arrangements) {
    Arrangement a = resolve_arrangement(label, config.n_sites);
    if (a.sites.size() == 2 && wants(Quantity::Concurrence)) {
      planned.push_back({a, Quantity::Concurrence});
    } else if (a.sites.size() == 3 && wants(Quantity::Witness)) {
      planned.push_back({a, Quantity::Witness});
    } else {
      throw std::invalid_argument("arrangement '" + label + "' yields none of the requested quantities");
    }
  }
  return planned;
}

std::vector<SweepRecord> records_for_lambda(const SweepConfig& config, double lambda, int n_up,
                                            const std::vector<PlannedArrangement>& planned) {
  const XxzParams params{config.n_sites, lambda, config.coupling};
  SolverOptions options;
  options.seed = config.seed;
  const SectorState state = ground_state(params, n_up, options);

  std::vector<SweepRecord> records;
  records.reserve(planned.size());
  for (const auto& p : planned) {
    SweepRecord r;
    r.lambda = lambda;
    r.arrangement = p.arrangement.label;
    r.kind = p.kind;
    r.ground_energy = state.energy;
    r.gap_flag = state.degenerate;
    r.sites = join_sites(p.arrangement.sites);
    const DensityMatrix rho = reduced_density(state, p.arrangement.sites);
    if (p.kind == Quantity::Concurrence) {
      r.value = wootters_concurrence(rho);
      r.witness_r0 = std::numeric_limits<double>::quiet_NaN();
    } else {
      const Classification c = witness_minimize(rho);
      r.value = c.witness_value;
      r.witness_r0 = c.witness_argmin.r0;
      r.witness_orientation = c.witness_argmin.orientation;
    }
    records.push_back(std::move(r));
  }
  return records;
}

template <typename T>
T get_checked(const json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string to_string(Quantity q) { return q == Quantity::Concurrence ? "concurrence" : "witness"; }

Quantity quantity_from_string(std::string_view s) {
  if (s == "concurrence") return Quantity::Concurrence;
  if (s == "witness") return Quantity::Witness;
  throw std::invalid_argument("unknown quantity '" + std::string(s) + "'");
}

SweepConfig parse_sweep_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  static const char* kKnown[] = {"N", "n_up", "J", "lambdas", "arrangements", "quantities",
                                 "output", "seed", "threads"};
  for (const auto& [key, _] : j.items()) {
    if (std::find_if(std::begin(kKnown), std::end(kKnown), [&](const char* k) { return key == k; }) ==
        std::end(kKnown))
      throw std::invalid_argument("unknown config key '" + key + "'");
  }

  SweepConfig c;
  c.n_sites = get_checked<int>(j, "N");
  if (j.contains("n_up")) c.n_up = get_checked<int>(j, "n_up");
  if (j.contains("J")) c.coupling = get_checked<double>(j, "J");
  c.lambdas = j.contains("lambdas") ? get_checked<std::vector<double>>(j, "lambdas") : default_lambda_grid();
  c.arrangements = get_checked<std::vector<std::string>>(j, "arrangements");
  if (j.contains("quantities")) {
    c.quantities.clear();
    for (const auto& q : get_checked<std::vector<std::string>>(j, "quantities"))
      c.quantities.push_back(quantity_from_string(q));
  }
  if (j.contains("output")) c.output = get_checked<std::string>(j, "output");
  if (j.contains("seed")) c.seed = get_checked<std::uint64_t>(j, "seed");
  if (j.contains("threads")) c.threads = get_checked<unsigned>(j, "threads");

  if (c.n_sites < 2 || c.n_sites > 24) throw std::invalid_argument("config: N must be in [2, 24]");
  if (c.lambdas.empty()) throw std::invalid_argument("config: lambdas must not be empty");
  if (c.arrangements.empty()) throw std::invalid_argument("config: arrangements must not be empty");
  if (c.quantities.empty()) throw std::invalid_argument("config: quantities must not be empty");
  // Fail on bad arrangements here, long before any solve.
  plan(c);
  return c;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str());
}

std::vector<double> default_lambda_grid() {
  std::vector<double> grid;
  grid.reserve(120);
  // Ferromagnetic side.
  for (int i = 0; i < 20; ++i) grid.push_back(-1.2 + (0.19 * i) / 19.0);
  // -1 + delta with delta log-spaced on [1e-3, 1e-1].
  for (int i = 0; i < 40; ++i) grid.push_back(-1.0 + std::pow(10.0, -3.0 + 2.0 * i / 39.0));
  // Remainder of the critical phase and the Neel side.
  for (int i = 1; i <= 60; ++i) grid.push_back(-0.9 + 2.1 * i / 60.0);
  return grid;
}

double clamp_lambda(double lambda, bool* clamped) {
  const bool inside = std::abs(lambda + 1.0) < kLambdaClampWindow;
  if (clamped) *clamped = inside;
  if (!inside) return lambda;
  return lambda < -1.0 ? -1.0 - kLambdaClampWindow : -1.0 + kLambdaClampWindow;
}

int anchor_site(int n_sites) { return std::max(1, n_sites / 2 - 3); }

Arrangement resolve_arrangement(std::string_view label, int n_sites) {
  if (label.size() < 2 || label.size() > 3)
    throw std::invalid_argument("arrangement '" + std::string(label) + "' must name two or three sites");
  const int x = anchor_site(n_sites);
  Arrangement a{std::string(label), {}};
  for (char ch : label) {
    if (ch < '1' || ch > '9')
      throw std::invalid_argument("arrangement '" + std::string(label) + "' must use digits 1-9");
    const int site = x + (ch - '1') - 1;
    if (!a.sites.empty() && site <= a.sites.back())
      throw std::invalid_argument("arrangement '" + std::string(label) + "' must be strictly increasing");
    if (site >= n_sites)
      throw std::invalid_argument("arrangement '" + std::string(label) + "' does not fit a chain of " +
                                  std::to_string(n_sites) + " sites");
    a.sites.push_back(site);
  }
  return a;
}

bool SweepRecord::operator==(const SweepRecord& o) const {
  const bool r0_equal = (std::isnan(witness_r0) && std::isnan(o.witness_r0)) || witness_r0 == o.witness_r0;
  return lambda == o.lambda && arrangement == o.arrangement && kind == o.kind && value == o.value &&
         r0_equal && witness_orientation == o.witness_orientation && ground_energy == o.ground_energy &&
         gap_flag == o.gap_flag && sites == o.sites;
}

unsigned sweep_thread_count(const SweepConfig& config) {
  unsigned threads = config.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("TRIPWIT_THREADS")) threads = static_cast<unsigned>(std::atoi(env));
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  return threads;
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  const auto planned = plan(config);
  const int n_up = config.n_up < 0 ? config.n_sites / 2 : config.n_up;
  if (n_up > config.n_sites) throw std::invalid_argument("config: n_up exceeds N");

  std::vector<double> lambdas;
  for (double l : config.lambdas) {
    if (!std::isfinite(l)) throw std::invalid_argument("config: lambda values must be finite");
    lambdas.push_back(clamp_lambda(l));
  }
  std::sort(lambdas.begin(), lambdas.end());

  std::vector<std::vector<SweepRecord>> slots(lambdas.size());
  std::vector<std::exception_ptr> errors(lambdas.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < lambdas.size(); i = next++) {
      try {
        slots[i] = records_for_lambda(config, lambdas[i], n_up, planned);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const unsigned threads =
      static_cast<unsigned>(std::min<std::size_t>(sweep_thread_count(config), lambdas.size()));
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const std::exception& e) {
      throw SolverError("lambda = " + format_double(lambdas[i]) + ": " + e.what());
    }
  }

  std::vector<SweepRecord> records;
  for (auto& slot : slots)
    for (auto& r : slot) records.push_back(std::move(r));
  std::stable_sort(records.begin(), records.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.lambda, a.arrangement, a.kind) < std::tie(b.lambda, b.arrangement, b.kind);
  });
  return records;
}

void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kCsvHeader << '\n';
  for (const auto& r : records) {
    os << format_double(r.lambda) << ',' << r.arrangement << ',' << to_string(r.kind) << ','
       << format_double(r.value) << ',';
    if (r.kind == Quantity::Witness) os << format_double(r.witness_r0) << ',' << r.witness_orientation;
    else os << ',';
    os << ',' << format_double(r.ground_energy) << ',' << (r.gap_flag ? 1 : 0) << ',' << r.sites << '\n';
  }
}

std::vector<SweepRecord> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader) throw std::invalid_argument("CSV header mismatch");
  std::vector<SweepRecord> records;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::invalid_argument("CSV row has " + std::to_string(f.size()) + " fields");
    SweepRecord r;
    r.lambda = parse_double(f[0]);
    r.arrangement = std::string(f[1]);
    r.kind = quantity_from_string(f[2]);
    r.value = parse_double(f[3]);
    r.witness_r0 = f[4].empty() ? std::numeric_limits<double>::quiet_NaN() : parse_double(f[4]);
    r.witness_orientation = f[5].empty() ? 0 : static_cast<int>(parse_double(f[5]));
    r.ground_energy = parse_double(f[6]);
    if (f[7] != "0" && f[7] != "1") throw std::invalid_argument("gap_flag must be 0 or 1");
    r.gap_flag = f[7] == "1";
    r.sites = std::string(f[8]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace tripartite
