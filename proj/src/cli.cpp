#include "steerkit/cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "steerkit/error.hpp"
#include "steerkit/geometry.hpp"
#include "steerkit/io.hpp"
#include "steerkit/steering.hpp"

namespace steerkit::cli {

namespace {

struct Options {
  std::string state = "werner";
  std::optional<double> p;
  std::string p_range;
  std::string triad = "default";
  int samples = 1000;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
  std::string out;
  double tol_gap = sdp::SolverOptions{}.gap_tol;
  double tol_feas = sdp::SolverOptions{}.feas_tol;
};

/// Raised for malformed flags; mapped to exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

double parse_number(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

bool is_file_state(const Options& o) { return o.state.rfind("file:", 0) == 0; }

TwoQubitState make_state(const Options& o, double p) {
  if (o.state == "werner") return werner(p);
  if (o.state == "horodecki") return horodecki(p);
  if (o.state == "bell2") return bell_diagonal_rank2(p);
  if (is_file_state(o)) {
    try {
      return io::load_state(o.state.substr(5));
    } catch (const InvalidArgument& e) {
      throw ConfigError(e.what());
    }
  }
  throw ConfigError("--state must be werner, horodecki, bell2 or file:<path> (got '" + o.state + "')");
}

double single_p(const Options& o) {
  if (is_file_state(o)) return std::nan("");
  if (!o.p) throw ConfigError("--p is required for state family '" + o.state + "'");
  if (!(*o.p >= 0.0 && *o.p <= 1.0)) throw ConfigError("--p must lie in [0, 1]");
  return *o.p;
}

std::vector<double> grid(const Options& o) {
  if (o.p_range.empty()) return {single_p(o)};
  if (is_file_state(o)) throw ConfigError("--p-range cannot be combined with a state file");
  if (o.p) throw ConfigError("--p and --p-range are mutually exclusive");
  const auto parts = split(o.p_range, ':');
  if (parts.size() != 3) throw ConfigError("--p-range expects a:b:n");
  const double a = parse_number(parts[0], "--p-range start");
  const double b = parse_number(parts[1], "--p-range end");
  const double n = parse_number(parts[2], "--p-range steps");
  if (n < 1 || n != std::floor(n)) throw ConfigError("--p-range steps must be a positive integer");
  if (!(0.0 <= a && a <= b && b <= 1.0)) throw ConfigError("--p-range needs 0 <= a <= b <= 1");
  const int steps = static_cast<int>(n);
  std::vector<double> ps;
  for (int i = 0; i < steps; ++i) ps.push_back(steps == 1 ? a : a + (b - a) * i / (steps - 1));
  return ps;
}

MeasurementSet make_triad(const Options& o) {
  if (o.triad == "default") return pauli_triad();
  Eigen::Matrix3d r;
  if (o.triad.rfind("zrot:", 0) == 0) {
    const double phi = parse_number(o.triad.substr(5), "--triad zrot angle");
    r = Eigen::AngleAxisd(phi, Eigen::Vector3d::UnitZ()).toRotationMatrix();
  } else if (o.triad.rfind("rotation:", 0) == 0) {
    const auto parts = split(o.triad.substr(9), ',');
    if (parts.size() != 9) throw ConfigError("--triad rotation: expects 9 comma-separated entries");
    for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = parse_number(parts[static_cast<std::size_t>(i)], "--triad entry");
  } else {
    throw ConfigError("--triad must be default, zrot:<phi> or rotation:<r11,...,r33>");
  }
  try {
    return mub_triad(r);
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

std::uint64_t resolve_seed(const Options& o) {
  if (o.seed) return *o.seed;
  if (const char* env = std::getenv("STEERKIT_SEED")) {
    const std::string s(env);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("STEERKIT_SEED must be a non-negative integer (got '" + s + "')");
    }
  }
  return 0;
}

sdp::SolverOptions solver_options(const Options& o) {
  if (!(o.tol_gap > 0.0) || !(o.tol_feas > 0.0)) throw ConfigError("tolerances must be positive");
  sdp::SolverOptions s;
  s.gap_tol = o.tol_gap;
  s.feas_tol = o.tol_feas;
  return s;
}

int checked_jobs(const Options& o) {
  if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");
  return o.jobs;
}

std::string format_g9(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);
  return buf;
}

// Writes to --out when given, otherwise to `out`.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ConfigError("cannot open output file '" + o.out + "'");
  f << text;
}

int cmd_bounds(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ps = grid(o);
  const auto measurements = make_triad(o);
  const auto solver = solver_options(o);
  const int jobs = checked_jobs(o);
  std::vector<TwoQubitState> states;
  for (double p : ps) states.push_back(make_state(o, p));

  const int n = static_cast<int>(ps.size());
  std::vector<std::string> rows(static_cast<std::size_t>(n));
  std::vector<std::string> failures(static_cast<std::size_t>(n));
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      const auto k = static_cast<std::size_t>(i);
      try {
        const auto b = bounds(assemblage_from_state(states[k], measurements), solver);
        rows[k] = format_g9(ps[k]) + "," + format_g9(b.s_min) + "," + format_g9(b.s_max) + "," +
                  format_g9(b.s_max_restricted) + "," + format_g9(b.t_rncsr) + "," + format_g9(b.t_csr) + "\n";
      } catch (const std::exception& e) {
        failures[k] = e.what();
      }
    }
  };
  const int threads = std::min(jobs, n);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < threads; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (int i = 0; i < n; ++i) {
    if (!failures[static_cast<std::size_t>(i)].empty()) {
      err << "steerkit bounds: row " << i << " (p = " << format_g9(ps[static_cast<std::size_t>(i)])
          << "): " << failures[static_cast<std::size_t>(i)] << "\n";
      return kSolver;
    }
  }
  std::string text = "p,s_min,s_max,s_max_r,t_rncsr,t_csr\n";
  for (const auto& r : rows) text += r;
  emit(o, out, text);
  return kOk;
}

int cmd_qse(const Options& o, std::ostream& out) {
  const auto e = qse(make_state(o, single_p(o)));
  emit(o, out, io::to_json(e).dump(2) + "\n");
  return kOk;
}

int cmd_lhs_surface(const Options& o, std::ostream& out) {
  if (o.samples < 1) throw ConfigError("--samples must be at least 1");
  const auto state = make_state(o, single_p(o));
  const auto seed = resolve_seed(o);
  SurfaceOptions so;
  so.solver = solver_options(o);
  so.jobs = checked_jobs(o);
  const Ellipsoid e = qse(state);
  const PointCloud cloud = lhs_surface(state, o.samples, seed, so);
  const VolumeWitness w = delta_v(e, cloud);
  if (!o.out.empty()) {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file '" + o.out + "'");
    io::write_point_cloud(f, cloud);
  }
  out << io::witness_summary(w, seed, o.samples).dump(2) << "\n";
  return kOk;
}

int cmd_assemblage(const Options& o, std::ostream& out) {
  const auto a = assemblage_from_state(make_state(o, single_p(o)), make_triad(o));
  emit(o, out, io::to_json(a).dump(2) + "\n");
  return kOk;
}

void add_state_flags(CLI::App* sub, Options& o) {
  sub->add_option("--state", o.state, "werner | horodecki | bell2 | file:<path>")->capture_default_str();
  sub->add_option("--p", o.p, "Mixing parameter in [0, 1]");
  sub->add_option("--out", o.out, "Output file");
  sub->add_option("--tol-gap", o.tol_gap, "SDP duality-gap tolerance")->capture_default_str();
  sub->add_option("--tol-feas", o.tol_feas, "SDP feasibility tolerance")->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Steering bounds, steering ellipsoids and LHS surfaces for two-qubit states"};
  app.name("steerkit");
  app.require_subcommand(1);

  auto* bounds_cmd = app.add_subcommand("bounds", "CSV of s_min, s_max, s_max_r, t_rncsr, t_csr over p");
  add_state_flags(bounds_cmd, o);
  bounds_cmd->add_option("--p-range", o.p_range, "Inclusive grid a:b:n");
  bounds_cmd->add_option("--triad", o.triad, "default | zrot:<phi> | rotation:<r11,...,r33>")->capture_default_str();
  bounds_cmd->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();

  auto* qse_cmd = app.add_subcommand("qse", "Quantum steering ellipsoid as JSON");
  add_state_flags(qse_cmd, o);

  auto* surface_cmd = app.add_subcommand("lhs-surface", "Sample the LHS surface; points to --out, summary JSON to stdout");
  add_state_flags(surface_cmd, o);
  surface_cmd->add_option("--samples", o.samples, "Number of random triads")->capture_default_str();
  surface_cmd->add_option("--seed", o.seed, "Rotation seed (fallback: STEERKIT_SEED, then 0)");
  surface_cmd->add_option("--jobs", o.jobs, "Worker threads")->capture_default_str();

  auto* assemblage_cmd = app.add_subcommand("assemblage", "Assemblage JSON for a state and triad");
  add_state_flags(assemblage_cmd, o);
  assemblage_cmd->add_option("--triad", o.triad, "default | zrot:<phi> | rotation:<r11,...,r33>")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*bounds_cmd) return cmd_bounds(o, out, err);
    if (*qse_cmd) return cmd_qse(o, out);
    if (*surface_cmd) return cmd_lhs_surface(o, out);
    if (*assemblage_cmd) return cmd_assemblage(o, out);
  } catch (const ConfigError& e) {
    err << "steerkit: " << e.what() << "\n";
    return kConfig;
  } catch (const DomainError& e) {
    err << "steerkit: " << e.what() << "\n";
    return kDomain;
  } catch (const SolverError& e) {
    err << "steerkit: " << e.what() << "\n";
    return kSolver;
  } catch (const InvalidArgument& e) {
    err << "steerkit: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    err << "steerkit: " << e.what() << "\n";
    return kSolver;
  }
  return kConfig;
}

}  // namespace steerkit::cli
