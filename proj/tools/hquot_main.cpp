// Command-line front end: verification suites and plot-ready data emission
// (curvature tables, geodesic traces, orbit traces) as CSV or JSON lines.

#include "hquot/chart.hpp"
#include "hquot/geodesic.hpp"
#include "hquot/metric.hpp"
#include "hquot/verify.hpp"
#include "hquot/warped.hpp"

#include <CLI11.hpp>

#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using hquot::ChartPoint;
using hquot::Matrix;
using hquot::Vector;

constexpr int kExitPass = 0;
constexpr int kExitSuiteFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;

  double at(int i) const {
    if (steps == 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / (steps - 1);
  }
};

// "a:b:steps" (or "a:b", one point per 0.25 of span, at least 2).
Range parse_range(const std::string& text) {
  Range r;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 2 && parts.size() != 3) {
    throw CLI::ValidationError("range must look like a:b:steps");
  }
  r.lo = std::stod(parts[0]);
  r.hi = std::stod(parts[1]);
  if (parts.size() == 3) {
    r.steps = std::stoi(parts[2]);
  } else {
    r.steps = std::max(2, static_cast<int>(std::lround((r.hi - r.lo) / 0.25)) + 1);
  }
  if (r.steps < 1 || r.hi < r.lo) throw CLI::ValidationError("range is empty");
  return r;
}

std::vector<double> parse_floats(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class Emitter {
public:
  Emitter(const std::string& out_path, bool jsonl, std::vector<std::string> columns)
      : jsonl_(jsonl), columns_(std::move(columns)) {
    if (out_path != "-") {
      file_.open(out_path);
      if (!file_) throw CLI::ValidationError("cannot open output file " + out_path);
      sink_ = &file_;
    } else {
      sink_ = &std::cout;
    }
    if (!jsonl_) {
      for (std::size_t i = 0; i < columns_.size(); ++i) {
        *sink_ << (i ? "," : "") << columns_[i];
      }
      *sink_ << "\n";
    }
  }

  void row(const std::vector<double>& values) {
    if (jsonl_) {
      *sink_ << "{";
      for (std::size_t i = 0; i < values.size(); ++i) {
        *sink_ << (i ? "," : "") << "\"" << columns_[i] << "\":" << fmt(values[i]);
      }
      *sink_ << "}\n";
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        *sink_ << (i ? "," : "") << fmt(values[i]);
      }
      *sink_ << "\n";
    }
  }

private:
  bool jsonl_;
  std::vector<std::string> columns_;
  std::ofstream file_;
  std::ostream* sink_ = nullptr;
};

struct CommonOptions {
  int n = 2;
  std::string format = "csv";
  std::string out = "-";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--n", opts.n, "rank parameter (2..8)")->check(CLI::Range(2, 8));
  cmd->add_option("--format", opts.format, "output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", opts.out, "output path, or - for stdout");
}

std::vector<std::string> point_columns(int n, const std::string& prefix) {
  std::vector<std::string> cols;
  for (int i = 1; i < n; ++i) cols.push_back(prefix + "x" + std::to_string(i));
  cols.push_back(prefix + "y");
  return cols;
}

void append_point(std::vector<double>& row, const ChartPoint& p) {
  for (int i = 0; i < p.x.size(); ++i) row.push_back(p.x[i]);
  row.push_back(p.y);
}

bool use_color() {
  return ::isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
}

std::string verdict(bool pass) {
  if (!use_color()) return pass ? "PASS" : "FAIL";
  return pass ? "\033[32mPASS\033[0m" : "\033[31mFAIL\033[0m";
}

int run_verify(int n, std::uint64_t seed, const std::string& level_name) {
  const hquot::VerifyLevel level =
      level_name == "full" ? hquot::VerifyLevel::full : hquot::VerifyLevel::quick;
  std::cout << "n=" << n << " seed=" << seed << " level=" << level_name << "\n";
  const auto reports = hquot::run_verification(n, seed, level);
  int passed = 0;
  for (const auto& suite : reports) {
    std::cout << "SUITE " << suite.name << " cases=" << suite.cases() << " "
              << verdict(suite.passed()) << "\n";
    for (const auto& inv : suite.invariants) {
      std::cout << "  " << inv.name << " cases=" << inv.cases
                << " max_residual=" << fmt(inv.max_residual) << " tol=" << fmt(inv.tolerance)
                << " " << verdict(inv.passed()) << "\n";
    }
    std::cerr << "suite " << suite.name << ": " << suite.seconds << " s\n";
    if (suite.passed()) ++passed;
  }
  std::cout << "RESULT " << verdict(passed == static_cast<int>(reports.size())) << " ("
            << passed << "/" << reports.size() << " suites)\n";
  return passed == static_cast<int>(reports.size()) ? kExitPass : kExitSuiteFailure;
}

int run_curvature_table(const CommonOptions& opts, const Range& xr, const Range& yr,
                        const Range& thetar) {
  if (yr.lo <= 0.0) throw CLI::ValidationError("y range must stay positive");
  const hquot::QuotientMetricField field(opts.n);

  if (opts.n == 2) {
    Emitter emit(opts.out, opts.format == "jsonl",
                 {"x", "y", "kappa_closed", "kappa_numeric", "abs_delta"});
    Vector ex(2), ey(2);
    ex << 1.0, 0.0;
    ey << 0.0, 1.0;
    for (int i = 0; i < xr.steps; ++i) {
      for (int j = 0; j < yr.steps; ++j) {
        const double x = xr.at(i), y = yr.at(j);
        Vector px(1);
        px[0] = x;
        const ChartPoint p{px, y};
        const double closed = hquot::kappa2_closed(x, y);
        const double numeric = hquot::sectional_numeric(field, p, ex, ey);
        emit.row({x, y, closed, numeric, std::abs(closed - numeric)});
      }
    }
    return kExitPass;
  }

  // n >= 3: axis points, planes parametrized by the angle with the y-axis.
  if (yr.lo < 1.0) throw CLI::ValidationError("axis sweep requires y >= 1");
  Emitter emit(opts.out, opts.format == "jsonl",
               {"y", "theta", "kappa_closed", "kappa_numeric", "abs_delta"});
  const int n = opts.n;
  for (int j = 0; j < yr.steps; ++j) {
    for (int k = 0; k < thetar.steps; ++k) {
      const double y = yr.at(j), theta = thetar.at(k);
      const double cfac = std::sqrt(std::cosh(2.0 * std::log(y)));
      Vector u = Vector::Zero(n), v = Vector::Zero(n);
      u[n - 1] = std::cos(theta) * y;
      u[0] = std::sin(theta) * cfac;
      v[1] = cfac;
      ChartPoint p{Vector::Zero(n - 1), y};
      const double closed = hquot::kappa_n_closed(y, theta);
      const double numeric = hquot::sectional_numeric(field, p, u, v);
      emit.row({y, theta, closed, numeric, std::abs(closed - numeric)});
    }
  }
  return kExitPass;
}

int run_geodesic(const CommonOptions& opts, const std::string& start_text,
                 const std::string& dir_text, double T, double tol, int samples) {
  const int n = opts.n;
  std::vector<double> start = start_text.empty()
                                  ? std::vector<double>(n, 0.0)
                                  : parse_floats(start_text);
  if (start_text.empty()) start[n - 1] = 1.0;
  std::vector<double> dir =
      dir_text.empty() ? std::vector<double>(n, 0.0) : parse_floats(dir_text);
  if (dir_text.empty()) dir[n - 1] = 1.0;
  if (static_cast<int>(start.size()) != n || static_cast<int>(dir.size()) != n) {
    throw CLI::ValidationError("start and direction need n comma-separated values");
  }

  ChartPoint p0{Vector::Zero(n - 1), start[n - 1]};
  for (int i = 0; i < n - 1; ++i) p0.x[i] = start[i];
  if (!(p0.y > 0.0)) throw CLI::ValidationError("start point needs y > 0");
  Vector v0(n);
  for (int i = 0; i < n; ++i) v0[i] = dir[i];
  if (v0.norm() == 0.0) throw CLI::ValidationError("direction must be nonzero");

  const hquot::QuotientMetricField field(n);
  const Matrix G0 = field.metric(p0);
  v0 /= std::sqrt(v0.dot(G0 * v0));  // unit speed, so t is arc length

  const hquot::Trajectory traj = hquot::integrate(field, {p0, v0}, T, tol, samples);

  std::vector<std::string> cols = {"t"};
  for (const auto& c : point_columns(n, "")) cols.push_back(c);
  cols.push_back("speed");
  if (n == 2) cols.push_back("hyperbola_residual");

  // For n = 2, fit the conic family beta (x^2 - y^2 + 1) + gamma (2xy) = 0
  // traced by the geodesics through (0, 1); report the per-row residual.
  double beta = 0.0, gamma = 0.0;
  if (n == 2 && traj.samples.size() >= 2) {
    Matrix rows(static_cast<int>(traj.samples.size()), 2);
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
      const double x = traj.samples[i].position.x[0], y = traj.samples[i].position.y;
      rows(static_cast<int>(i), 0) = x * x - y * y + 1.0;
      rows(static_cast<int>(i), 1) = 2.0 * x * y;
    }
    Eigen::JacobiSVD<Matrix> svd(rows, Eigen::ComputeFullV);
    beta = svd.matrixV()(0, 1);
    gamma = svd.matrixV()(1, 1);
  }

  Emitter emit(opts.out, opts.format == "jsonl", cols);
  for (const auto& s : traj.samples) {
    std::vector<double> row = {s.t};
    append_point(row, s.position);
    row.push_back(s.speed);
    if (n == 2) {
      const double x = s.position.x[0], y = s.position.y;
      row.push_back(std::abs(beta * (x * x - y * y + 1.0) + gamma * (2.0 * x * y)));
    }
    emit.row(row);
  }
  std::cerr << "speed drift: " << fmt(traj.speed_drift) << "\n";
  if (!traj.complete) {
    std::cerr << "integration incomplete: " << traj.message << "\n";
    return kExitRuntime;
  }
  return kExitPass;
}

int run_orbit(const CommonOptions& opts, const std::string& point_text, int samples) {
  const int n = opts.n;
  std::vector<double> coords =
      point_text.empty() ? std::vector<double>(n, 0.0) : parse_floats(point_text);
  if (point_text.empty()) coords[n - 1] = 2.0;
  if (static_cast<int>(coords.size()) != n) {
    throw CLI::ValidationError("point needs n comma-separated values");
  }
  if (samples < 1) throw CLI::ValidationError("samples must be at least 1");

  ChartPoint p{Vector::Zero(n - 1), coords[n - 1]};
  for (int i = 0; i < n - 1; ++i) p.x[i] = coords[i];
  if (!(p.y > 0.0)) throw CLI::ValidationError("point needs y > 0");

  const hquot::SoAlgebra alg(n);
  const hquot::OrbitCircle circle = hquot::orbit_circle(p);
  std::cerr << "orbit sphere: center height " << fmt(circle.center_height) << ", radius "
            << fmt(circle.radius) << "\n";

  std::vector<std::string> cols = {"z"};
  for (const auto& c : point_columns(n, "r_")) cols.push_back(c);
  cols.push_back("circle_residual");
  for (const auto& c : point_columns(n, "l_")) cols.push_back(c);
  for (const auto& c : point_columns(n, "tau_r_")) cols.push_back(c);
  for (const auto& c : point_columns(n, "tau_l_")) cols.push_back(c);

  Emitter emit(opts.out, opts.format == "jsonl", cols);
  for (int s = 0; s < samples; ++s) {
    const double z = 2.0 * std::numbers::pi * s / samples;
    // The one-parameter subgroup rotating the (n-1, n) coordinate plane;
    // for n = 2 this is the full compact factor.
    const Matrix k = alg.exp_rotation(std::max(1, n - 1), n, -z);
    const ChartPoint rp = hquot::r_action(alg, k, p);
    const ChartPoint lp = hquot::l_action(alg, k, p);
    const double rr = std::sqrt(rp.x.squaredNorm() +
                                (rp.y - circle.center_height) * (rp.y - circle.center_height));
    std::vector<double> row = {z};
    append_point(row, rp);
    row.push_back(std::abs(rr - circle.radius));
    append_point(row, lp);
    append_point(row, hquot::tau(rp));
    append_point(row, hquot::tau(lp));
    emit.row(row);
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical geometry of the left quotient of the Lorentz group by its "
               "maximal compact subgroup"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  int vn = 2;
  std::uint64_t seed = 0;
  std::string level = "quick";
  verify->add_option("--n", vn, "rank parameter (2..8)")->check(CLI::Range(2, 8));
  verify->add_option("--seed", seed, "random seed (default 0)");
  verify->add_option("--level", level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}));

  // curvature-table
  auto* curv = app.add_subcommand("curvature-table",
                                  "closed-form vs numeric curvature over a grid");
  CommonOptions curv_opts;
  add_common(curv, curv_opts);
  std::string xr_text = "-5:5:41", yr_text = "0.2:10:50", theta_text;
  curv->add_option("--x", xr_text, "x range a:b:steps (n = 2)");
  curv->add_option("--y", yr_text, "y range a:b:steps");
  curv->add_option("--theta", theta_text, "plane angle range a:b:steps (n >= 3)");

  // geodesic
  auto* geo = app.add_subcommand("geodesic", "integrate a geodesic and trace it");
  CommonOptions geo_opts;
  add_common(geo, geo_opts);
  std::string start_text, dir_text;
  double T = 1.0, tol = 1e-10;
  int geo_samples = 33;
  geo->add_option("--start", start_text, "start point x1,..,y (default origin (0,1))");
  geo->add_option("--direction", dir_text,
                  "initial direction, normalized to unit speed (default d/dy)");
  geo->add_option("--T", T, "arc-length horizon")->check(CLI::NonNegativeNumber);
  geo->add_option("--tol", tol, "integration tolerance in [1e-12, 1e-6]");
  geo->add_option("--samples", geo_samples, "trace rows")->check(CLI::PositiveNumber);

  // orbit
  auto* orbit = app.add_subcommand("orbit", "trace the compact-action orbit of a point");
  CommonOptions orbit_opts;
  add_common(orbit, orbit_opts);
  std::string point_text;
  int orbit_samples = 360;
  orbit->add_option("--point", point_text, "orbit base point x1,..,y (default (0,2))");
  orbit->add_option("--samples", orbit_samples, "orbit rows")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(vn, seed, level);
    if (curv->parsed()) {
      const Range xr = parse_range(xr_text);
      const Range yr = parse_range(yr_text);
      const Range thetar = theta_text.empty()
                               ? Range{0.0, std::numbers::pi / 2.0, 19}
                               : parse_range(theta_text);
      return run_curvature_table(curv_opts, xr, yr, thetar);
    }
    if (geo->parsed()) {
      return run_geodesic(geo_opts, start_text, dir_text, T, tol, geo_samples);
    }
    if (orbit->parsed()) return run_orbit(orbit_opts, point_text, orbit_samples);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
