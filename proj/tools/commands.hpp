#pragma once

#include <chrono>
#include <cstddef>
#include <string>

#include "combsim/metrics.hpp"
#include "combsim/numerics.hpp"

namespace combsim::cli {

struct Context {
  numerics::ToleranceConfig tolerances;
  std::string command_line;
  std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

  MetricOptions metric_options() const {
    MetricOptions o;
    o.tolerances = tolerances;
    return o;
  }
};

struct WignerArgs {
  int teeth = 8;
  double spacing = 4.0;
  double squeeze = 0.4;
  int basis = 0;
  std::string channel;  // empty: the initial state
  double gamma_t = 0.0;
  std::string out = "wigner_out";
  std::size_t grid_q = 0;  // 0: automatic
  std::size_t grid_p = 0;
  bool binary = false;
};

struct MetricsArgs {
  int teeth = 8;
  double spacing = 4.0;
  double squeeze = 0.5;
  std::string channel = "damping";
  bool both_channels = false;
  double t_max = 1.0;
  int t_steps = 51;
  std::string metric = "fidelity";
  std::string out = "metrics_out";
  bool incoherent = false;
  bool converge = false;
};

struct ScanArgs {
  double spacing = 4.0;
  double squeeze = 0.5;
  std::string channel = "damping";
  bool both_channels = false;
  std::string metric = "fidelity";
  int n_min = 1;
  int n_max = 12;
  std::string out = "scan_out";
};

int run_wigner(const WignerArgs& args, const Context& ctx);
int run_metrics(const MetricsArgs& args, const Context& ctx);
int run_scan(const ScanArgs& args, const Context& ctx);
/// figure: "1".."10" or "all".
int run_reproduce(const std::string& figure, const std::string& out, const Context& ctx);
/// suite: "paper-numbers" or "oracle". Returns 1 when any check fails.
int run_verify(const std::string& suite, const Context& ctx);

}  // namespace combsim::cli
