#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "combsim/error.hpp"
#include "commands.hpp"

using namespace combsim;

namespace {

void add_comb_flags(CLI::App* cmd, int& teeth, double& spacing, double& squeeze) {
  cmd->add_option("--teeth", teeth, "number of teeth N")->required();
  cmd->add_option("--spacing", spacing, "tooth spacing d")->required();
  cmd->add_option("--squeeze", squeeze, "squeezing r (negative anti-squeezes)")->required();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite squeezed-comb (GKP) qubits under damping and diffusion"};
  app.require_subcommand(1);
  std::string config;
  app.add_option("--config", config, "tolerance file (key = value: quad_abs, eig_rel, conv_rel)");

  cli::WignerArgs w;
  auto* wigner = app.add_subcommand("wigner", "Wigner function and marginals");
  add_comb_flags(wigner, w.teeth, w.spacing, w.squeeze);
  wigner->add_option("--basis", w.basis, "logical basis state 0 or 1")->required();
  wigner->add_option("--channel", w.channel, "damping | diffusion");
  wigner->add_option("--gamma-t", w.gamma_t, "evolution time gamma t");
  wigner->add_option("--out", w.out, "output directory");
  wigner->add_option("--grid-q", w.grid_q, "q samples (default automatic)");
  wigner->add_option("--grid-p", w.grid_p, "p samples (default automatic)");
  wigner->add_flag("--binary", w.binary, "also write the binary field");

  cli::MetricsArgs m;
  auto* metrics = app.add_subcommand("metrics", "figure-of-merit time series");
  add_comb_flags(metrics, m.teeth, m.spacing, m.squeeze);
  metrics->add_option("--channel", m.channel, "damping | diffusion");
  metrics->add_flag("--both-channels", m.both_channels, "overlay damping and diffusion");
  metrics->add_option("--t-max", m.t_max, "largest gamma t");
  metrics->add_option("--t-steps", m.t_steps, "number of time samples");
  metrics->add_option("--metric", m.metric, "fidelity | orthogonality | distinguishability | error");
  metrics->add_option("--out", m.out, "output directory");
  metrics->add_flag("--incoherent", m.incoherent, "tooth mixtures instead of coherent combs");
  metrics->add_flag("--converge", m.converge, "refine distinguishability until converged");

  cli::ScanArgs s;
  auto* scan = app.add_subcommand("scan", "initial rates versus tooth number");
  scan->add_option("--spacing", s.spacing, "tooth spacing d")->required();
  scan->add_option("--squeeze", s.squeeze, "squeezing r")->required();
  scan->add_option("--channel", s.channel, "damping | diffusion");
  scan->add_flag("--both-channels", s.both_channels, "both channels side by side");
  scan->add_option("--metric", s.metric, "fidelity | orthogonality | distinguishability | error");
  scan->add_option("--n-min", s.n_min, "smallest N");
  scan->add_option("--n-max", s.n_max, "largest N");
  scan->add_option("--out", s.out, "output directory");

  std::string figure;
  std::string figure_out = "figures";
  auto* reproduce = app.add_subcommand("reproduce", "data and plot scripts for paper figures");
  reproduce->add_option("--figure", figure, "1..10 or all")->required();
  reproduce->add_option("--out", figure_out, "output directory");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "pass/fail table against expected values");
  verify->add_option("--suite", suite, "paper-numbers | oracle")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cli::Context ctx;
    for (int i = 0; i < argc; ++i) ctx.command_line += (i ? " " : "") + std::string(argv[i]);
    if (!config.empty()) ctx.tolerances = numerics::load_tolerances(config);

    if (*wigner) return cli::run_wigner(w, ctx);
    if (*metrics) return cli::run_metrics(m, ctx);
    if (*scan) return cli::run_scan(s, ctx);
    if (*reproduce) return cli::run_reproduce(figure, figure_out, ctx);
    if (*verify) return cli::run_verify(suite, ctx);
  } catch (const ParameterError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const GridError& e) {
    std::fprintf(stderr, "grid error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numeric failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
