#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <vector>

#include "combsim/error.hpp"
#include "combsim/evolution.hpp"
#include "combsim/io.hpp"
#include "output.hpp"

namespace combsim::cli {

namespace {

struct Column {
  std::string name;
  std::vector<double> values;
};

std::string wide_csv(const std::vector<Column>& columns) {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c].name;
  out << '\n';
  const std::size_t rows = columns.empty() ? 0 : columns.front().values.size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out << (c ? "," : "") << io::format_double(columns[c].values[r]);
    }
    out << '\n';
  }
  return out.str();
}

std::string label(double spacing, double squeeze) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "d%.1f_r%.1f", spacing, squeeze);
  return buf;
}

nlohmann::ordered_json params_json(const CombParams& p) {
  return {{"teeth", p.teeth()}, {"spacing", p.spacing()}, {"squeeze", p.squeeze()}};
}

std::vector<ChannelKind> channels_for(const std::string& channel, bool both) {
  if (both) return {ChannelKind::damping, ChannelKind::diffusion};
  return {parse_channel(channel)};
}

Basis parse_basis(int basis) {
  if (basis != 0 && basis != 1) throw ParameterError("basis must be 0 or 1");
  return basis ? Basis::one : Basis::zero;
}

// Field CSV, numeric and closed-form marginals, plot script.
void write_wigner_bundle(OutputDir& dir, const std::string& stem, const CombParams& params,
                         Basis basis, std::optional<NoiseChannel> channel, std::size_t grid_q,
                         std::size_t grid_p, bool binary) {
  const double gamma_t = channel ? channel->gamma_t() : 0.0;
  const GridPolicy policy;
  PhaseGrid grid = auto_grid(params, gamma_t, policy);
  if (grid_q || grid_p) {
    Axis q = grid.q();
    Axis p = grid.p();
    if (grid_q) q.count = grid_q;
    if (grid_p) p.count = grid_p;
    grid = PhaseGrid(q, p);
    if (grid.size() > policy.max_bytes / sizeof(double)) {
      throw GridError("requested grid needs more than the memory cap");
    }
  }
  const CombWignerForm form =
      channel ? evolved_form(params, basis, *channel) : static_form(params, basis);
  WignerField field = sample(form, grid);
  field.basis = basis;
  if (channel) {
    field.channel = channel->kind();
    field.gamma_t = channel->gamma_t();
  }

  std::ostringstream csv;
  io::write_field_csv(field, csv);
  dir.write(stem + ".csv", csv.str());
  if (binary) {
    std::ostringstream bin;
    io::write_field_binary(field, bin);
    dir.write(stem + ".bin", bin.str());
  }

  const auto pos = position_marginal_numeric(field);
  const auto mom = momentum_marginal_numeric(field);
  Column q{"q", grid.q().samples()}, p{"p", grid.p().samples()};
  Column pos_closed{"closed_form", {}}, mom_closed{"closed_form", {}};
  for (double x : q.values) pos_closed.values.push_back(position_marginal(form, x));
  for (double x : p.values) mom_closed.values.push_back(momentum_marginal(form, x));
  dir.write(stem + "_position.csv", wide_csv({q, {"numeric", pos}, pos_closed}));
  dir.write(stem + "_momentum.csv", wide_csv({p, {"numeric", mom}, mom_closed}));

  std::string title = "N=" + std::to_string(params.teeth()) + ", " +
                      label(params.spacing(), params.squeeze()) + ", basis " +
                      std::to_string(basis_index(basis));
  if (channel) {
    title += ", " + std::string(to_string(channel->kind())) + " gt=" + io::format_double(gamma_t);
  }
  dir.write(stem + ".py", wigner_plot_script(stem, title));
}

const std::vector<std::pair<double, double>> paper_sets = {{4.0, 0.5}, {5.0, 0.3}, {7.0, -0.1}};
constexpr int paper_teeth = 8;

void figure_time_series(OutputDir& dir, const std::string& stem, Metric metric,
                        const std::vector<double>& times, const MetricOptions& options,
                        const std::string& ylabel) {
  std::vector<Column> cols{{"gamma_t", times}};
  for (const auto& [d, r] : paper_sets) {
    const CombParams params(paper_teeth, d, r);
    for (ChannelKind kind : {ChannelKind::damping, ChannelKind::diffusion}) {
      const auto series = metric_series(params, kind, metric, times, options);
      cols.push_back({label(d, r) + "_" + std::string(to_string(kind)), series.values});
    }
  }
  dir.write(stem + ".csv", wide_csv(cols));
  dir.write(stem + ".py", series_plot_script({stem + ".csv", stem + ".png",
                                              "N=8, damping (blue) vs diffusion (red)",
                                              "gamma t", ylabel, false}));
}

void figure_scan(OutputDir& dir, const std::string& stem, Metric metric,
                 const MetricOptions& options, const std::string& ylabel) {
  constexpr int n_max = 12;
  std::vector<Column> cols{{"teeth", {}}};
  for (int n = 1; n <= n_max; ++n) cols[0].values.push_back(n);
  std::vector<std::vector<double>> rates;
  for (ChannelKind kind : {ChannelKind::damping, ChannelKind::diffusion}) {
    const auto rows = scan_over_teeth(4.0, 0.5, kind, metric, 1, n_max, options);
    Column rate{std::string(to_string(kind)), {}}, lead{std::string(to_string(kind)) + "_leading", {}};
    for (const auto& row : rows) {
      rate.values.push_back(row.rate);
      lead.values.push_back(row.leading);
    }
    rates.push_back(rate.values);
    cols.push_back(rate);
    if (metric != Metric::distinguishability) cols.push_back(lead);
  }
  if (metric == Metric::distinguishability) {
    Column ratio{"ratio_diffusion_over_damping", {}};
    for (std::size_t i = 0; i < rates[0].size(); ++i) ratio.values.push_back(rates[1][i] / rates[0][i]);
    cols.push_back(ratio);
  }
  dir.write(stem + ".csv", wide_csv(cols));
  dir.write(stem + ".py", series_plot_script({stem + ".csv", stem + ".png",
                                              "(d, r) = (4.0, 0.5)", "N", ylabel, true}));
}

void reproduce_figure(int figure, OutputDir& dir, const Context& ctx) {
  const std::string stem = "fig" + std::to_string(figure);
  const MetricOptions options = ctx.metric_options();
  switch (figure) {
    case 1:
      write_wigner_bundle(dir, stem, CombParams(8, 4.0, 0.4), Basis::zero, std::nullopt, 0, 0, false);
      return;
    case 2:
      write_wigner_bundle(dir, stem, CombParams(8, 4.0, -0.1), Basis::zero, std::nullopt, 0, 0, false);
      return;
    case 3:
      write_wigner_bundle(dir, stem, CombParams(8, 4.0, 0.4), Basis::zero,
                          NoiseChannel(ChannelKind::damping, 0.2), 0, 0, false);
      return;
    case 4:
      write_wigner_bundle(dir, stem, CombParams(8, 4.0, 0.4), Basis::zero,
                          NoiseChannel(ChannelKind::diffusion, 0.2), 0, 0, false);
      return;
    case 5:
      figure_time_series(dir, stem, Metric::fidelity, time_samples(1.0, 101), options, "fidelity");
      return;
    case 6:
      figure_scan(dir, stem, Metric::fidelity, options, "-dF/d(gamma t) at t = 0");
      return;
    case 7:
      figure_time_series(dir, stem, Metric::orthogonality, time_samples(1.0, 101), options,
                         "orthogonality");
      return;
    case 8:
      figure_scan(dir, stem, Metric::orthogonality, options, "-dO/d(gamma t) / O at t = 0");
      return;
    case 9:
      figure_time_series(dir, stem, Metric::distinguishability, time_samples(1.0, 51), options,
                         "distinguishability");
      return;
    case 10:
      figure_scan(dir, stem, Metric::distinguishability, options, "-dD/d(gamma t) at t = 0");
      return;
    default:
      throw ParameterError("unknown figure " + std::to_string(figure) + " (1..10 or all)");
  }
}

}  // namespace

int run_wigner(const WignerArgs& args, const Context& ctx) {
  const CombParams params(args.teeth, args.spacing, args.squeeze);
  const Basis basis = parse_basis(args.basis);
  std::optional<NoiseChannel> channel;
  if (!args.channel.empty()) channel.emplace(parse_channel(args.channel), args.gamma_t);
  else if (args.gamma_t != 0.0) throw ParameterError("--gamma-t needs --channel");

  OutputDir dir(args.out);
  write_wigner_bundle(dir, "wigner", params, basis, channel, args.grid_q, args.grid_p, args.binary);
  auto p = params_json(params);
  p["basis"] = args.basis;
  p["channel"] = args.channel.empty() ? "none" : args.channel;
  p["gamma_t"] = args.gamma_t;
  dir.write_manifest(ctx.command_line, p, ctx.tolerances, ctx.started);
  std::printf("wrote %s\n", dir.root().c_str());
  return 0;
}

int run_metrics(const MetricsArgs& args, const Context& ctx) {
  const CombParams params(args.teeth, args.spacing, args.squeeze);
  const Metric metric = parse_metric(args.metric);
  const auto kinds = channels_for(args.channel, args.both_channels);
  const auto times = time_samples(args.t_max, args.t_steps);
  MetricOptions options = ctx.metric_options();
  options.coherence = args.incoherent ? Coherence::incoherent : Coherence::coherent;
  options.converge = args.converge;

  OutputDir dir(args.out);
  const std::string name(to_string(metric));
  std::vector<Column> cols{{"gamma_t", times}};
  for (ChannelKind kind : kinds) {
    const auto series = metric_series(params, kind, metric, times, options);
    cols.push_back({std::string(to_string(kind)), series.values});
    dir.write(name + "_" + std::string(to_string(kind)) + ".json",
              io::series_json(series, ctx.tolerances));
  }
  dir.write(name + ".csv", wide_csv(cols));
  dir.write(name + ".py", series_plot_script({name + ".csv", name + ".png",
                                              "N=" + std::to_string(args.teeth) + ", " +
                                                  label(args.spacing, args.squeeze),
                                              "gamma t", name, false}));
  auto p = params_json(params);
  p["metric"] = name;
  p["t_max"] = args.t_max;
  p["t_steps"] = args.t_steps;
  p["coherence"] = args.incoherent ? "incoherent" : "coherent";
  dir.write_manifest(ctx.command_line, p, ctx.tolerances, ctx.started);

  const bool show_error = metric == Metric::distinguishability;
  std::printf("%-10s", "gamma_t");
  for (ChannelKind kind : kinds) {
    std::printf(" %20s", std::string(to_string(kind)).c_str());
    if (show_error) std::printf(" %10s", "eps[%]");
  }
  std::printf("\n");
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::printf("%-10.4g", times[i]);
    for (std::size_t c = 1; c < cols.size(); ++c) {
      std::printf(" %20.12f", cols[c].values[i]);
      if (show_error) std::printf(" %10.4f", 100.0 * holevo_error(cols[c].values[i]));
    }
    std::printf("\n");
  }
  return 0;
}

int run_scan(const ScanArgs& args, const Context& ctx) {
  const Metric metric = parse_metric(args.metric);
  const auto kinds = channels_for(args.channel, args.both_channels);
  const MetricOptions options = ctx.metric_options();
  OutputDir dir(args.out);

  std::vector<Column> cols{{"teeth", {}}};
  for (int n = args.n_min; n <= args.n_max; ++n) cols[0].values.push_back(n);
  std::vector<std::vector<ScanRow>> tables;
  for (ChannelKind kind : kinds) {
    tables.push_back(scan_over_teeth(args.spacing, args.squeeze, kind, metric, args.n_min,
                                     args.n_max, options));
    Column rate{std::string(to_string(kind)), {}}, lead{std::string(to_string(kind)) + "_leading", {}};
    for (const auto& row : tables.back()) {
      rate.values.push_back(row.rate);
      lead.values.push_back(row.leading);
    }
    cols.push_back(rate);
    cols.push_back(lead);
  }
  const std::string name = "scan_" + std::string(to_string(metric));
  dir.write(name + ".csv", wide_csv(cols));
  dir.write(name + ".py", series_plot_script({name + ".csv", name + ".png",
                                              label(args.spacing, args.squeeze), "N",
                                              "initial rate", true}));
  nlohmann::ordered_json p = {{"spacing", args.spacing}, {"squeeze", args.squeeze},
                              {"metric", std::string(to_string(metric))},
                              {"n_min", args.n_min}, {"n_max", args.n_max}};
  dir.write_manifest(ctx.command_line, p, ctx.tolerances, ctx.started);

  std::printf("%-6s", "N");
  for (ChannelKind kind : kinds) {
    std::printf(" %18s %18s", std::string(to_string(kind)).c_str(), "leading");
  }
  if (kinds.size() == 2) std::printf(" %10s", "ratio");
  std::printf("\n");
  for (std::size_t i = 0; i < cols[0].values.size(); ++i) {
    std::printf("%-6d", args.n_min + static_cast<int>(i));
    for (const auto& table : tables) std::printf(" %18.10g %18.10g", table[i].rate, table[i].leading);
    if (tables.size() == 2) std::printf(" %10.4f", tables[1][i].rate / tables[0][i].rate);
    std::printf("\n");
  }
  return 0;
}

int run_reproduce(const std::string& figure, const std::string& out, const Context& ctx) {
  std::vector<int> figures;
  if (figure == "all") {
    for (int k = 1; k <= 10; ++k) figures.push_back(k);
  } else {
    int k = 0;
    try {
      std::size_t used = 0;
      k = std::stoi(figure, &used);
      if (used != figure.size()) k = 0;
    } catch (const std::exception&) {
      k = 0;
    }
    if (k < 1 || k > 10) throw ParameterError("unknown figure '" + figure + "' (1..10 or all)");
    figures.push_back(k);
  }
  OutputDir dir(out);
  for (int k : figures) {
    reproduce_figure(k, dir, ctx);
    std::printf("figure %d done\n", k);
  }
  dir.write_manifest(ctx.command_line, {{"figure", figure}}, ctx.tolerances, ctx.started);
  return 0;
}

}  // namespace combsim::cli
