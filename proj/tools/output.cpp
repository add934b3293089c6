#include "output.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>

#include "combsim/error.hpp"
#include "combsim/io.hpp"

#ifndef COMBSIM_VERSION
#define COMBSIM_VERSION "unknown"
#endif

namespace combsim::cli {

std::string sha256_hex(std::string_view data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
    throw Error("sha256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xf];
  }
  return out;
}

OutputDir::OutputDir(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw Error("cannot create output directory " + root_.string() + ": " + ec.message());
}

void OutputDir::write(const std::string& name, const std::string& content) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error("cannot write " + path.string());
  artifacts_.emplace_back(name, sha256_hex(content));
}

void OutputDir::write_manifest(const std::string& command_line,
                               const nlohmann::ordered_json& parameters,
                               const numerics::ToleranceConfig& tolerances,
                               std::chrono::steady_clock::time_point started) const {
  nlohmann::ordered_json m;
  m["command_line"] = command_line;
  m["version"] = COMBSIM_VERSION;
  m["parameters"] = parameters;
  m["tolerances"] = {{"quad_abs", tolerances.quad_abs},
                     {"eig_rel", tolerances.eig_rel},
                     {"conv_rel", tolerances.conv_rel}};
  auto& files = m["artifacts"] = nlohmann::ordered_json::object();
  for (const auto& [name, hash] : artifacts_) files[name] = {{"sha256", hash}};
  m["wall_time_s"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::ofstream out(root_ / "manifest.json", std::ios::trunc);
  out << m.dump(2) << '\n';
  if (!out) throw Error("cannot write manifest in " + root_.string());
}

std::string series_plot_script(const PlotSpec& spec) {
  std::string s = R"(#!/usr/bin/env python3
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

with open("@CSV@") as fh:
    rows = list(csv.reader(fh))
header, data = rows[0], [[float(v) for v in r] for r in rows[1:]]
x = [r[0] for r in data]
fig, ax = plt.subplots(figsize=(6, 4))
styles = ["-", "--", ":", "-."]
for k, name in enumerate(header[1:], start=1):
    y = [r[k] for r in data]
    color = "tab:blue" if "damping" in name else "tab:red" if "diffusion" in name else "k"
    if @MARKERS@ and not name.endswith("_leading"):
        ax.plot(x, y, "o" if "damping" in name else "s", color=color, label=name, mfc="none")
    elif @MARKERS@:
        ax.plot(x, y, "-", color=color, label=name)
    else:
        ax.plot(x, y, styles[(k - 1) // 2 % len(styles)], color=color, label=name)
ax.set_xlabel("@XLABEL@")
ax.set_ylabel("@YLABEL@")
ax.set_title("@TITLE@")
ax.legend(fontsize=7)
fig.tight_layout()
fig.savefig("@PNG@", dpi=150)
)";
  auto replace = [&s](const std::string& key, const std::string& value) {
    for (std::size_t pos; (pos = s.find(key)) != std::string::npos;) s.replace(pos, key.size(), value);
  };
  replace("@CSV@", spec.csv);
  replace("@PNG@", spec.png);
  replace("@TITLE@", spec.title);
  replace("@XLABEL@", spec.xlabel);
  replace("@YLABEL@", spec.ylabel);
  replace("@MARKERS@", spec.markers ? "True" : "False");
  return s;
}

std::string wigner_plot_script(const std::string& stem, const std::string& title) {
  std::string s = R"(#!/usr/bin/env python3
import csv
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

def load(name):
    with open(name) as fh:
        rows = list(csv.reader(fh))
    return rows[0], np.array([[float(v) for v in r] for r in rows[1:]])

_, field = load("@STEM@.csv")
q = np.unique(field[:, 0])
p = np.unique(field[:, 1])
w = field[:, 2].reshape(len(q), len(p))
_, pos = load("@STEM@_position.csv")
_, mom = load("@STEM@_momentum.csv")

fig = plt.figure(figsize=(7, 6))
grid = fig.add_gridspec(2, 2, width_ratios=(4, 1), height_ratios=(1, 4))
ax = fig.add_subplot(grid[1, 0])
lim = np.abs(w).max()
ax.pcolormesh(q, p, w.T, cmap="RdBu_r", vmin=-lim, vmax=lim, shading="auto")
ax.set_xlabel("q")
ax.set_ylabel("p")
top = fig.add_subplot(grid[0, 0], sharex=ax)
top.plot(pos[:, 0], pos[:, 2], "k-")
top.set_ylabel("position marginal")
side = fig.add_subplot(grid[1, 1], sharey=ax)
side.plot(mom[:, 2], mom[:, 0], "k-")
side.set_xlabel("momentum marginal")
fig.suptitle("@TITLE@")
fig.tight_layout()
fig.savefig("@STEM@.png", dpi=150)
)";
  for (std::size_t pos; (pos = s.find("@STEM@")) != std::string::npos;) s.replace(pos, 6, stem);
  for (std::size_t pos; (pos = s.find("@TITLE@")) != std::string::npos;) s.replace(pos, 7, title);
  return s;
}

}  // namespace combsim::cli
