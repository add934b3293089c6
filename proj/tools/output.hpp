#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "combsim/numerics.hpp"

namespace combsim::cli {

std::string sha256_hex(std::string_view data);

/// Output directory that remembers what was written so the manifest can
/// list every artifact with its hash.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  void write(const std::string& name, const std::string& content);

  /// manifest.json: command line, parameters, tolerances, artifact hashes,
  /// wall time, library version. Written last and not hashed itself.
  void write_manifest(const std::string& command_line, const nlohmann::ordered_json& parameters,
                      const numerics::ToleranceConfig& tolerances,
                      std::chrono::steady_clock::time_point started) const;

 private:
  std::filesystem::path root_;
  std::vector<std::pair<std::string, std::string>> artifacts_;
};

struct PlotSpec {
  std::string csv;
  std::string png;
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool markers = false;  ///< scans: data as markers, *_leading columns as solid lines
};

/// matplotlib script plotting every column of a wide CSV against the first.
std::string series_plot_script(const PlotSpec& spec);
/// Three-panel Wigner / position marginal / momentum marginal script for
/// <stem>.csv, <stem>_position.csv and <stem>_momentum.csv.
std::string wigner_plot_script(const std::string& stem, const std::string& title);

}  // namespace combsim::cli
