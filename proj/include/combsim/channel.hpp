#pragma once

#include <string_view>

namespace combsim {

enum class ChannelKind { damping, diffusion };

std::string_view to_string(ChannelKind kind);
/// Accepts "damping" or "diffusion"; throws ParameterError otherwise.
ChannelKind parse_channel(std::string_view name);

/// One of the two analytic noise channels at a dimensionless rate-time
/// product gamma_t >= 0.
class NoiseChannel {
 public:
  NoiseChannel(ChannelKind kind, double gamma_t);

  ChannelKind kind() const { return kind_; }
  double gamma_t() const { return gamma_t_; }

 private:
  ChannelKind kind_;
  double gamma_t_;
};

}  // namespace combsim
