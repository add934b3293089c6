#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "combsim/evolution.hpp"
#include "combsim/metrics.hpp"
#include "combsim/numerics.hpp"
#include "combsim/phase_space.hpp"

// Binary layout shared by WignerField and DensityKernel (little endian):
//
//   offset  size  field
//   0       4     magic "CSWF"
//   4       4     u32 format version (1)
//   8       4     u32 payload kind (0 = Wigner field, 1 = density kernel)
//   12      4     u32 basis (0 | 1)
//   16      4     u32 channel (0 = none, 1 = damping, 2 = diffusion)
//   20      4     u32 coherence (0 = coherent, 1 = incoherent)
//   24      8     f64 gamma_t
//   32      8     u64 rows
//   40      8     u64 cols
//   48      32    f64 row_min, row_max, col_min, col_max
//   80      ...   rows * cols f64, row-major
//
// Wigner fields use rows = q, cols = p; kernels use rows = cols = x.

namespace combsim::io {

/// Shortest round-trip form with 17 significant digits.
std::string format_double(double value);

void write_field_csv(const WignerField& field, std::ostream& out);
void write_field_binary(const WignerField& field, std::ostream& out);
WignerField read_field_binary(std::istream& in);

void write_kernel_binary(const DensityKernel& kernel, std::ostream& out);
DensityKernel read_kernel_binary(std::istream& in);
void write_eigenvalues_csv(const std::vector<double>& eigenvalues, std::ostream& out);

/// Two columns: gamma_t,value.
void write_series_csv(const MetricSeries& series, std::ostream& out);
/// JSON document with the series and its full parameter provenance.
std::string series_json(const MetricSeries& series, const numerics::ToleranceConfig& tolerances);

}  // namespace combsim::io
