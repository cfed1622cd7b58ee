#pragma once

#include <filesystem>
#include <span>

#include "twistfreq/types.hpp"

namespace tf::field {

enum class Axis { X, Y };

/// Rectangle-rule inner product h^2 * sum f * conj(g), conjugate-linear in g.
cplx inner_product(const SampledField& f, const SampledField& g);
double norm2(const SampledField& f);   // L2 norm
double norm2sq(const SampledField& f);

/// 4th-order centered differences; 4th-order one-sided closures within two
/// samples of the boundary.  Boundary rows are excluded from the accuracy
/// guarantees.
SampledField partial_derivative(const SampledField& f, Axis axis);

/// Standard Wirtinger derivatives, d/dz = (dx - i dy)/2 and
/// d/dzbar = (dx + i dy)/2.
SampledField wirtinger(const SampledField& f, bool conjugate);

/// 1-D stencil used by the field and kernel machinery (same closures).
void derivative_1d(std::span<const cplx> in, std::span<cplx> out, double h);
void derivative_1d(std::span<const double> in, std::span<double> out, double h);

struct AmalgamNorm {
  double p = 0, q = 0;
  double value = 0;
  // (cell kx, cell ky, local L^p norm) for every unit cell of the domain
  struct Cell {
    int kx, ky;
    double norm;
  };
  std::vector<Cell> per_cell;
};

/// Wiener-amalgam norm: local L^p on unit cells, l^q across cells.
/// Use p or q = infinity for sup norms.
AmalgamNorm amalgam_norm(const SampledField& f, double p, double q);

// --- I/O ----------------------------------------------------------------
// Binary format "TGF1": magic "TGFIELD1", little-endian u32 N, u32 K, then
// M*M interleaved f64 (re, im), row-major in x.
void write_field(const SampledField& f, const std::filesystem::path& path);
SampledField read_field(const std::filesystem::path& path);

// CSV alternative: header "x,y,re,im", 17 significant digits.
void write_field_csv(const SampledField& f, const std::filesystem::path& path);
SampledField read_field_csv(const std::filesystem::path& path);

}  // namespace tf::field
