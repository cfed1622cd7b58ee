#pragma once

#include <filesystem>

#include "twistfreq/report.hpp"
#include "twistfreq/types.hpp"

namespace tf::weyl {

/// Integral kernel K_f(xi, eta) = Int f(x, eta - xi) e^{2 pi i x (xi + eta)} dx
/// on a 1-D grid, row-major (xi index, eta index).  The matrix holds raw
/// kernel samples; operator composition carries one quadrature weight h1.
struct WeylKernel {
  GridSpec grid;  // 1-D: resolution N1, truncation K1
  std::vector<cplx> k;

  WeylKernel() = default;
  explicit WeylKernel(GridSpec g)
      : grid(g), k(static_cast<std::size_t>(g.samples()) * g.samples()) {}
  cplx& at(int a, int b) { return k[static_cast<std::size_t>(a) * grid.samples() + b]; }
  const cplx& at(int a, int b) const {
    return k[static_cast<std::size_t>(a) * grid.samples() + b];
  }
};

/// Build the kernel by rectangle rule over the x-grid of f.  Requires
/// 2 K1 <= K so eta - xi stays inside the y-range of f; eta - xi values off
/// the y-grid (possible only when N1 != N) are linearly interpolated.
WeylKernel weyl_kernel(const SampledField& f, GridSpec grid1d);

/// Hilbert-Schmidt pairing h1^2 sum K_f conj(K_g) and norm h1 ||K||_F.
cplx hs_inner(const WeylKernel& kf, const WeylKernel& kg);
double hs_norm(const WeylKernel& kf);

/// Dense matrix of c * x -/+ d/dx on the 1-D grid (stencil derivative plus
/// diagonal), acting on column vectors.
std::vector<cplx> ladder_matrix(GridSpec grid1d, double coef, bool adjoint);

/// Kernel of the operator product W o M for a local (matrix) operator M.
WeylKernel apply_matrix_right(const WeylKernel& kf, const std::vector<cplx>& m);

/// Field-side partners of the 1-D ladder matrices under the kernel map:
/// transform(partner(f))  ==  i * K_f * (x -/+ d/dx).  These carry the
/// representation scaling of the e^{4 pi i} convention; the textbook pairing
/// with Z = d/dz + zbar/2 does not close in this convention, which the check
/// below reports as a reference residual.
SampledField ladder_partner(const SampledField& f, bool adjoint);

/// Intertwining audit: relative HS residuals of
///   (a) transform(partner(f))        vs  i K_f (x - d/dx)   [and adjoint]
///   (b) transform(lattice ladder f)  vs  i K_f (-(4 pi x - d/dx)) [and adj.]
///   (c) transform(Z f)               vs  i K_f (x - d/dx)   [reference]
AnalysisReport intertwine_ladder_check(const SampledField& f, GridSpec grid1d);

/// Kernel covariance under twisted translation:
/// (xi, eta) -> e^{4 pi i (m xi + m n / 2)} K(xi + n, eta), zero-filled.
WeylKernel pi_action(int m, int n, const WeylKernel& kf);

/// HS distance between pi_action and the directly transformed translate,
/// relative to ||K_f||.
AnalysisReport pi_action_consistency(const SampledField& f, GridSpec grid1d,
                                     int m, int n);

/// Operator composition: h1-weighted matrix product.
WeylKernel compose(const WeylKernel& ka, const WeylKernel& kb);

// "TWK1": magic "TWEYLKR1", u32 N1, u32 K1, row-major f64 pairs.
void write_kernel(const WeylKernel& k, const std::filesystem::path& path);
WeylKernel read_kernel(const std::filesystem::path& path);

}  // namespace tf::weyl
