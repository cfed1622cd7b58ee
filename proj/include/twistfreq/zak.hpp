#pragma once

#include <filesystem>
#include <functional>

#include "twistfreq/report.hpp"
#include "twistfreq/types.hpp"

namespace tf::zak {

/// Samples of G(z, w) = sum_k f(z-k) e^{2 pi i Im(w kbar)} on the fundamental
/// domain Q x Q, z = (jx/nz, jy/nz), w = (lr/nw, ls/nw).  Values off Q x Q
/// follow from quasi-periodicity (see lookup).
struct ZakField {
  int nz = 0, nw = 0;
  int truncation = 0;  // K of the source field
  std::vector<cplx> v;

  ZakField() = default;
  ZakField(int nz_, int nw_, int k)
      : nz(nz_), nw(nw_), truncation(k),
        v(static_cast<std::size_t>(nz_) * nz_ * nw_ * nw_) {}

  cplx& at(int jx, int jy, int lr, int ls) {
    return v[((static_cast<std::size_t>(jx) * nz + jy) * nw + lr) * nw + ls];
  }
  const cplx& at(int jx, int jy, int lr, int ls) const {
    return v[((static_cast<std::size_t>(jx) * nz + jy) * nw + lr) * nw + ls];
  }
  /// L2(QxQ) norm by rectangle rule.
  double norm2() const;
};

/// Forward transform.  nw >= 2K keeps the w-characters alias-free; the k-sum
/// runs over the whole support of f, so the transform is exact.
ZakField zak_forward(const SampledField& f, int nw);

/// Inverse via w-character orthogonality; exact when nw >= 2K.
SampledField zak_inverse(const ZakField& g, GridSpec grid);

/// Quasi-periodic lookup at extended integer indices (any jx, jy; lr, ls).
cplx lookup(const ZakField& g, int jx, int jy, int lr, int ls);

/// Continuous evaluator: lattice sum with bilinear interpolation of f for
/// off-grid z; w enters only through exact phases.
cplx zak_eval(const SampledField& f, double zx, double zy, double wr, double ws);

/// Residuals of the four quasi-periodicity identities, each evaluated by an
/// independent shifted lattice sum.
AnalysisReport quasiperiodicity_check(const ZakField& g, const SampledField& f);

struct FrameBounds {
  double a_est = 0, b_est = 0;  // min/max of |G|^2 over samples
  double argmin[4] = {0, 0, 0, 0};
  struct Level {
    int nz, nw;
    double a_est, b_est;
  };
  std::vector<Level> history;
};

FrameBounds frame_bounds(const ZakField& g);

/// Refinement study sampled at cell midpoints, where the grid cannot sit on
/// the lattice-symmetric zeros; f must be sampled at a resolution divisible
/// by 2 * max(levels).
FrameBounds frame_refinement_study(const SampledField& f,
                                   const std::vector<int>& levels);

/// Window with Zak transform 1 / conj(G); refuses near-singular G.
SampledField dual_window(const ZakField& g, GridSpec grid, double guard = 1e-3);

/// Regularized variant conj(G) / (|G|^2 + delta^2); reported as regularized,
/// excluded from biorthogonality assertions.
SampledField dual_window_tikhonov(const ZakField& g, GridSpec grid, double delta);

/// Table of <gdual, T_{(m,n)} g> against delta_{m0} delta_{n0}.
AnalysisReport biorthogonality_check(const SampledField& g,
                                     const SampledField& gdual, int range);

// --- winding -------------------------------------------------------------

struct LoopPoint {
  double zx, zy, wr, ws;
};

struct WindingReport {
  std::vector<double> segment_phase;  // unwrapped increment per polyline edge
  double total = 0;
  double max_step = 0;
  double min_abs = 0;
  int samples_per_segment = 0;
  bool valid = false;
  double winding_number() const { return total / kTwoPi; }
};

using ZakEvaluator = std::function<cplx(double, double, double, double)>;

/// Unwrapped phase transport along a polyline in (z, w); refines the sampling
/// until every step is below pi/2 (up to max_doublings).
WindingReport winding(const ZakEvaluator& g, const std::vector<LoopPoint>& loop,
                      int initial_samples = 256, int max_doublings = 12,
                      double zero_guard = 1e-8);

/// The closed four-segment loop (0,1) -> (0,i) -> (i,i) -> (i,1) -> (0,1)
/// whose total phase is forced to -2 pi for any continuous zero-free G.
std::vector<LoopPoint> obstruction_loop();

/// Circle of radius rho in the (x, s) plane around (x0, s0), at fixed (y, r).
std::vector<LoopPoint> xs_circle(double x0, double s0, double y, double r,
                                 double rho, int segments = 64);

// --- smoothing and oscillation audits --------------------------------------

/// Twisted average G_r(z,w) = r^{-4} Int_{[0,r)^4} G(z-z', w-w')
/// e^{-2 pi i Im(z zbar' + w wbar')} dz' dw'; r must be a positive multiple
/// of both grid steps, r <= 1.
ZakField smooth(const ZakField& g, double r);

/// Lipschitz audit of G_r over sampled point pairs plus the four seam-shift
/// bounds |G_r(shifted) - phase * G_r| <= 2 pi sqrt(B) r.
AnalysisReport smooth_audit(const ZakField& g, double r, int pairs, unsigned seed);

/// Oscillation bounds for the twisted translation of G in each variable:
/// L2 over Q x Q against the global-norm bound, and L1 over shrinking boxes
/// Q[alpha0, r] against r^2 |eps| C_j(r) with the windowed-norm constants.
AnalysisReport oscillation_audit(const SampledField& f, double e1, double e2,
                                 const std::vector<double>& radii);

/// Residuals of the two first-order identities relating the transform of the
/// ladder images to z- and w-derivatives of G (spectral in w, one-sided at
/// the z seams).
AnalysisReport derivative_identity_check(const SampledField& f, int nw);

// --- I/O -------------------------------------------------------------------
// "TZK1": magic "TZAKFLD1", u32 N_z, u32 N_w, u32 K, row-major f64 pairs.
void write_zak(const ZakField& g, const std::filesystem::path& path);
ZakField read_zak(const std::filesystem::path& path);

}  // namespace tf::zak
