#pragma once

#include "twistfreq/hermite.hpp"
#include "twistfreq/report.hpp"
#include "twistfreq/types.hpp"

namespace tf::blt {

// --- windows ---------------------------------------------------------------

/// Indicator of the unit cell [0,1)^2.
SampledField chi_window(GridSpec grid);

/// Closed-form ground state (2 pi)^{-1/2} e^{-|z|^2/4}.
SampledField gaussian_window(GridSpec grid);

/// chi_Q plus amp times a smooth bump supported in the open unit cell
/// (bump normalized to sup 1).
SampledField perturbed_chi_window(GridSpec grid, double amp);

// --- cell-bump window (divergent conjugate-ladder energy) -------------------

/// Smooth compactly supported bump e^{-1/(t(1-t))} on (0,1), 0 elsewhere.
double bump1d(double t);
double bump1d_deriv(double t);
/// L2 norm of the 2-D bump (fine midpoint quadrature, cached).
double bump_norm();

/// g_M(z) = sum_{1<=k1,k2<=M} (k1 k2)^{-3/2} B(x-k1, y-k2) with B the 2-D
/// bump normalized to unit L2 norm.  Needs K >= M+1.
SampledField cell_bump_field(int m_terms, GridSpec grid);

/// Pointwise |Zbar g_M|^2 and |Z g_M|^2 from the closed-form derivatives.
double cell_bump_zbar_norm_sq(int m_terms, GridSpec grid);
double cell_bump_z_norm_sq(int m_terms, GridSpec grid);

// --- tent-train window (continuous, not in W(L^inf, l^1)) -------------------

struct TentRule {
  double a_offset = 0.4;  // plateau [k + a_offset, k + b_offset] before shrink
  double b_offset = 0.6;
  int first = 3;  // smallest tent index
};

struct Tent {
  int k = 0;
  double a = 0, b = 0;     // plateau ends
  double plateau = 0;      // 1 / (k log k)
  double ramp = 0;         // ramp width 1/k
};

/// Verdict of the two admissibility constraints for a plateau [a, b] at k:
/// [a - 1/k, b + 1/k] inside [k, k+1] and b^3 - a^3 < k.
bool tent_constraints_ok(double a, double b, int k);

/// Plateau for index k: the rule's offsets, shrunk symmetrically about
/// k + 1/2 until the constraints hold.
Tent make_tent(int k, const TentRule& rule = {});

/// f(z) = g(x) g(y) with g the tent train over first <= k <= k_max.
SampledField tent_field(int k_max, GridSpec grid, const TentRule& rule = {});

/// Exact piecewise-polynomial integrals of the 1-D tent train:
/// P = Int g^2, Q = Int g'^2, S = Int x^2 g^2  (Int x g g' = -P/2).
struct TentIntegrals {
  double p = 0, q = 0, s = 0;
};
TentIntegrals tent_integrals(int k_max, const TentRule& rule = {});

/// || Z f ||^2 and || Zbar f ||^2 of the tent product field, exactly:
/// 2 P (Q -/+ P/2 + S/4).
double tent_z_norm_sq(int k_max, const TentRule& rule = {});
double tent_zbar_norm_sq(int k_max, const TentRule& rule = {});

// --- divergence scans --------------------------------------------------------

enum class ScanKind {
  CellBumpConjLadder,  // quantity ||Zbar g_M||^2 vs (1/4) ||f|| H_M
  TentAmalgam,         // amalgam l1 partial vs (sum 1/(k log k))^2
};
ScanKind parse_scan_kind(const std::string& name);

struct DivergenceScan {
  ScanKind kind;
  std::vector<int> levels;
  std::vector<double> quantity;
  std::vector<double> comparator;
  std::vector<bool> pass;
  double fitted_slope = 0;  // quantity against log(level) resp. comparator

  bool all_pass() const;
  void write_csv(const std::string& path) const;
};

DivergenceScan divergence_scan(ScanKind kind, const std::vector<int>& levels,
                               GridSpec grid);

// --- uncertainty ---------------------------------------------------------------

/// Grid functional ||Z f||^2 + ||Zbar f||^2 against 2 ||f||^2.
AnalysisReport uncertainty_functional(const SampledField& f);

/// Adds the coefficient route sum (4n+2) |c_{m,n}|^2 and the equality-case
/// flag (all coefficient mass at n = 0 within 1e-6).
AnalysisReport uncertainty_functional(const hermite::PhiExpansion& e,
                                      const hermite::SpecialHermiteBasis& basis);

// --- weak obstruction report ---------------------------------------------------

/// Pairings of a window with a candidate dual: <g, gd>, <Zg, Z gd>,
/// <Zbar g, Zbar gd>, the commutator-identity residual
/// <g,gd> + (1/2)(<Zg,Zgd> - <Zbar g, Zbar gd>), the product of the four
/// ladder norms, and truncated expansion partial sums S_R for R = 1..range.
AnalysisReport weak_blt_report(const SampledField& g, const SampledField& gd,
                               int range);

/// Remark-style consequence checks for a window pair (coefficient identities
/// for the square-root calculus and the Riesz composition, plus the grid
/// quantities that cannot stay jointly bounded).
AnalysisReport remark56_checks(const SampledField& g, const SampledField& gd,
                               const hermite::SpecialHermiteBasis& basis);

// --- Beurling density ---------------------------------------------------------

struct LatticePointSet {
  int dim = 0;
  std::vector<double> pts;  // point-major: pts[i * dim + d]
  double min_gap = 0;
  double coverage_radius = 0;
  std::string description;

  std::size_t count() const { return pts.size() / dim; }
};

/// Points of prod_d (spacing_d Z) with every coordinate in [-radius, radius].
LatticePointSet product_lattice(const std::vector<double>& spacings,
                                double radius);

/// nu+-(r) via exhaustive translate scan (step = min_gap / 2) of the
/// half-open axis-aligned cube of volume r^d, using a d-dimensional
/// difference array.
AnalysisReport beurling_density(const LatticePointSet& points,
                                const std::vector<double>& radii);

}  // namespace tf::blt
