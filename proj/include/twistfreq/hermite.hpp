#pragma once

#include "twistfreq/types.hpp"

namespace tf::hermite {

inline constexpr int kMaxDegree = 60;

/// Normalized 1-D Hermite functions h_0..h_cap sampled on a 1-D grid,
/// built with the stable normalized recurrence
///   h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1}.
struct HermiteBasis1D {
  GridSpec grid;
  int cap = 0;
  std::vector<std::vector<double>> h;  // h[k][j]

  static HermiteBasis1D build(GridSpec grid, int cap);
  const std::vector<double>& at(int k) const { return h.at(k); }
};

std::vector<double> hermite_1d(int k, GridSpec grid);

enum class LadderKind {
  Create,      // A  = -d/dx + x,  A h_k = sqrt(2k+2) h_{k+1}
  Annihilate,  // A* =  d/dx + x,  A* h_k = sqrt(2k) h_{k-1}
};

std::vector<double> ladder_apply(LadderKind kind, const std::vector<double>& f,
                                 GridSpec grid);

/// phi_{m,n}(z) = (2 pi)^{-1/2} Int e^{i xi x} h_m(xi + y/2) h_n(xi - y/2) dxi
/// evaluated by rectangle rule on a xi-grid with resolution >= N and
/// truncation >= K + max(m,n)/2 + 6.
SampledField special_hermite(int m, int n, GridSpec grid);

/// Immutable cache of phi_{m,n} for m <= mmax, n <= nmax.
class SpecialHermiteBasis {
 public:
  SpecialHermiteBasis(GridSpec grid, int mmax, int nmax);
  const SampledField& phi(int m, int n) const;
  GridSpec grid() const { return grid_; }
  int mmax() const { return mmax_; }
  int nmax() const { return nmax_; }

 private:
  GridSpec grid_;
  int mmax_, nmax_;
  std::vector<SampledField> fields_;
};

struct PhiExpansion {
  int mmax = 0, nmax = 0;
  std::vector<cplx> c;  // c[m * (nmax+1) + n]

  PhiExpansion() = default;
  PhiExpansion(int mm, int nn)
      : mmax(mm), nmax(nn),
        c(static_cast<std::size_t>(mm + 1) * (nn + 1)) {}
  cplx& at(int m, int n) { return c[static_cast<std::size_t>(m) * (nmax + 1) + n]; }
  cplx at(int m, int n) const {
    return c[static_cast<std::size_t>(m) * (nmax + 1) + n];
  }
  double coeff_norm_sq() const {
    double s = 0;
    for (const auto& v : c) s += std::norm(v);
    return s;
  }
};

PhiExpansion expand(const SampledField& f, const SpecialHermiteBasis& basis);
SampledField synthesize(const PhiExpansion& e, const SpecialHermiteBasis& basis);

/// Spectral powers of the second-order operator: c_{m,n} -> (2n+1)^s c_{m,n}.
PhiExpansion l_power(const PhiExpansion& e, double s);

enum class RieszKind {
  Lower,  // R    : c_{m,n} -> i sqrt(2n)   (2n+1)^{-1/2} into slot (m, n-1)
  Raise,  // Rbar : c_{m,n} -> i sqrt(2n+2) (2n+1)^{-1/2} into slot (m, n+1)
};

/// Riesz-transform action on coefficients; contributions past the caps are
/// dropped, so compositions should keep the top row empty.
PhiExpansion riesz_apply(RieszKind kind, const PhiExpansion& e);

// Coefficient CSV: header "m,n,re,im".
void write_expansion_csv(const PhiExpansion& e, const std::string& path);

}  // namespace tf::hermite
