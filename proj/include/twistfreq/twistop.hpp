#pragma once

#include "twistfreq/types.hpp"

namespace tf::twistop {

/// Twisted translation T_{(m,n)} f(z) = e^{2 pi i (n x - m y)} f(x-m, y-n).
/// Grid-commensurate shifts (m*N, n*N integral) are exact index shifts with
/// zero fill; anything else falls back to bilinear interpolation.
SampledField twisted_translate(const SampledField& f, double m, double n);

/// Z = d/dz + zbar/2 and Zbar = d/dzbar - z/2, with the two-sided convention
/// d/dz = dx - i dy, d/dzbar = dx + i dy (the one under which [Z, Zbar] = -2
/// and the special Hermite ladder relations hold).
SampledField z_apply(const SampledField& f);
SampledField zbar_apply(const SampledField& f);

/// Ladder pair matched to the integer twisted-translation lattice
/// (multiplier 2 pi instead of 1/2); commutes with every T_{(m,n)}.
SampledField z_apply_scaled(const SampledField& f);
SampledField zbar_apply_scaled(const SampledField& f);

/// L f = -Laplacian f + |z|^2 f / 4 - i (x f_y - y f_x), both directly and as
/// the cross-check composition -(Z Zbar + Zbar Z)/2.
SampledField l_apply(const SampledField& f);
SampledField l_apply_composed(const SampledField& f);

/// The three comparison fields built from a complex shift eps = (e1, e2):
/// modulated  = f e^{2 pi i (y e1 - x e2)},
/// translated = f(z - eps),
/// twisted    = f(z - eps) e^{2 pi i (x e2 - y e1)}.
struct ShiftTriplet {
  SampledField modulated;
  SampledField translated;
  SampledField twisted;
};

ShiftTriplet shift_triplet(const SampledField& f, double e1, double e2);

/// Smallest positive integer N with (1 + |eps|)^{-N} < |eps|.
int growth_index(double eps_abs);

/// Twisted convolution (f x g)(z) = Int f(z-w) g(w) e^{-2 pi i Im(z wbar)} dw
/// by direct summation; grids above 64 samples per axis need override_size.
SampledField twisted_convolve(const SampledField& f, const SampledField& g,
                              bool override_size = false);

}  // namespace tf::twistop
