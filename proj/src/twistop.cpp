#include "twistfreq/twistop.hpp"

#include <cmath>

#include "twistfreq/field.hpp"

namespace tf::twistop {

namespace {

bool integral_shift(double s, int n, int* steps) {
  const double t = s * n;
  const int j = static_cast<int>(std::lround(t));
  if (std::abs(t - j) > 1e-9) return false;
  *steps = j;
  return true;
}

SampledField shifted(const SampledField& f, double m, double n) {
  const GridSpec& g = f.spec();
  const int msz = g.samples();
  SampledField out(g);
  int si = 0, sj = 0;
  if (integral_shift(m, g.resolution, &si) && integral_shift(n, g.resolution, &sj)) {
    for (int i = 0; i < msz; ++i)
      for (int j = 0; j < msz; ++j)
        out.at(i, j) = f.value_or_zero(i - si, j - sj);
    return out;
  }
  // bilinear interpolation for incommensurate shifts (documented accuracy loss)
  for (int i = 0; i < msz; ++i) {
    const double x = g.coord(i) - m;
    const double tx = (x + g.truncation) * g.resolution;
    const int ix = static_cast<int>(std::floor(tx));
    const double ax = tx - ix;
    for (int j = 0; j < msz; ++j) {
      const double y = g.coord(j) - n;
      const double ty = (y + g.truncation) * g.resolution;
      const int iy = static_cast<int>(std::floor(ty));
      const double ay = ty - iy;
      out.at(i, j) = (1 - ax) * (1 - ay) * f.value_or_zero(ix, iy) +
                     ax * (1 - ay) * f.value_or_zero(ix + 1, iy) +
                     (1 - ax) * ay * f.value_or_zero(ix, iy + 1) +
                     ax * ay * f.value_or_zero(ix + 1, iy + 1);
    }
  }
  return out;
}

}  // namespace

SampledField twisted_translate(const SampledField& f, double m, double n) {
  SampledField out = shifted(f, m, n);
  const GridSpec& g = f.spec();
  const int msz = g.samples();
  for (int i = 0; i < msz; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < msz; ++j)
      out.at(i, j) *= std::polar(1.0, kTwoPi * (n * x - m * g.coord(j)));
  }
  return out;
}

namespace {

SampledField ladder(const SampledField& f, double mult, bool conjugate) {
  SampledField fx = field::partial_derivative(f, field::Axis::X);
  SampledField fy = field::partial_derivative(f, field::Axis::Y);
  const GridSpec& g = f.spec();
  const int msz = g.samples();
  SampledField out(g);
  const cplx iu = conjugate ? cplx(0, 1) : cplx(0, -1);
  for (int i = 0; i < msz; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < msz; ++j) {
      const double y = g.coord(j);
      const cplx zc = conjugate ? -cplx(x, y) : cplx(x, -y);
      out.at(i, j) = fx.at(i, j) + iu * fy.at(i, j) + mult * zc * f.at(i, j);
    }
  }
  return out;
}

}  // namespace

SampledField z_apply(const SampledField& f) { return ladder(f, 0.5, false); }
SampledField zbar_apply(const SampledField& f) { return ladder(f, 0.5, true); }
SampledField z_apply_scaled(const SampledField& f) { return ladder(f, kTwoPi, false); }
SampledField zbar_apply_scaled(const SampledField& f) { return ladder(f, kTwoPi, true); }

SampledField l_apply(const SampledField& f) {
  using field::Axis;
  SampledField fx = field::partial_derivative(f, Axis::X);
  SampledField fy = field::partial_derivative(f, Axis::Y);
  SampledField fxx = field::partial_derivative(fx, Axis::X);
  SampledField fyy = field::partial_derivative(fy, Axis::Y);
  const GridSpec& g = f.spec();
  const int msz = g.samples();
  SampledField out(g);
  for (int i = 0; i < msz; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < msz; ++j) {
      const double y = g.coord(j);
      out.at(i, j) = -(fxx.at(i, j) + fyy.at(i, j)) +
                     0.25 * (x * x + y * y) * f.at(i, j) -
                     cplx(0, 1) * (x * fy.at(i, j) - y * fx.at(i, j));
    }
  }
  return out;
}

SampledField l_apply_composed(const SampledField& f) {
  SampledField a = z_apply(zbar_apply(f));
  SampledField b = zbar_apply(z_apply(f));
  return cplx(-0.5, 0) * (a + b);
}

ShiftTriplet shift_triplet(const SampledField& f, double e1, double e2) {
  const GridSpec& g = f.spec();
  const double abse = std::hypot(e1, e2);
  if (abse >= 0.5 * g.truncation)
    throw std::invalid_argument("shift_triplet: shift too large for the domain");
  const int msz = g.samples();
  ShiftTriplet out{SampledField(g), shifted(f, e1, e2), SampledField(g)};
  for (int i = 0; i < msz; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < msz; ++j) {
      const double y = g.coord(j);
      const cplx ph = std::polar(1.0, kTwoPi * (x * e2 - y * e1));
      out.modulated.at(i, j) = f.at(i, j) * std::conj(ph);
      out.twisted.at(i, j) = out.translated.at(i, j) * ph;
    }
  }
  return out;
}

int growth_index(double eps_abs) {
  if (!(eps_abs > 0)) throw std::invalid_argument("growth_index: need |eps| > 0");
  const double base = 1.0 + eps_abs;
  double p = 1.0;
  for (int n = 1; n <= 4096; ++n) {
    p *= base;
    if (1.0 / p < eps_abs) return n;
  }
  throw std::runtime_error("growth_index: no exponent below 4096");
}

SampledField twisted_convolve(const SampledField& f, const SampledField& g,
                              bool override_size) {
  if (!(f.spec() == g.spec()))
    throw grid_mismatch("twisted_convolve: grids differ");
  const GridSpec& spec = f.spec();
  const int msz = spec.samples();
  if (msz > 64 && !override_size)
    throw std::invalid_argument(
        "twisted_convolve: grid exceeds 64 samples per axis; pass "
        "override_size to run the O(M^4) sum anyway");
  const double h = spec.step();
  const double w = h * h;
  const int kn = spec.truncation * spec.resolution;  // index offset of x = 0
  SampledField out(spec);
  for (int i = 0; i < msz; ++i) {
    const double zx = spec.coord(i);
    for (int j = 0; j < msz; ++j) {
      const double zy = spec.coord(j);
      cplx acc{};
      for (int a = 0; a < msz; ++a) {
        const double wx = spec.coord(a);
        for (int b = 0; b < msz; ++b) {
          const cplx gv = g.at(a, b);
          if (gv == cplx{}) continue;
          // Im(z wbar) = y wx - x wy
          const cplx ph =
              std::polar(1.0, -kTwoPi * (zy * wx - zx * spec.coord(b)));
          acc += f.value_or_zero(i - a + kn, j - b + kn) * gv * ph;
        }
      }
      out.at(i, j) = acc * w;
    }
  }
  return out;
}

}  // namespace tf::twistop
