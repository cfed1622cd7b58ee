#include "twistfreq/hermite.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "twistfreq/field.hpp"

namespace tf::hermite {

namespace {
// pi^{-1/4}
const double kH0Norm = 0.75112554446494248;
}  // namespace

HermiteBasis1D HermiteBasis1D::build(GridSpec grid, int cap) {
  if (cap < 0 || cap > kMaxDegree)
    throw std::invalid_argument("hermite degree cap out of range");
  HermiteBasis1D b{grid, cap, {}};
  const int m = grid.samples();
  b.h.assign(cap + 1, std::vector<double>(m));
  for (int j = 0; j < m; ++j) {
    const double x = grid.coord(j);
    b.h[0][j] = kH0Norm * std::exp(-0.5 * x * x);
  }
  if (cap >= 1)
    for (int j = 0; j < m; ++j)
      b.h[1][j] = std::sqrt(2.0) * grid.coord(j) * b.h[0][j];
  for (int k = 1; k < cap; ++k) {
    const double a = std::sqrt(2.0 / (k + 1));
    const double c = std::sqrt(static_cast<double>(k) / (k + 1));
    for (int j = 0; j < m; ++j)
      b.h[k + 1][j] = a * grid.coord(j) * b.h[k][j] - c * b.h[k - 1][j];
  }
  return b;
}

std::vector<double> hermite_1d(int k, GridSpec grid) {
  if (k < 0 || k > kMaxDegree)
    throw std::invalid_argument("hermite_1d: degree out of range");
  return HermiteBasis1D::build(grid, k).h[k];
}

std::vector<double> ladder_apply(LadderKind kind, const std::vector<double>& f,
                                 GridSpec grid) {
  if (static_cast<int>(f.size()) != grid.samples())
    throw grid_mismatch("ladder_apply: sample count mismatch");
  std::vector<double> d(f.size());
  field::derivative_1d(f, d, grid.step());
  const double sgn = (kind == LadderKind::Create) ? -1.0 : 1.0;
  std::vector<double> out(f.size());
  for (std::size_t j = 0; j < f.size(); ++j)
    out[j] = sgn * d[j] + grid.coord(static_cast<int>(j)) * f[j];
  return out;
}

namespace {

GridSpec xi_grid_for(int m, int n, GridSpec grid) {
  const int margin = (std::max(m, n) + 1) / 2 + 6;
  return make_grid(grid.resolution, grid.truncation + margin);
}

}  // namespace

SampledField special_hermite(int m, int n, GridSpec grid) {
  if (m < 0 || n < 0 || m > kMaxDegree || n > kMaxDegree)
    throw std::invalid_argument("special_hermite: order out of range");
  SpecialHermiteBasis b(grid, m, n);
  return b.phi(m, n);
}

SpecialHermiteBasis::SpecialHermiteBasis(GridSpec grid, int mmax, int nmax)
    : grid_(grid), mmax_(mmax), nmax_(nmax) {
  if (mmax < 0 || nmax < 0 || mmax > kMaxDegree || nmax > kMaxDegree)
    throw std::invalid_argument("special hermite caps out of range");
  const GridSpec xg = xi_grid_for(mmax, nmax, grid);
  const int mxi = xg.samples();
  const double hxi = xg.step();
  const int m2 = grid.samples();

  // h_k(xi +- y/2) lives on the half-step grid, so the 1-D basis table is
  // built at resolution 2N and read with stride 2.
  const GridSpec hg =
      make_grid(2 * xg.resolution, xg.truncation + grid.truncation / 2 + 1);
  const HermiteBasis1D hb = HermiteBasis1D::build(hg, std::max(mmax, nmax));

  // phase[jx][t]: e^{i xi_t x_jx} reused for every (m, n, y)
  std::vector<cplx> phase(static_cast<std::size_t>(m2) * mxi);
  for (int jx = 0; jx < m2; ++jx) {
    const double x = grid.coord(jx);
    for (int t = 0; t < mxi; ++t)
      phase[static_cast<std::size_t>(jx) * mxi + t] =
          std::polar(1.0, xg.coord(t) * x);
  }

  const double scale = hxi / std::sqrt(kTwoPi);
  fields_.reserve(static_cast<std::size_t>(mmax + 1) * (nmax + 1));
  std::vector<double> prod(mxi);
  for (int m = 0; m <= mmax; ++m) {
    for (int n = 0; n <= nmax; ++n) {
      SampledField f(grid);
      for (int jy = 0; jy < m2; ++jy) {
        const double y = grid.coord(jy);
        // xi +- y/2 as indices into the oversized table
        const int off_p = hg.index_of(xg.coord(0) + 0.5 * y);
        const int off_m = hg.index_of(xg.coord(0) - 0.5 * y);
        if (off_p < 0 || off_m < 0)
          throw std::logic_error("special_hermite: xi grid misaligned");
        const auto& hm = hb.h[m];
        const auto& hn = hb.h[n];
        for (int t = 0; t < mxi; ++t)
          prod[t] = hm[off_p + 2 * t] * hn[off_m + 2 * t];
        for (int jx = 0; jx < m2; ++jx) {
          const cplx* ph = &phase[static_cast<std::size_t>(jx) * mxi];
          cplx acc{};
          for (int t = 0; t < mxi; ++t) acc += prod[t] * ph[t];
          f.at(jx, jy) = acc * scale;
        }
      }
      fields_.push_back(std::move(f));
    }
  }
}

const SampledField& SpecialHermiteBasis::phi(int m, int n) const {
  if (m < 0 || m > mmax_ || n < 0 || n > nmax_)
    throw std::invalid_argument("phi: order exceeds basis caps");
  return fields_[static_cast<std::size_t>(m) * (nmax_ + 1) + n];
}

PhiExpansion expand(const SampledField& f, const SpecialHermiteBasis& basis) {
  if (!(f.spec() == basis.grid())) throw grid_mismatch("expand: grids differ");
  PhiExpansion e(basis.mmax(), basis.nmax());
  for (int m = 0; m <= basis.mmax(); ++m)
    for (int n = 0; n <= basis.nmax(); ++n)
      e.at(m, n) = field::inner_product(f, basis.phi(m, n));
  return e;
}

SampledField synthesize(const PhiExpansion& e, const SpecialHermiteBasis& basis) {
  if (e.mmax > basis.mmax() || e.nmax > basis.nmax())
    throw std::invalid_argument("synthesize: expansion exceeds basis caps");
  SampledField out(basis.grid());
  for (int m = 0; m <= e.mmax; ++m) {
    for (int n = 0; n <= e.nmax; ++n) {
      const cplx c = e.at(m, n);
      if (c == cplx{}) continue;
      const auto& p = basis.phi(m, n).data();
      for (std::size_t i = 0; i < out.data().size(); ++i)
        out.data()[i] += c * p[i];
    }
  }
  return out;
}

PhiExpansion l_power(const PhiExpansion& e, double s) {
  PhiExpansion out = e;
  for (int m = 0; m <= e.mmax; ++m)
    for (int n = 0; n <= e.nmax; ++n)
      out.at(m, n) = e.at(m, n) * std::pow(2.0 * n + 1.0, s);
  return out;
}

PhiExpansion riesz_apply(RieszKind kind, const PhiExpansion& e) {
  PhiExpansion out(e.mmax, e.nmax);
  for (int m = 0; m <= e.mmax; ++m) {
    for (int n = 0; n <= e.nmax; ++n) {
      const cplx c = e.at(m, n);
      if (c == cplx{}) continue;
      const double inv = 1.0 / std::sqrt(2.0 * n + 1.0);
      if (kind == RieszKind::Lower) {
        if (n >= 1)
          out.at(m, n - 1) += cplx(0, std::sqrt(2.0 * n) * inv) * c;
      } else {
        if (n + 1 <= e.nmax)
          out.at(m, n + 1) += cplx(0, std::sqrt(2.0 * n + 2.0) * inv) * c;
      }
    }
  }
  return out;
}

void write_expansion_csv(const PhiExpansion& e, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << "m,n,re,im\n";
  char buf[96];
  for (int m = 0; m <= e.mmax; ++m)
    for (int n = 0; n <= e.nmax; ++n) {
      const cplx v = e.at(m, n);
      std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g\n", m, n, v.real(),
                    v.imag());
      os << buf;
    }
}

}  // namespace tf::hermite
