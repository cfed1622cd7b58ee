#include "twistfreq/zak.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "twistfreq/field.hpp"
#include "twistfreq/rng.hpp"
#include "twistfreq/twistop.hpp"

namespace tf::zak {

double ZakField::norm2() const {
  double acc = 0;
  for (const auto& x : v) acc += std::norm(x);
  return std::sqrt(acc / (static_cast<double>(nz) * nz * nw * nw));
}

ZakField zak_forward(const SampledField& f, int nw) {
  const GridSpec& g = f.spec();
  const int n = g.resolution;
  const int k = g.truncation;
  if (nw < 2 * k)
    throw std::invalid_argument(
        "zak_forward: w-resolution below 2K aliases the lattice characters");
  ZakField out(n, nw, k);
  std::vector<cplx> pair(static_cast<std::size_t>(nw) * nw);
  for (int k1 = -k + 1; k1 <= k; ++k1) {
    for (int k2 = -k + 1; k2 <= k; ++k2) {
      // e^{2 pi i (s k1 - r k2)}
      for (int lr = 0; lr < nw; ++lr) {
        const double r = static_cast<double>(lr) / nw;
        for (int ls = 0; ls < nw; ++ls) {
          const double s = static_cast<double>(ls) / nw;
          pair[static_cast<std::size_t>(lr) * nw + ls] =
              std::polar(1.0, kTwoPi * (s * k1 - r * k2));
        }
      }
      const int ox = (k - k1) * n;
      const int oy = (k - k2) * n;
      for (int jx = 0; jx < n; ++jx) {
        for (int jy = 0; jy < n; ++jy) {
          const cplx fv = f.at(ox + jx, oy + jy);
          if (fv == cplx{}) continue;
          cplx* line = &out.at(jx, jy, 0, 0);
          for (int t = 0; t < nw * nw; ++t) line[t] += fv * pair[t];
        }
      }
    }
  }
  return out;
}

SampledField zak_inverse(const ZakField& g, GridSpec grid) {
  if (grid.resolution != g.nz || grid.truncation != g.truncation)
    throw grid_mismatch("zak_inverse: grid does not match the transform");
  const int n = g.nz, nw = g.nw, k = g.truncation;
  SampledField out(grid);
  const double inv = 1.0 / (static_cast<double>(nw) * nw);
  std::vector<cplx> pair(static_cast<std::size_t>(nw) * nw);
  for (int k1 = -k + 1; k1 <= k; ++k1) {
    for (int k2 = -k + 1; k2 <= k; ++k2) {
      for (int lr = 0; lr < nw; ++lr) {
        const double r = static_cast<double>(lr) / nw;
        for (int ls = 0; ls < nw; ++ls) {
          const double s = static_cast<double>(ls) / nw;
          pair[static_cast<std::size_t>(lr) * nw + ls] =
              std::polar(1.0, -kTwoPi * (s * k1 - r * k2));
        }
      }
      const int ox = (k - k1) * n;
      const int oy = (k - k2) * n;
      for (int jx = 0; jx < n; ++jx) {
        for (int jy = 0; jy < n; ++jy) {
          const cplx* line = &g.at(jx, jy, 0, 0);
          cplx acc{};
          for (int t = 0; t < nw * nw; ++t) acc += line[t] * pair[t];
          out.at(ox + jx, oy + jy) = acc * inv;
        }
      }
    }
  }
  return out;
}

cplx lookup(const ZakField& g, int jx, int jy, int lr, int ls) {
  const int nz = g.nz, nw = g.nw;
  auto fdiv = [](int a, int n) {
    int q = a / n;
    if (a % n < 0) --q;
    return q;
  };
  const int qlr = fdiv(lr, nw), qls = fdiv(ls, nw);
  lr -= qlr * nw;
  ls -= qls * nw;
  const int qx = fdiv(jx, nz), qy = fdiv(jy, nz);
  jx -= qx * nz;
  jy -= qy * nz;
  const double r = static_cast<double>(lr) / nw;
  const double s = static_cast<double>(ls) / nw;
  // G(z+1,w) = e^{2 pi i s} G,  G(z+i,w) = e^{-2 pi i r} G, w-periodic.
  const cplx ph = std::polar(1.0, kTwoPi * (s * qx - r * qy));
  return ph * g.at(jx, jy, lr, ls);
}

namespace {

cplx bilinear(const SampledField& f, double x, double y) {
  const GridSpec& g = f.spec();
  const double tx = (x + g.truncation) * g.resolution;
  const double ty = (y + g.truncation) * g.resolution;
  const double fx = std::floor(tx), fy = std::floor(ty);
  const int ix = static_cast<int>(fx), iy = static_cast<int>(fy);
  const double ax = tx - fx, ay = ty - fy;
  if (ax < 1e-12 && ay < 1e-12) return f.value_or_zero(ix, iy);
  return (1 - ax) * (1 - ay) * f.value_or_zero(ix, iy) +
         ax * (1 - ay) * f.value_or_zero(ix + 1, iy) +
         (1 - ax) * ay * f.value_or_zero(ix, iy + 1) +
         ax * ay * f.value_or_zero(ix + 1, iy + 1);
}

}  // namespace

cplx zak_eval(const SampledField& f, double zx, double zy, double wr, double ws) {
  const int k = f.spec().truncation;
  const int cx = static_cast<int>(std::floor(zx));
  const int cy = static_cast<int>(std::floor(zy));
  cplx acc{};
  for (int k1 = cx - k; k1 <= cx + k + 1; ++k1) {
    for (int k2 = cy - k; k2 <= cy + k + 1; ++k2) {
      const cplx fv = bilinear(f, zx - k1, zy - k2);
      if (fv == cplx{}) continue;
      acc += fv * std::polar(1.0, kTwoPi * (ws * k1 - wr * k2));
    }
  }
  return acc;
}

AnalysisReport quasiperiodicity_check(const ZakField& g, const SampledField& f) {
  if (f.spec().resolution != g.nz || f.spec().truncation != g.truncation)
    throw grid_mismatch("quasiperiodicity_check: field does not match transform");
  const int n = g.nz, nw = g.nw;
  double rz1 = 0, rzi = 0, rw1 = 0, rwi = 0;
  for (int jx = 0; jx < n; ++jx) {
    const double x = static_cast<double>(jx) / n;
    for (int jy = 0; jy < n; ++jy) {
      const double y = static_cast<double>(jy) / n;
      for (int lr = 0; lr < nw; ++lr) {
        const double r = static_cast<double>(lr) / nw;
        for (int ls = 0; ls < nw; ++ls) {
          const double s = static_cast<double>(ls) / nw;
          const cplx base = g.at(jx, jy, lr, ls);
          const cplx a = zak_eval(f, x + 1.0, y, r, s) -
                         std::polar(1.0, kTwoPi * s) * base;
          const cplx b = zak_eval(f, x, y + 1.0, r, s) -
                         std::polar(1.0, -kTwoPi * r) * base;
          const cplx c = zak_eval(f, x, y, r + 1.0, s) - base;
          const cplx d = zak_eval(f, x, y, r, s + 1.0) - base;
          rz1 = std::max(rz1, std::abs(a));
          rzi = std::max(rzi, std::abs(b));
          rw1 = std::max(rw1, std::abs(c));
          rwi = std::max(rwi, std::abs(d));
        }
      }
    }
  }
  AnalysisReport rep;
  rep.set("residual_z_plus_1", rz1);
  rep.set("residual_z_plus_i", rzi);
  rep.set("residual_w_plus_1", rw1);
  rep.set("residual_w_plus_i", rwi);
  rep.set("residual_max", std::max(std::max(rz1, rzi), std::max(rw1, rwi)));
  return rep;
}

FrameBounds frame_bounds(const ZakField& g) {
  FrameBounds fb;
  fb.a_est = std::numeric_limits<double>::infinity();
  const int n = g.nz, nw = g.nw;
  for (int jx = 0; jx < n; ++jx)
    for (int jy = 0; jy < n; ++jy)
      for (int lr = 0; lr < nw; ++lr)
        for (int ls = 0; ls < nw; ++ls) {
          const double m = std::norm(g.at(jx, jy, lr, ls));
          if (m < fb.a_est) {
            fb.a_est = m;
            fb.argmin[0] = static_cast<double>(jx) / n;
            fb.argmin[1] = static_cast<double>(jy) / n;
            fb.argmin[2] = static_cast<double>(lr) / nw;
            fb.argmin[3] = static_cast<double>(ls) / nw;
          }
          fb.b_est = std::max(fb.b_est, m);
        }
  fb.history.push_back({n, nw, fb.a_est, fb.b_est});
  return fb;
}

FrameBounds frame_refinement_study(const SampledField& f,
                                   const std::vector<int>& levels) {
  FrameBounds fb;
  const int k = f.spec().truncation;
  for (int nz : levels) {
    if (f.spec().resolution % (2 * nz) != 0)
      throw std::invalid_argument(
          "frame_refinement_study: field resolution must be divisible by "
          "2 * level so midpoint samples are exact");
    const int nw = std::max(2 * k, nz);
    double a = std::numeric_limits<double>::infinity(), b = 0;
    double arg[4] = {0, 0, 0, 0};
    for (int jx = 0; jx < nz; ++jx) {
      const double x = (jx + 0.5) / nz;
      for (int jy = 0; jy < nz; ++jy) {
        const double y = (jy + 0.5) / nz;
        for (int lr = 0; lr < nw; ++lr) {
          const double r = (lr + 0.5) / nw;
          for (int ls = 0; ls < nw; ++ls) {
            const double s = (ls + 0.5) / nw;
            const double m = std::norm(zak_eval(f, x, y, r, s));
            if (m < a) {
              a = m;
              arg[0] = x; arg[1] = y; arg[2] = r; arg[3] = s;
            }
            b = std::max(b, m);
          }
        }
      }
    }
    fb.history.push_back({nz, nw, a, b});
    fb.a_est = a;
    fb.b_est = b;
    std::memcpy(fb.argmin, arg, sizeof arg);
  }
  return fb;
}

SampledField dual_window(const ZakField& g, GridSpec grid, double guard) {
  double amin = std::numeric_limits<double>::infinity();
  for (const auto& v : g.v) amin = std::min(amin, std::abs(v));
  if (amin < guard)
    throw std::domain_error(
        "window has (near-)zero Zak transform -- not an exact frame (min |G| "
        "= " +
        std::to_string(amin) + ")");
  ZakField h = g;
  for (auto& v : h.v) v = 1.0 / std::conj(v);
  return zak_inverse(h, grid);
}

SampledField dual_window_tikhonov(const ZakField& g, GridSpec grid, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("tikhonov: delta must be positive");
  ZakField h = g;
  for (auto& v : h.v) v = std::conj(v) / (std::norm(v) + delta * delta);
  return zak_inverse(h, grid);
}

AnalysisReport biorthogonality_check(const SampledField& g,
                                     const SampledField& gdual, int range) {
  if (!(g.spec() == gdual.spec()))
    throw grid_mismatch("biorthogonality_check: grids differ");
  AnalysisReport rep;
  double worst = 0;
  for (int m = -range; m <= range; ++m) {
    for (int n = -range; n <= range; ++n) {
      const cplx ip =
          field::inner_product(gdual, twistop::twisted_translate(g, m, n));
      const double expect = (m == 0 && n == 0) ? 1.0 : 0.0;
      const double resid = std::abs(ip - expect);
      worst = std::max(worst, resid);
      rep.set("residual_" + std::to_string(m) + "_" + std::to_string(n), resid);
    }
  }
  rep.set("residual_max", worst);
  return rep;
}

// --- winding ---------------------------------------------------------------

WindingReport winding(const ZakEvaluator& g, const std::vector<LoopPoint>& loop,
                      int initial_samples, int max_doublings, double zero_guard) {
  if (loop.size() < 2) throw std::invalid_argument("winding: need a polyline");
  WindingReport rep;
  rep.min_abs = std::numeric_limits<double>::infinity();
  rep.valid = true;
  int used = initial_samples;
  for (std::size_t e = 0; e + 1 < loop.size(); ++e) {
    const LoopPoint& a = loop[e];
    const LoopPoint& b = loop[e + 1];
    int n = initial_samples;
    for (int attempt = 0;; ++attempt) {
      double seg = 0, maxstep = 0, minabs = std::numeric_limits<double>::infinity();
      cplx prev{};
      bool ok = true;
      for (int i = 0; i <= n; ++i) {
        const double t = static_cast<double>(i) / n;
        const cplx v = g(a.zx + t * (b.zx - a.zx), a.zy + t * (b.zy - a.zy),
                         a.wr + t * (b.wr - a.wr), a.ws + t * (b.ws - a.ws));
        const double av = std::abs(v);
        minabs = std::min(minabs, av);
        if (av < zero_guard)
          throw std::domain_error("winding: loop passes too near a zero");
        if (i > 0) {
          const double d = std::arg(v / prev);
          seg += d;
          maxstep = std::max(maxstep, std::abs(d));
        }
        prev = v;
      }
      if (maxstep < 0.5 * kPi || attempt >= max_doublings) {
        if (maxstep >= kPi)
          throw std::domain_error(
              "winding: phase step too large after max refinement");
        rep.segment_phase.push_back(seg);
        rep.total += seg;
        rep.max_step = std::max(rep.max_step, maxstep);
        rep.min_abs = std::min(rep.min_abs, minabs);
        used = std::max(used, n);
        break;
      }
      n *= 2;
    }
  }
  rep.samples_per_segment = used;
  return rep;
}

std::vector<LoopPoint> obstruction_loop() {
  // (0,1) -> (0,i) -> (i,i) -> (i,1) -> (0,1) in (z, w) coordinates
  return {{0, 0, 1, 0}, {0, 0, 0, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 0}};
}

std::vector<LoopPoint> xs_circle(double x0, double s0, double y, double r,
                                 double rho, int segments) {
  std::vector<LoopPoint> loop;
  loop.reserve(segments + 1);
  for (int i = 0; i <= segments; ++i) {
    const double th = kTwoPi * i / segments;
    loop.push_back({x0 + rho * std::cos(th), y, r, s0 + rho * std::sin(th)});
  }
  return loop;
}

// --- smoothing ---------------------------------------------------------------

namespace {

// G_r at the (possibly extended) sample indices (jx, jy, lr, ls); the inner
// lattice lives on the native grids of g.
cplx smooth_eval(const ZakField& g, int pz, int pw, int jx, int jy, int lr,
                 int ls) {
  const int nz = g.nz, nw = g.nw;
  const double zx = static_cast<double>(jx) / nz;
  const double zy = static_cast<double>(jy) / nz;
  const double wr = static_cast<double>(lr) / nw;
  const double ws = static_cast<double>(ls) / nw;
  cplx acc{};
  for (int az = 0; az < pz; ++az) {
    const double zpx = static_cast<double>(az) / nz;
    for (int bz = 0; bz < pz; ++bz) {
      const double zpy = static_cast<double>(bz) / nz;
      const double imz = zy * zpx - zx * zpy;  // Im(z conj(z'))
      for (int aw = 0; aw < pw; ++aw) {
        const double wpr = static_cast<double>(aw) / nw;
        for (int bw = 0; bw < pw; ++bw) {
          const double wps = static_cast<double>(bw) / nw;
          const double imw = ws * wpr - wr * wps;
          acc += lookup(g, jx - az, jy - bz, lr - aw, ls - bw) *
                 std::polar(1.0, -kTwoPi * (imz + imw));
        }
      }
    }
  }
  const double cellw = 1.0 / (static_cast<double>(nz) * nz * nw * nw);
  const double r4 = std::pow(static_cast<double>(pz) / nz, 2.0) *
                    std::pow(static_cast<double>(pw) / nw, 2.0);
  return acc * cellw / r4;
}

void smooth_steps(const ZakField& g, double r, int* pz, int* pw) {
  if (!(r > 0) || r > 1.0)
    throw std::invalid_argument("smooth: need 0 < r <= 1");
  const double tz = r * g.nz, tw = r * g.nw;
  *pz = static_cast<int>(std::lround(tz));
  *pw = static_cast<int>(std::lround(tw));
  if (std::abs(tz - *pz) > 1e-9 || std::abs(tw - *pw) > 1e-9 || *pz < 1 || *pw < 1)
    throw std::invalid_argument(
        "smooth: r must be a positive multiple of both grid steps");
}

}  // namespace

ZakField smooth(const ZakField& g, double r) {
  int pz = 0, pw = 0;
  smooth_steps(g, r, &pz, &pw);
  ZakField out(g.nz, g.nw, g.truncation);
  for (int jx = 0; jx < g.nz; ++jx)
    for (int jy = 0; jy < g.nz; ++jy)
      for (int lr = 0; lr < g.nw; ++lr)
        for (int ls = 0; ls < g.nw; ++ls)
          out.at(jx, jy, lr, ls) = smooth_eval(g, pz, pw, jx, jy, lr, ls);
  return out;
}

AnalysisReport smooth_audit(const ZakField& g, double r, int pairs,
                            unsigned seed) {
  int pz = 0, pw = 0;
  smooth_steps(g, r, &pz, &pw);
  const int nz = g.nz, nw = g.nw;
  double bmax = 0;
  for (const auto& v : g.v) bmax = std::max(bmax, std::abs(v));
  const double psi_bound = kTwoPi * bmax * r;

  ZakField gr = smooth(g, r);
  // seam shifts, each computed by a fresh quadrature at the shifted argument
  double psi_max = 0;
  for (int jx = 0; jx < nz; ++jx)
    for (int jy = 0; jy < nz; ++jy)
      for (int lr = 0; lr < nw; ++lr)
        for (int ls = 0; ls < nw; ++ls) {
          const cplx base = gr.at(jx, jy, lr, ls);
          const double s = static_cast<double>(ls) / nw;
          const double rr = static_cast<double>(lr) / nw;
          const cplx w1 = smooth_eval(g, pz, pw, jx, jy, lr + nw, ls) - base;
          const cplx wi = smooth_eval(g, pz, pw, jx, jy, lr, ls + nw) - base;
          const cplx z1 = smooth_eval(g, pz, pw, jx + nz, jy, lr, ls) -
                          std::polar(1.0, kTwoPi * s) * base;
          const cplx zi = smooth_eval(g, pz, pw, jx, jy + nz, lr, ls) -
                          std::polar(1.0, -kTwoPi * rr) * base;
          psi_max = std::max({psi_max, std::abs(w1), std::abs(wi), std::abs(z1),
                              std::abs(zi)});
        }

  // Lipschitz audit over seeded sample pairs
  Rng rng(seed);
  double lip_margin = std::numeric_limits<double>::infinity();
  double lip_worst_ratio = 0;
  for (int t = 0; t < pairs; ++t) {
    const int a[4] = {rng.uniform_int(nz), rng.uniform_int(nz),
                      rng.uniform_int(nw), rng.uniform_int(nw)};
    const int b[4] = {rng.uniform_int(nz), rng.uniform_int(nz),
                      rng.uniform_int(nw), rng.uniform_int(nw)};
    const double z1[2] = {static_cast<double>(a[0]) / nz,
                          static_cast<double>(a[1]) / nz};
    const double w1[2] = {static_cast<double>(a[2]) / nw,
                          static_cast<double>(a[3]) / nw};
    const double z2[2] = {static_cast<double>(b[0]) / nz,
                          static_cast<double>(b[1]) / nz};
    const double w2[2] = {static_cast<double>(b[2]) / nw,
                          static_cast<double>(b[3]) / nw};
    const double dz = std::hypot(z1[0] - z2[0], z1[1] - z2[1]);
    const double dw = std::hypot(w1[0] - w2[0], w1[1] - w2[1]);
    if (dz + dw < 1e-12) continue;
    const double lhs = std::abs(gr.at(a[0], a[1], a[2], a[3]) -
                                gr.at(b[0], b[1], b[2], b[3]));
    const double zmax = std::max(std::hypot(z1[0], z1[1]), std::hypot(w1[0], w1[1]));
    const double rhs = 2.0 * (kPi * (r + zmax) + 1.0 / r) * bmax * (dz + dw);
    lip_margin = std::min(lip_margin, rhs - lhs);
    lip_worst_ratio = std::max(lip_worst_ratio, lhs / rhs);
  }

  AnalysisReport rep;
  rep.set("b_sqrt", bmax);
  rep.set("psi_bound", psi_bound);
  rep.set("psi_max", psi_max);
  rep.set("lipschitz_margin_min", lip_margin);
  rep.set("lipschitz_worst_ratio", lip_worst_ratio);
  rep.set_flag("psi_within_bound", psi_max <= psi_bound + 1e-12);
  rep.set_flag("lipschitz_within_bound", lip_margin >= -1e-12);
  return rep;
}

// --- oscillation audit -------------------------------------------------------

AnalysisReport oscillation_audit(const SampledField& f, double e1, double e2,
                                 const std::vector<double>& radii) {
  const GridSpec& spec = f.spec();
  const int n = spec.resolution;
  const int se1 = static_cast<int>(std::lround(e1 * n));
  const int se2 = static_cast<int>(std::lround(e2 * n));
  if (std::abs(e1 * n - se1) > 1e-9 || std::abs(e2 * n - se2) > 1e-9)
    throw std::invalid_argument("oscillation_audit: shift must be grid-commensurate");
  const double abse = std::hypot(e1, e2);

  const ZakField g = zak_forward(f, n);  // w-grid step matches the shift grid
  const int nw = n;

  // twisted translation of G in each variable
  ZakField t1(n, nw, spec.truncation), t2(n, nw, spec.truncation);
  for (int jx = 0; jx < n; ++jx) {
    const double x = static_cast<double>(jx) / n;
    for (int jy = 0; jy < n; ++jy) {
      const double y = static_cast<double>(jy) / n;
      const cplx phz = std::polar(1.0, kTwoPi * (x * e2 - y * e1));  // Im(zbar eps)
      for (int lr = 0; lr < nw; ++lr) {
        const double r = static_cast<double>(lr) / nw;
        for (int ls = 0; ls < nw; ++ls) {
          const double s = static_cast<double>(ls) / nw;
          const cplx phw = std::polar(1.0, kTwoPi * (r * e2 - s * e1));
          t1.at(jx, jy, lr, ls) = phz * lookup(g, jx - se1, jy - se2, lr, ls);
          t2.at(jx, jy, lr, ls) = phw * lookup(g, jx, jy, lr - se1, ls - se2);
        }
      }
    }
  }

  auto l2_diff = [&](const ZakField& t) {
    double acc = 0;
    for (std::size_t i = 0; i < t.v.size(); ++i) acc += std::norm(t.v[i] - g.v[i]);
    return std::sqrt(acc / (static_cast<double>(n) * n * nw * nw));
  };
  const double lhs1 = l2_diff(t1);
  const double lhs2 = l2_diff(t2);

  const auto trip = twistop::shift_triplet(f, e1, e2);
  const double nf = field::norm2(f);
  const double nmod = field::norm2(trip.modulated);
  const double nzm = field::norm2(twistop::z_apply(trip.modulated));
  const double nzbm = field::norm2(twistop::zbar_apply(trip.modulated));
  const int neps = twistop::growth_index(abse);
  const double grow = std::pow(1.0 + abse, neps);

  const double rhs1 =
      8.0 * kPi * abse * nf +
      7.5 * kPi * abse * (nzm + nzbm + nmod + grow * nf);
  const double rhs2 = kTwoPi * abse * grow * nf + 8.0 * kPi * abse * nf;

  AnalysisReport rep;
  rep.set("eps1", e1);
  rep.set("eps2", e2);
  rep.set("growth_index", neps);
  rep.set("lhs_var1_l2", lhs1);
  rep.set("rhs_var1_l2", rhs1);
  rep.set("lhs_var2_l2", lhs2);
  rep.set("rhs_var2_l2", rhs2);
  rep.set_flag("var1_within_bound", lhs1 <= rhs1);
  rep.set_flag("var2_within_bound", lhs2 <= rhs2);

  // windowed constants over shrinking boxes centered at alpha0 = (1/2, 1/2)^2
  auto windowed_norm = [&](const SampledField& u, double r) {
    const int half = static_cast<int>(std::lround(0.5 * r * n));
    const int i0 = spec.index_of(0.5 - static_cast<double>(half) / n);
    double acc = 0;
    for (int i = 0; i < 2 * half; ++i)
      for (int j = 0; j < 2 * half; ++j)
        acc += std::norm(u.at(i0 + i, i0 + j));
    return std::sqrt(acc) * spec.step();
  };

  const SampledField zmod = twistop::z_apply(trip.modulated);
  const SampledField zbmod = twistop::zbar_apply(trip.modulated);
  double prev_c1 = std::numeric_limits<double>::infinity();
  double prev_c2 = std::numeric_limits<double>::infinity();
  bool c_decreasing = true;
  int idx = 0;
  for (double r : radii) {
    const int rh = static_cast<int>(std::lround(r * n));
    if (std::abs(r * n - rh) > 1e-9 || rh % 2 != 0)
      throw std::invalid_argument(
          "oscillation_audit: radius must keep the box grid-aligned");
    const double wf = windowed_norm(f, r);
    const double wmod = windowed_norm(trip.modulated, r);
    const double wz = windowed_norm(zmod, r);
    const double wzb = windowed_norm(zbmod, r);
    const double c1 = 8.0 * kPi * wf + 7.5 * kPi * (wz + wzb + wmod + grow * wf);
    const double c2 = 8.0 * kPi * grow * wf + 8.0 * kPi * wf;

    // L1 integrals of |T_j G - G| over the box [1/2-r/2, 1/2+r/2]^4
    const int half = rh / 2;
    const int z0 = n / 2 - half, w0 = nw / 2 - half;
    double l1a = 0, l1b = 0;
    for (int jx = 0; jx < rh; ++jx)
      for (int jy = 0; jy < rh; ++jy)
        for (int lr = 0; lr < rh; ++lr)
          for (int ls = 0; ls < rh; ++ls) {
            const auto zi = z0 + jx, zj = z0 + jy, wi = w0 + lr, wj = w0 + ls;
            l1a += std::abs(t1.at(zi, zj, wi, wj) - g.at(zi, zj, wi, wj));
            l1b += std::abs(t2.at(zi, zj, wi, wj) - g.at(zi, zj, wi, wj));
          }
    const double cellw = 1.0 / (static_cast<double>(n) * n * nw * nw);
    l1a *= cellw;
    l1b *= cellw;
    const double bound1 = r * r * abse * c1;
    const double bound2 = r * r * abse * c2;
    const std::string tag = "_r" + std::to_string(idx);
    rep.set("radius" + tag, r);
    rep.set("c1" + tag, c1);
    rep.set("c2" + tag, c2);
    rep.set("l1_var1" + tag, l1a);
    rep.set("l1_var2" + tag, l1b);
    rep.set("bound_var1" + tag, bound1);
    rep.set("bound_var2" + tag, bound2);
    rep.set_flag("var1_within_bound" + tag, l1a <= bound1);
    rep.set_flag("var2_within_bound" + tag, l1b <= bound2);
    if (c1 > prev_c1 || c2 > prev_c2) c_decreasing = false;
    prev_c1 = c1;
    prev_c2 = c2;
    ++idx;
  }
  rep.set_flag("c_decreasing", c_decreasing);
  return rep;
}

// --- derivative identities ---------------------------------------------------

namespace {

// derivative along one z-axis of the Zak samples: 4th-order stencils with
// one-sided closures at the seam rows (keeps field-edge truncation out)
void d_z_axis(const ZakField& g, int axis, ZakField* out) {
  const int nz = g.nz, nw = g.nw;
  const double h = 1.0 / nz;
  std::vector<cplx> line(nz), dline(nz);
  for (int other = 0; other < nz; ++other)
    for (int lr = 0; lr < nw; ++lr)
      for (int ls = 0; ls < nw; ++ls) {
        for (int t = 0; t < nz; ++t)
          line[t] = (axis == 0) ? g.at(t, other, lr, ls) : g.at(other, t, lr, ls);
        field::derivative_1d(line, dline, h);
        for (int t = 0; t < nz; ++t) {
          if (axis == 0)
            out->at(t, other, lr, ls) = dline[t];
          else
            out->at(other, t, lr, ls) = dline[t];
        }
      }
}

// spectral derivative along one w-axis (the w-content is an exact trig
// polynomial of degree < nw/2, so this is exact)
void d_w_axis(const ZakField& g, int axis, ZakField* out) {
  const int nz = g.nz, nw = g.nw;
  // circular convolution kernel d[p] = (1/nw) sum_j (2 pi i nu_j) e^{2 pi i j p / nw}
  std::vector<cplx> ker(nw);
  for (int p = 0; p < nw; ++p) {
    cplx acc{};
    for (int j = 0; j < nw; ++j) {
      int nu = (j <= nw / 2) ? j : j - nw;
      if (j == nw / 2) nu = 0;  // empty Nyquist bin by construction
      acc += cplx(0, kTwoPi * nu) *
             std::polar(1.0, kTwoPi * static_cast<double>(j) * p / nw);
    }
    ker[p] = acc / static_cast<double>(nw);
  }
  std::vector<cplx> line(nw);
  for (int jx = 0; jx < nz; ++jx)
    for (int jy = 0; jy < nz; ++jy)
      for (int other = 0; other < nw; ++other) {
        for (int t = 0; t < nw; ++t)
          line[t] = (axis == 0) ? g.at(jx, jy, t, other) : g.at(jx, jy, other, t);
        for (int t = 0; t < nw; ++t) {
          cplx acc{};
          for (int u = 0; u < nw; ++u) {
            int p = t - u;
            p -= nw * static_cast<int>(std::floor(static_cast<double>(p) / nw));
            acc += line[u] * ker[p];
          }
          if (axis == 0)
            out->at(jx, jy, t, other) = acc;
          else
            out->at(jx, jy, other, t) = acc;
        }
      }
}

}  // namespace

AnalysisReport derivative_identity_check(const SampledField& f, int nw) {
  const GridSpec& spec = f.spec();
  const int n = spec.resolution;
  const ZakField g = zak_forward(f, nw);
  ZakField gx(n, nw, spec.truncation), gy(n, nw, spec.truncation);
  ZakField gr(n, nw, spec.truncation), gs(n, nw, spec.truncation);
  d_z_axis(g, 0, &gx);
  d_z_axis(g, 1, &gy);
  d_w_axis(g, 0, &gr);
  d_w_axis(g, 1, &gs);

  const ZakField lz = zak_forward(twistop::z_apply(f), nw);
  const ZakField lzb = zak_forward(twistop::zbar_apply(f), nw);

  double accz = 0, acczb = 0;
  for (int jx = 0; jx < n; ++jx) {
    const double x = static_cast<double>(jx) / n;
    for (int jy = 0; jy < n; ++jy) {
      const double y = static_cast<double>(jy) / n;
      const cplx zz(x, y);
      for (int lr = 0; lr < nw; ++lr)
        for (int ls = 0; ls < nw; ++ls) {
          const cplx G = g.at(jx, jy, lr, ls);
          const cplx Dz = gx.at(jx, jy, lr, ls) - cplx(0, 1) * gy.at(jx, jy, lr, ls);
          const cplx Dzb = gx.at(jx, jy, lr, ls) + cplx(0, 1) * gy.at(jx, jy, lr, ls);
          const cplx Dw =
              0.5 * (gr.at(jx, jy, lr, ls) - cplx(0, 1) * gs.at(jx, jy, lr, ls));
          const cplx Dwb =
              0.5 * (gr.at(jx, jy, lr, ls) + cplx(0, 1) * gs.at(jx, jy, lr, ls));
          const cplx rhs_z = Dz + 0.5 * std::conj(zz) * G - Dw / kTwoPi;
          const cplx rhs_zb = Dzb - 0.5 * zz * G - Dwb / kTwoPi;
          accz += std::norm(lz.at(jx, jy, lr, ls) - rhs_z);
          acczb += std::norm(lzb.at(jx, jy, lr, ls) - rhs_zb);
        }
    }
  }
  const double cells = static_cast<double>(n) * n * nw * nw;
  AnalysisReport rep;
  rep.set("residual_ladder", std::sqrt(accz / cells));
  rep.set("residual_ladder_conj", std::sqrt(acczb / cells));
  return rep;
}

// --- I/O ---------------------------------------------------------------------

namespace {
constexpr char kZakMagic[8] = {'T', 'Z', 'A', 'K', 'F', 'L', 'D', '1'};
}

void write_zak(const ZakField& g, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os.write(kZakMagic, 8);
  auto put = [&](std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
  };
  put(static_cast<std::uint32_t>(g.nz));
  put(static_cast<std::uint32_t>(g.nw));
  put(static_cast<std::uint32_t>(g.truncation));
  for (const auto& v : g.v) {
    const double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
}

ZakField read_zak(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kZakMagic, 8) != 0)
    throw std::runtime_error("zak file: bad magic");
  auto get = [&]() {
    unsigned char b[4];
    is.read(reinterpret_cast<char*>(b), 4);
    if (!is) throw std::runtime_error("zak file: truncated header");
    return static_cast<std::uint32_t>(b[0]) |
           (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
  };
  const auto nz = get(), nw = get(), k = get();
  if (nz < 1 || nw < 1 || k < 1 || nz > 4096 || nw > 4096 || k > 4096)
    throw std::runtime_error("zak file: bad dimensions");
  ZakField g(static_cast<int>(nz), static_cast<int>(nw), static_cast<int>(k));
  for (auto& v : g.v) {
    double re, im;
    is.read(reinterpret_cast<char*>(&re), 8);
    is.read(reinterpret_cast<char*>(&im), 8);
    if (!is) throw std::runtime_error("zak file: truncated payload");
    v = {re, im};
  }
  return g;
}

}  // namespace tf::zak
