#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Uniform square grid on [-K, K)^2 with samples at cell corners,
/// x_j = -K + j/N.  Integer translations are exact index shifts.
struct GridSpec {
  int resolution = 0;  // N: samples per unit length, even, >= 4
  int truncation = 0;  // K: half-width of the domain in unit cells, >= 1

  int samples() const { return 2 * truncation * resolution; }
  double step() const { return 1.0 / resolution; }
  double coord(int j) const { return -truncation + j * step(); }

  /// Exact sample index of a coordinate, or -1 if x is off-grid/outside.
  int index_of(double x) const {
    double t = (x + truncation) * resolution;
    int j = static_cast<int>(std::lround(t));
    if (std::abs(t - j) > 1e-9) return -1;
    if (j < 0 || j >= samples()) return -1;
    return j;
  }

  bool operator==(const GridSpec&) const = default;
};

GridSpec make_grid(int resolution, int truncation);

/// Complex samples of a function on GridSpec x GridSpec, row-major in x
/// (index = ix * M + iy).  Everything outside the domain is treated as 0.
class SampledField {
 public:
  SampledField() = default;
  explicit SampledField(GridSpec spec)
      : spec_(spec),
        v_(static_cast<std::size_t>(spec.samples()) * spec.samples()) {}

  template <typename F>
  static SampledField from_function(GridSpec spec, F&& f) {
    SampledField out(spec);
    const int m = spec.samples();
    for (int i = 0; i < m; ++i) {
      const double x = spec.coord(i);
      for (int j = 0; j < m; ++j) out.at(i, j) = f(x, spec.coord(j));
    }
    return out;
  }

  const GridSpec& spec() const { return spec_; }
  int size() const { return spec_.samples(); }

  cplx& at(int ix, int iy) {
    return v_[static_cast<std::size_t>(ix) * spec_.samples() + iy];
  }
  const cplx& at(int ix, int iy) const {
    return v_[static_cast<std::size_t>(ix) * spec_.samples() + iy];
  }
  /// Zero outside the stored domain (the truncation policy).
  cplx value_or_zero(int ix, int iy) const {
    const int m = spec_.samples();
    if (ix < 0 || ix >= m || iy < 0 || iy >= m) return {};
    return at(ix, iy);
  }

  std::vector<cplx>& data() { return v_; }
  const std::vector<cplx>& data() const { return v_; }

 private:
  GridSpec spec_{};
  std::vector<cplx> v_;
};

SampledField operator+(const SampledField& a, const SampledField& b);
SampledField operator-(const SampledField& a, const SampledField& b);
SampledField operator*(cplx s, const SampledField& f);

struct grid_mismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace tf
