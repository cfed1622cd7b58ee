#include "twistfreq/field.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>

namespace tf {

GridSpec make_grid(int resolution, int truncation) {
  if (resolution < 4 || resolution % 2 != 0)
    throw std::invalid_argument("grid resolution must be even and >= 4");
  if (truncation < 1)
    throw std::invalid_argument("grid truncation must be >= 1");
  return GridSpec{resolution, truncation};
}

SampledField operator+(const SampledField& a, const SampledField& b) {
  if (!(a.spec() == b.spec())) throw grid_mismatch("field grids differ");
  SampledField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] += b.data()[i];
  return out;
}

SampledField operator-(const SampledField& a, const SampledField& b) {
  if (!(a.spec() == b.spec())) throw grid_mismatch("field grids differ");
  SampledField out = a;
  for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] -= b.data()[i];
  return out;
}

SampledField operator*(cplx s, const SampledField& f) {
  SampledField out = f;
  for (auto& v : out.data()) v *= s;
  return out;
}

}  // namespace tf

namespace tf::field {

cplx inner_product(const SampledField& f, const SampledField& g) {
  if (!(f.spec() == g.spec())) throw grid_mismatch("inner_product: grids differ");
  cplx acc{};
  const auto& a = f.data();
  const auto& b = g.data();
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
  const double h = f.spec().step();
  return acc * (h * h);
}

double norm2sq(const SampledField& f) {
  double acc = 0;
  for (const auto& v : f.data()) acc += std::norm(v);
  const double h = f.spec().step();
  return acc * h * h;
}

double norm2(const SampledField& f) { return std::sqrt(norm2sq(f)); }

namespace {

// 4th-order one-sided closures (first derivative); interior is the usual
// (-f2 + 8 f1 - 8 f-1 + f-2)/(12h).
constexpr std::array<double, 5> kEdge0 = {-25.0, 48.0, -36.0, 16.0, -3.0};
constexpr std::array<double, 5> kEdge1 = {-3.0, -10.0, 18.0, -6.0, 1.0};

template <typename T>
void derivative_1d_impl(std::span<const T> in, std::span<T> out, double h) {
  const int n = static_cast<int>(in.size());
  const double w = 1.0 / (12.0 * h);
  for (int i = 2; i < n - 2; ++i)
    out[i] = (-in[i + 2] + 8.0 * in[i + 1] - 8.0 * in[i - 1] + in[i - 2]) * w;
  T e0{}, e1{}, en1{}, en2{};
  for (int t = 0; t < 5; ++t) {
    e0 += kEdge0[t] * in[t];
    e1 += kEdge1[t] * in[t];
    en1 += kEdge0[4 - t] * in[n - 5 + t];
    en2 += kEdge1[4 - t] * in[n - 5 + t];
  }
  out[0] = e0 * w;
  out[1] = e1 * w;
  out[n - 1] = -en1 * w;
  out[n - 2] = -en2 * w;
}

}  // namespace

void derivative_1d(std::span<const cplx> in, std::span<cplx> out, double h) {
  derivative_1d_impl(in, out, h);
}
void derivative_1d(std::span<const double> in, std::span<double> out, double h) {
  derivative_1d_impl(in, out, h);
}

SampledField partial_derivative(const SampledField& f, Axis axis) {
  const int m = f.spec().samples();
  const double h = f.spec().step();
  SampledField out(f.spec());
  std::vector<cplx> line(m), dline(m);
  if (axis == Axis::X) {
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) line[i] = f.at(i, j);
      derivative_1d(line, dline, h);
      for (int i = 0; i < m; ++i) out.at(i, j) = dline[i];
    }
  } else {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) line[j] = f.at(i, j);
      derivative_1d(line, dline, h);
      for (int j = 0; j < m; ++j) out.at(i, j) = dline[j];
    }
  }
  return out;
}

SampledField wirtinger(const SampledField& f, bool conjugate) {
  SampledField fx = partial_derivative(f, Axis::X);
  SampledField fy = partial_derivative(f, Axis::Y);
  const cplx iy = conjugate ? cplx(0, 0.5) : cplx(0, -0.5);
  SampledField out(f.spec());
  for (std::size_t i = 0; i < out.data().size(); ++i)
    out.data()[i] = 0.5 * fx.data()[i] + iy * fy.data()[i];
  return out;
}

AmalgamNorm amalgam_norm(const SampledField& f, double p, double q) {
  if (!(p > 0) || !(q > 0))
    throw std::invalid_argument("amalgam_norm: exponents must be positive");
  const GridSpec& g = f.spec();
  const int n = g.resolution;
  const int k = g.truncation;
  const double h = g.step();
  const bool pinf = std::isinf(p);
  AmalgamNorm out{p, q, 0.0, {}};
  out.per_cell.reserve(static_cast<std::size_t>(2 * k) * (2 * k));
  for (int cx = -k; cx < k; ++cx) {
    for (int cy = -k; cy < k; ++cy) {
      const int i0 = (cx + k) * n;
      const int j0 = (cy + k) * n;
      double cell = 0;
      if (pinf) {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            cell = std::max(cell, std::abs(f.at(i0 + i, j0 + j)));
      } else {
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            cell += std::pow(std::abs(f.at(i0 + i, j0 + j)), p);
        cell = std::pow(cell * h * h, 1.0 / p);
      }
      out.per_cell.push_back({cx, cy, cell});
    }
  }
  if (std::isinf(q)) {
    for (const auto& c : out.per_cell) out.value = std::max(out.value, c.norm);
  } else {
    double acc = 0;
    for (const auto& c : out.per_cell) acc += std::pow(c.norm, q);
    out.value = std::pow(acc, 1.0 / q);
  }
  return out;
}

// --- I/O ------------------------------------------------------------------

namespace {
constexpr char kMagic[8] = {'T', 'G', 'F', 'I', 'E', 'L', 'D', '1'};

void put_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>((v >> 8) & 0xff),
                        static_cast<unsigned char>((v >> 16) & 0xff),
                        static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("field file: truncated header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}
}  // namespace

void write_field(const SampledField& f, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os.write(kMagic, 8);
  put_u32(os, static_cast<std::uint32_t>(f.spec().resolution));
  put_u32(os, static_cast<std::uint32_t>(f.spec().truncation));
  for (const auto& v : f.data()) {
    const double re = v.real(), im = v.imag();
    os.write(reinterpret_cast<const char*>(&re), 8);
    os.write(reinterpret_cast<const char*>(&im), 8);
  }
  if (!os) throw std::runtime_error("short write to " + path.string());
}

SampledField read_field(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char magic[8];
  is.read(magic, 8);
  if (!is || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("field file: bad magic");
  const auto n = get_u32(is);
  const auto k = get_u32(is);
  if (n < 4 || n % 2 != 0 || k < 1 || n > 1u << 16 || k > 1u << 16)
    throw std::runtime_error("field file: bad dimensions");
  SampledField f(make_grid(static_cast<int>(n), static_cast<int>(k)));
  for (auto& v : f.data()) {
    double re, im;
    is.read(reinterpret_cast<char*>(&re), 8);
    is.read(reinterpret_cast<char*>(&im), 8);
    if (!is) throw std::runtime_error("field file: truncated payload");
    v = {re, im};
  }
  return f;
}

void write_field_csv(const SampledField& f, const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path.string());
  os << "x,y,re,im\n";
  char buf[128];
  const int m = f.spec().samples();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const cplx v = f.at(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n",
                    f.spec().coord(i), f.spec().coord(j), v.real(), v.imag());
      os << buf;
    }
  }
}

SampledField read_field_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string header;
  std::getline(is, header);
  if (header != "x,y,re,im") throw std::runtime_error("field csv: bad header");
  struct Row {
    double x, y, re, im;
  };
  std::vector<Row> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    Row r;
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &r.x, &r.y, &r.re, &r.im) != 4)
      throw std::runtime_error("field csv: bad row");
    rows.push_back(r);
  }
  // infer the grid: count distinct x with x-min = -K, step 1/N
  std::size_t m2 = rows.size();
  int m = static_cast<int>(std::lround(std::sqrt(static_cast<double>(m2))));
  if (static_cast<std::size_t>(m) * m != m2 || m < 8)
    throw std::runtime_error("field csv: not a square sample set");
  const double x0 = rows.front().x;
  const double h = rows[1].y - rows[0].y;
  const int n = static_cast<int>(std::lround(1.0 / h));
  const int k = static_cast<int>(std::lround(-x0));
  if (2 * k * n != m) throw std::runtime_error("field csv: inconsistent grid");
  SampledField f(make_grid(n, k));
  std::size_t idx = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j, ++idx) f.at(i, j) = {rows[idx].re, rows[idx].im};
  return f;
}

}  // namespace tf::field
