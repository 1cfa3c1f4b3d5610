#include "rotgpe/field.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

namespace rotgpe {

GridSpec GridSpec::make(double half_width, int n) {
  if (n < 8 || !std::has_single_bit(static_cast<unsigned>(n)))
    throw Error("GridSpec: n must be a power of two >= 8, got " + std::to_string(n));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw Error("GridSpec: half_width must be positive");
  GridSpec g;
  g.half_width = half_width;
  g.n = n;
  g.dx = 2.0 * half_width / n;
  g.wavenumbers.resize(n);
  const double k0 = std::numbers::pi / half_width;
  for (int j = 0; j < n; ++j) g.wavenumbers[j] = k0 * (j < n / 2 ? j : j - n);
  return g;
}

ComplexField& ComplexField::operator*=(cplx s) {
  for (auto& v : values) v *= s;
  return *this;
}

ComplexField& ComplexField::operator+=(const ComplexField& o) {
  if (!grid.same_as(o.grid)) throw GridMismatch("field addition on different grids");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& o) {
  if (!grid.same_as(o.grid)) throw GridMismatch("field subtraction on different grids");
  for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator-(ComplexField a, const ComplexField& b) { return a -= b; }
ComplexField operator*(cplx s, ComplexField a) { return a *= s; }

ComplexField conj(ComplexField f) {
  for (auto& v : f.values) v = std::conj(v);
  return f;
}

RadialField::RadialField(double r_max_, int m_) : r_max(r_max_), m(m_), values(m_) {
  if (m < 16) throw Error("RadialField: m must be >= 16");
}

double RadialField::operator()(double r) const {
  const double s = r / h() - 0.5;
  if (s <= 0.0) return values.front();
  const int j = static_cast<int>(s);
  if (j >= m - 1) {
    const double t = s - (m - 1);
    return t >= 0.5 ? 0.0 : values.back() * (1.0 - 2.0 * t);
  }
  const double t = s - j;
  return values[j] * (1.0 - t) + values[j + 1] * t;
}

namespace {

// Derivative wavenumbers: the Nyquist mode has no odd partner and is dropped.
std::vector<double> derivative_wavenumbers(const GridSpec& g) {
  std::vector<double> k = g.wavenumbers;
  k[g.n / 2] = 0.0;
  return k;
}

}  // namespace

std::pair<ComplexField, ComplexField> gradient(const ComplexField& f) {
  const GridSpec& g = f.grid;
  const auto k = derivative_wavenumbers(g);
  std::vector<cplx> hat(g.size()), h1(g.size()), h2(g.size());
  detail::fft_forward(g, f.values.data(), hat.data());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const auto q = ComplexField::idx(g, i, j);
      h1[q] = cplx(0.0, k[i]) * hat[q];
      h2[q] = cplx(0.0, k[j]) * hat[q];
    }
  ComplexField d1(g), d2(g);
  d1.frame_angle = d2.frame_angle = f.frame_angle;
  detail::fft_inverse(g, h1.data(), d1.values.data());
  detail::fft_inverse(g, h2.data(), d2.values.data());
  return {std::move(d1), std::move(d2)};
}

ComplexField neg_laplacian(const ComplexField& f) {
  return fourier_multiply(f, [](double k1, double k2) { return k1 * k1 + k2 * k2; });
}

ComplexField apply_Lz(const ComplexField& f) {
  auto [d1, d2] = gradient(f);
  const GridSpec& g = f.grid;
  ComplexField out(g);
  out.frame_angle = f.frame_angle;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const auto q = ComplexField::idx(g, i, j);
      out.values[q] = cplx(0.0, 1.0) * (g.x(j) * d1.values[q] - g.x(i) * d2.values[q]);
    }
  return out;
}

std::pair<ComplexField, ComplexField> apply_grad_A(const ComplexField& f, double gamma) {
  if (gamma < 0.0) throw Error("apply_grad_A: gamma must be >= 0");
  auto [d1, d2] = gradient(f);
  if (gamma == 0.0) return {std::move(d1), std::move(d2)};
  const GridSpec& g = f.grid;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const auto q = ComplexField::idx(g, i, j);
      const cplx v = f.values[q];
      // A = gamma (-x2, x1)
      d1.values[q] += cplx(0.0, gamma * g.x(j)) * v;
      d2.values[q] -= cplx(0.0, gamma * g.x(i)) * v;
    }
  return {std::move(d1), std::move(d2)};
}

ComplexField rotate_frame(const ComplexField& f, double angle) {
  const GridSpec& g = f.grid;
  ComplexField out(g);
  out.frame_angle = f.frame_angle + angle;
  if (angle == 0.0) {
    out.values = f.values;
    return out;
  }
  auto [f1, f2] = gradient(f);
  auto f12 = gradient(f1).second;
  const double c = std::cos(angle), s = std::sin(angle), h = g.dx;
  auto h0 = [](double t, int corner) {
    return corner == 0 ? (2 * t - 3) * t * t + 1 : (3 - 2 * t) * t * t;
  };
  auto h1 = [](double t, int corner) {
    return corner == 0 ? ((t - 2) * t + 1) * t : (t - 1) * t * t;
  };
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double x1 = g.x(i), x2 = g.x(j);
      const double y1 = (x1 * c + x2 * s + g.half_width) / h;
      const double y2 = (-x1 * s + x2 * c + g.half_width) / h;
      const int a = static_cast<int>(std::floor(y1)), b = static_cast<int>(std::floor(y2));
      if (a < 0 || b < 0 || a >= g.n - 1 || b >= g.n - 1) continue;
      const double t = y1 - a, u = y2 - b;
      cplx v = 0.0;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          const auto k = ComplexField::idx(g, a + p, b + q);
          v += f.values[k] * (h0(t, p) * h0(u, q)) + f1.values[k] * (h * h1(t, p) * h0(u, q)) +
               f2.values[k] * (h * h0(t, p) * h1(u, q)) +
               f12.values[k] * (h * h * h1(t, p) * h1(u, q));
        }
      out.values[ComplexField::idx(g, i, j)] = v;
    }
  return out;
}

double boundary_ratio(const ComplexField& f) {
  const GridSpec& g = f.grid;
  double edge = 0.0, peak = 0.0;
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      const double a = std::abs(f.at(i, j));
      peak = std::max(peak, a);
      if (i == 0 || j == 0 || i == g.n - 1 || j == g.n - 1) edge = std::max(edge, a);
    }
  return peak > 0.0 ? edge / peak : 0.0;
}

double spectral_norm2(const ComplexField& f) {
  const GridSpec& g = f.grid;
  std::vector<cplx> hat(g.size());
  detail::fft_forward(g, f.values.data(), hat.data());
  double s = 0.0;
  for (const auto& v : hat) s += std::norm(v);
  return s * g.cell_area() / static_cast<double>(g.size());
}

void write_dump(const std::string& path, const ComplexField& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  char header[160];
  std::snprintf(header, sizeof header, "ROTGPE1 n=%d half_width=%.17g frame_angle=%.17g\n", f.grid.n,
                f.grid.half_width, f.frame_angle);
  os << header;
  for (const auto& v : f.values) {
    double pair[2] = {v.real(), v.imag()};
    for (double d : pair) {
      auto bits = std::bit_cast<std::uint64_t>(d);
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
      os.write(reinterpret_cast<const char*>(&bits), sizeof bits);
    }
  }
  if (!os) throw Error("write failed: " + path);
}

ComplexField read_dump(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  std::string line;
  std::getline(is, line);
  int n = 0;
  double hw = 0.0, angle = 0.0;
  if (std::sscanf(line.c_str(), "ROTGPE1 n=%d half_width=%lf frame_angle=%lf", &n, &hw, &angle) != 3)
    throw Error("bad dump header in " + path);
  ComplexField f(GridSpec::make(hw, n));
  f.frame_angle = angle;
  for (auto& v : f.values) {
    std::uint64_t bits[2];
    is.read(reinterpret_cast<char*>(bits), sizeof bits);
    if (!is) throw Error("truncated dump " + path);
    if constexpr (std::endian::native == std::endian::big) {
      bits[0] = __builtin_bswap64(bits[0]);
      bits[1] = __builtin_bswap64(bits[1]);
    }
    v = cplx(std::bit_cast<double>(bits[0]), std::bit_cast<double>(bits[1]));
  }
  return f;
}

}  // namespace rotgpe
