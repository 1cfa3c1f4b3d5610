#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rotgpe/error.hpp"

namespace rotgpe {

using cplx = std::complex<double>;

/// Uniform periodic grid on the square [-half_width, half_width)^2.
struct GridSpec {
  double half_width = 12.0;
  int n = 256;
  double dx = 0.09375;
  std::vector<double> wavenumbers;
  /// Multiplies every quadrature weight; 1 except for fault injection.
  double quadrature_scale = 1.0;

  static GridSpec make(double half_width, int n);

  double x(int j) const { return -half_width + j * dx; }
  double cell_area() const { return dx * dx * quadrature_scale; }
  std::size_t size() const { return static_cast<std::size_t>(n) * n; }
  bool same_as(const GridSpec& o) const { return half_width == o.half_width && n == o.n; }
};

/// Complex samples on a GridSpec, stored as values[i1 * n + i2] with i1 along x1.
struct ComplexField {
  GridSpec grid;
  std::vector<cplx> values;
  double frame_angle = 0.0;

  ComplexField() = default;
  explicit ComplexField(GridSpec g) : grid(std::move(g)), values(grid.size()) {}

  template <class F>
  static ComplexField sample(const GridSpec& g, F&& fn) {
    ComplexField f(g);
    for (int i = 0; i < g.n; ++i)
      for (int j = 0; j < g.n; ++j) f.values[idx(g, i, j)] = fn(g.x(i), g.x(j));
    return f;
  }

  static std::size_t idx(const GridSpec& g, int i1, int i2) {
    return static_cast<std::size_t>(i1) * g.n + i2;
  }
  cplx& at(int i1, int i2) { return values[idx(grid, i1, i2)]; }
  const cplx& at(int i1, int i2) const { return values[idx(grid, i1, i2)]; }

  ComplexField& operator*=(cplx s);
  ComplexField& operator+=(const ComplexField& o);
  ComplexField& operator-=(const ComplexField& o);
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator-(ComplexField a, const ComplexField& b);
ComplexField operator*(cplx s, ComplexField a);
ComplexField conj(ComplexField f);

/// Radial profile sampled at r_j = (j + 1/2) r_max / m.
struct RadialField {
  double r_max = 20.0;
  int m = 2000;
  std::vector<double> values;

  RadialField() = default;
  RadialField(double r_max, int m);
  double h() const { return r_max / m; }
  double r(int j) const { return (j + 0.5) * h(); }
  /// Linear interpolation in r, zero beyond r_max.
  double operator()(double r) const;
};

/// Compensated sum of density(x1, x2, value) * cell_area over all samples.
template <class Density>
double integrate(const ComplexField& f, Density&& density) {
  const GridSpec& g = f.grid;
  double sum = 0.0, comp = 0.0;
  for (int i = 0; i < g.n; ++i) {
    const double x1 = g.x(i);
    for (int j = 0; j < g.n; ++j) {
      const double v = density(x1, g.x(j), f.values[ComplexField::idx(g, i, j)]);
      if (!std::isfinite(v))
        throw NonFiniteValue("integrate: non-finite density", static_cast<long>(i) * g.n + j);
      const double t = sum + v;
      comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
      sum = t;
    }
  }
  return (sum + comp) * g.cell_area();
}

std::pair<ComplexField, ComplexField> gradient(const ComplexField& f);
/// -Laplacian applied spectrally.
ComplexField neg_laplacian(const ComplexField& f);
ComplexField apply_Lz(const ComplexField& f);
std::pair<ComplexField, ComplexField> apply_grad_A(const ComplexField& f, double gamma);

/// g(x) = f(R_a x), R_a x = (x1 cos a + x2 sin a, -x1 sin a + x2 cos a); frame_angle += a.
ComplexField rotate_frame(const ComplexField& f, double angle);

/// Largest |f| on the outer ring of samples divided by max |f|.
double boundary_ratio(const ComplexField& f);

/// Sum of |fhat_k|^2 scaled to the continuous L2 norm.
double spectral_norm2(const ComplexField& f);

/// Multiplies each Fourier coefficient by mult(k1, k2).
template <class Mult>
ComplexField fourier_multiply(const ComplexField& f, Mult&& mult);

void write_dump(const std::string& path, const ComplexField& f);
ComplexField read_dump(const std::string& path);

namespace detail {
void fft_forward(const GridSpec& g, const cplx* in, cplx* out);
void fft_inverse(const GridSpec& g, const cplx* in, cplx* out);
}  // namespace detail

template <class Mult>
ComplexField fourier_multiply(const ComplexField& f, Mult&& mult) {
  const GridSpec& g = f.grid;
  ComplexField out(g);
  out.frame_angle = f.frame_angle;
  std::vector<cplx> hat(g.size());
  detail::fft_forward(g, f.values.data(), hat.data());
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) hat[ComplexField::idx(g, i, j)] *= mult(g.wavenumbers[i], g.wavenumbers[j]);
  detail::fft_inverse(g, hat.data(), out.values.data());
  return out;
}

}  // namespace rotgpe
