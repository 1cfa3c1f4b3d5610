#include "rotgpe/random_field.hpp"

#include <random>

namespace rotgpe {

ComplexField random_band_limited(const GridSpec& g, std::uint64_t seed, double scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double width = scale * (0.6 + 0.8 * uni(rng));
  const double c1 = scale * (uni(rng) - 0.5), c2 = scale * (uni(rng) - 0.5);
  constexpr int K = 2;
  cplx coef[2 * K + 1][2 * K + 1];
  for (auto& row : coef)
    for (auto& c : row) c = cplx(gauss(rng), gauss(rng));
  const double k0 = 1.0 / scale;
  return ComplexField::sample(g, [&](double x1, double x2) {
    const double y1 = x1 - c1, y2 = x2 - c2;
    cplx s = 0.0;
    for (int a = -K; a <= K; ++a)
      for (int b = -K; b <= K; ++b) s += coef[a + K][b + K] * std::polar(1.0, k0 * (a * y1 + b * y2));
    return s * std::exp(-(y1 * y1 + y2 * y2) / (2.0 * width * width));
  });
}

}  // namespace rotgpe
