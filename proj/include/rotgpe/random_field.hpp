#pragma once

#include <cstdint>

#include "rotgpe/field.hpp"

namespace rotgpe {

/// Smooth, rapidly decaying random field: a Gaussian envelope of random width
/// and centre multiplied by a random trigonometric polynomial of low degree.
/// Deterministic for a given seed on a given platform.
ComplexField random_band_limited(const GridSpec& g, std::uint64_t seed, double scale = 1.0);

}  // namespace rotgpe
