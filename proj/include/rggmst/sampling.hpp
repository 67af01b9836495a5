#pragma once

#include <cstdint>
#include <vector>

#include "rggmst/density.hpp"

namespace rggmst {

enum class Process { Binomial, Poisson, HomogeneousPoisson, CoupledSuperposition };
enum class Color : std::uint8_t { Green, Red };

/// Which coupling of the inhomogeneous process with a homogeneous one.
///  - AtMostOne: green ~ n f, red ~ n (eps2 - f), union homogeneous n eps2.
///  - AboveOne:  green homogeneous n eps1, red ~ n (f - eps1), union ~ n f.
enum class AlphaRegime { AtMostOne, AboveOne };

[[nodiscard]] constexpr AlphaRegime regime_for(double alpha) noexcept {
  return alpha <= 1.0 ? AlphaRegime::AtMostOne : AlphaRegime::AboveOne;
}

struct PointSet {
  std::vector<Point> points;
  Process process = Process::Binomial;
  std::vector<Color> colors;  // empty unless coupled
  std::uint64_t seed = 0;
  double intensity = 0.0;       // n for all processes
  std::uint64_t proposals = 0;  // rejection-sampler candidates drawn for f-distributed points

  [[nodiscard]] std::size_t size() const noexcept { return points.size(); }

  /// Points of one color, in their original order.
  [[nodiscard]] std::vector<Point> with_color(Color c) const;

  /// Copy without point `index`; colors are dropped along with it.
  [[nodiscard]] PointSet without(std::size_t index) const;
};

/// Exactly n i.i.d. points with density f, by rejection against eps2.
PointSet sample_binomial(std::uint64_t n, const DensitySpec& density, std::uint64_t seed);

/// Poisson process with intensity n f: N ~ Poisson(n), then N i.i.d. draws.
PointSet sample_poisson(double n, const DensitySpec& density, std::uint64_t seed);

/// Homogeneous Poisson process with intensity `rate` (already multiplied by n).
PointSet sample_homogeneous_poisson(double rate, std::uint64_t seed);

/// Two-colour superposition realising both coupled processes on one configuration.
/// Green points come first, then red.
PointSet sample_coupled(double n, const DensitySpec& density, AlphaRegime regime,
                        std::uint64_t seed);

}  // namespace rggmst
