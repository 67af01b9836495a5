#include "rggmst/sampling.hpp"

#include "rggmst/rng.hpp"

namespace rggmst {

namespace {

Point uniform_point(Rng& rng) {
  const double x = rng.uniform();
  return {x, rng.uniform()};
}

// Draws from the density proportional to g, where 0 <= g <= envelope.
template <class Weight>
Point rejection_draw(Rng& rng, double envelope, Weight&& g, std::uint64_t& proposals) {
  for (;;) {
    const Point p = uniform_point(rng);
    ++proposals;
    if (rng.uniform() * envelope < g(p)) return p;
  }
}

void append_f_points(PointSet& out, std::uint64_t count, const DensitySpec& density, Rng& rng) {
  out.points.reserve(out.points.size() + count);
  for (std::uint64_t i = 0; i < count; ++i) {
    out.points.push_back(rejection_draw(rng, density.eps2(), density, out.proposals));
  }
}

}  // namespace

std::vector<Point> PointSet::with_color(Color c) const {
  std::vector<Point> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (colors.empty() ? c == Color::Green : colors[i] == c) out.push_back(points[i]);
  }
  return out;
}

PointSet PointSet::without(std::size_t index) const {
  PointSet out;
  out.process = process;
  out.seed = seed;
  out.intensity = intensity;
  out.points.reserve(points.size() - 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i != index) out.points.push_back(points[i]);
  }
  return out;
}

PointSet sample_binomial(std::uint64_t n, const DensitySpec& density, std::uint64_t seed) {
  Rng rng(seed);
  PointSet out;
  out.process = Process::Binomial;
  out.seed = seed;
  out.intensity = static_cast<double>(n);
  append_f_points(out, n, density, rng);
  return out;
}

PointSet sample_poisson(double n, const DensitySpec& density, std::uint64_t seed) {
  Rng rng(seed);
  PointSet out;
  out.process = Process::Poisson;
  out.seed = seed;
  out.intensity = n;
  append_f_points(out, rng.poisson(n), density, rng);
  return out;
}

PointSet sample_homogeneous_poisson(double rate, std::uint64_t seed) {
  Rng rng(seed);
  PointSet out;
  out.process = Process::HomogeneousPoisson;
  out.seed = seed;
  out.intensity = rate;
  const auto count = rng.poisson(rate);
  out.points.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) out.points.push_back(uniform_point(rng));
  return out;
}

PointSet sample_coupled(double n, const DensitySpec& density, AlphaRegime regime,
                        std::uint64_t seed) {
  Rng rng(seed);
  Rng red_rng = rng.split(1);
  PointSet out;
  out.process = Process::CoupledSuperposition;
  out.seed = seed;
  out.intensity = n;

  const double e1 = density.eps1();
  const double e2 = density.eps2();
  const double envelope = e2 - e1;
  std::uint64_t red_proposals = 0;

  if (regime == AlphaRegime::AtMostOne) {
    append_f_points(out, rng.poisson(n), density, rng);
    const std::size_t green = out.points.size();
    const auto red = red_rng.poisson(n * (e2 - 1.0));
    for (std::uint64_t i = 0; i < red; ++i) {
      out.points.push_back(rejection_draw(
          red_rng, envelope, [&](Point p) { return e2 - density(p); }, red_proposals));
    }
    out.colors.assign(green, Color::Green);
  } else {
    const auto green = rng.poisson(n * e1);
    for (std::uint64_t i = 0; i < green; ++i) out.points.push_back(uniform_point(rng));
    const auto red = red_rng.poisson(n * (1.0 - e1));
    for (std::uint64_t i = 0; i < red; ++i) {
      out.points.push_back(rejection_draw(
          red_rng, envelope, [&](Point p) { return density(p) - e1; }, red_proposals));
    }
    out.colors.assign(green, Color::Green);
  }
  out.colors.resize(out.points.size(), Color::Red);
  return out;
}

}  // namespace rggmst
