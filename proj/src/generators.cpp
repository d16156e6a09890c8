#include "fnk/generators.hpp"

#include <algorithm>
#include <array>

#include "fnk/nd_automorphism.hpp"

namespace fnk {

std::uint64_t Rng::next_u64() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::next_unit() {
  // 53 random bits, uniform in [0, 1)
  return double(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return r.next_u64();
}

namespace {

// Sorted interior knots with pairwise (and boundary) gaps of at least
// min_gap, so interpolant slopes stay bounded. Deterministic rejection
// loop with an equispaced fallback.
std::vector<double> interior_knots(Rng& rng, int k, double min_gap) {
  std::vector<double> knots(static_cast<std::size_t>(k));
  for (int attempt = 0; attempt < 1000; ++attempt) {
    for (auto& v : knots) v = rng.next_unit();
    std::sort(knots.begin(), knots.end());
    bool ok = knots.front() >= min_gap && knots.back() <= 1.0 - min_gap;
    for (size_t i = 1; ok && i < knots.size(); ++i)
      ok = knots[i] - knots[i - 1] >= min_gap;
    if (ok) return knots;
  }
  for (int i = 0; i < k; ++i) knots[size_t(i)] = double(i + 1) / (k + 1);
  return knots;
}

constexpr double kKnotGap = 0.05;

}  // namespace

UnitAutomorphism gen_unit_automorphism(std::uint64_t seed, int knots) {
  if (knots < 1) throw argument_error("gen_unit_automorphism: need at least one knot");
  Rng rng(seed);
  auto xs = interior_knots(rng, knots, kKnotGap);
  auto ys = interior_knots(rng, knots, kKnotGap);
  std::vector<std::array<double, 2>> pts;
  pts.reserve(size_t(knots) + 2);
  pts.push_back({0.0, 0.0});
  for (int i = 0; i < knots; ++i) pts.push_back({xs[size_t(i)], ys[size_t(i)]});
  pts.push_back({1.0, 1.0});
  return UnitAutomorphism::piecewise_linear(std::move(pts));
}

UnitNegation gen_unit_negation(std::uint64_t seed, int knots) {
  if (knots < 1) throw argument_error("gen_unit_negation: need at least one knot");
  Rng rng(seed);
  auto xs = interior_knots(rng, knots, kKnotGap);
  auto ys = interior_knots(rng, knots, kKnotGap);
  std::sort(ys.rbegin(), ys.rend());
  std::vector<std::array<double, 2>> pts;
  pts.reserve(size_t(knots) + 2);
  pts.push_back({0.0, 1.0});
  for (int i = 0; i < knots; ++i) pts.push_back({xs[size_t(i)], ys[size_t(i)]});
  pts.push_back({1.0, 0.0});
  return UnitNegation::piecewise_linear(std::move(pts));
}

NDimNegation gen_negation(std::uint64_t seed, NegationKind kind, int n) {
  switch (kind) {
    case NegationKind::random:
      return NDimNegation::representable(gen_unit_negation(derive_seed(seed, 0)), n);
    case NegationKind::strong:
      return NDimNegation::strong_from_auto(NDimAutomorphism::from_unit(
          gen_unit_automorphism(derive_seed(seed, 0)), n));
    case NegationKind::representable: {
      // Shared x-knots, per-knot running maxima: a strictly decreasing
      // pointwise nondecreasing chain N1 <= ... <= Nn.
      Rng rng(derive_seed(seed, 0));
      const int knots = 5;
      auto xs = interior_knots(rng, knots, kKnotGap);
      std::vector<std::vector<double>> ys(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        Rng comp(derive_seed(seed, std::uint64_t(i) + 1));
        ys[size_t(i)] = interior_knots(comp, knots, kKnotGap);
        std::sort(ys[size_t(i)].rbegin(), ys[size_t(i)].rend());
        if (i > 0)
          for (int j = 0; j < knots; ++j)
            ys[size_t(i)][size_t(j)] =
                std::max(ys[size_t(i)][size_t(j)], ys[size_t(i - 1)][size_t(j)]);
      }
      std::vector<UnitNegation> negs;
      negs.reserve(size_t(n));
      for (int i = 0; i < n; ++i) {
        std::vector<std::array<double, 2>> pts;
        pts.push_back({0.0, 1.0});
        for (int j = 0; j < knots; ++j)
          pts.push_back({xs[size_t(j)], ys[size_t(i)][size_t(j)]});
        pts.push_back({1.0, 0.0});
        negs.push_back(UnitNegation::piecewise_linear(std::move(pts)));
      }
      return NDimNegation::representable(std::move(negs));
    }
    case NegationKind::non_representable:
      return NDimNegation::collapse(gen_unit_negation(derive_seed(seed, 0)), n);
  }
  throw argument_error("gen_negation: unknown kind");
}

}  // namespace fnk
