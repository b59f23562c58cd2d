#include "modelset/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "modelset/errors.hpp"
#include "modelset/parallel.hpp"
#include "modelset/rng.hpp"
#include "modelset/torus.hpp"

namespace modelset {

std::vector<Complex> weyl_sum(const IndexedPointSet& p, const Vec& k, const VanHoveSequence& boxes) {
  const Box big = boxes.largest();
  if (!p.region.contains(big)) throw Error(ErrorCode::RegionTooSmall, "largest box must lie inside the region");
  const std::size_t levels = boxes.size();
  auto [first, last] = slab(p, big.lo[0], big.hi[0]);
  const std::size_t n = last - first;
  std::vector<std::vector<Complex>> partial(block_count(n), std::vector<Complex>(levels));
  parallel_for_blocks(partial.size(), [&](std::size_t b) {
    auto& acc = partial[b];
    std::size_t lo = first + b * kBlockSize;
    std::size_t hi = std::min(last, lo + kBlockSize);
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t l = boxes.first_containing(p.physical[i]);
      if (l == levels) continue;
      // phase reduced to [-1/2, 1/2] symmetrically, so S(-k) is exactly conj S(k)
      double phase = dot(k, p.physical[i]);
      double angle = 2.0 * std::numbers::pi * (phase - std::round(phase));
      acc[l] += Complex(std::cos(angle), -std::sin(angle));
    }
  });
  std::vector<Complex> out(levels);
  Complex run{};
  for (std::size_t l = 0; l < levels; ++l) {
    for (const auto& part : partial) run += part[l];
    out[l] = run / boxes.box(l).volume();
  }
  return out;
}

namespace {

Peak make_peak(const IndexedPointSet& p, const Vec& k, const VanHoveSequence& boxes, bool control) {
  Peak pk;
  pk.k = k;
  pk.amplitude_by_box = weyl_sum(p, k, boxes);
  pk.intensity = std::norm(pk.amplitude_by_box.back());
  pk.is_control = control;
  return pk;
}

Vec random_direction(Rng& rng, int dim) {
  if (dim == 1) return {rng.uniform() < 0.5 ? -1.0 : 1.0, 0.0, 0.0};
  if (dim == 2) {
    double a = 2.0 * std::numbers::pi * rng.uniform();
    return {std::cos(a), std::sin(a), 0.0};
  }
  double z = rng.uniform(-1.0, 1.0);
  double a = 2.0 * std::numbers::pi * rng.uniform();
  double s = std::sqrt(1.0 - z * z);
  return {s * std::cos(a), s * std::sin(a), z};
}

}  // namespace

PeakTable diffraction_table(const IndexedPointSet& p, std::span<const Vec> candidates, double k_max,
                            std::size_t n_controls, std::uint64_t seed, const VanHoveSequence& boxes) {
  PeakTable tab;
  tab.sizes = boxes.sizes;
  for (const auto& k : candidates) tab.entries.push_back(make_peak(p, k, boxes, false));
  std::stable_sort(tab.entries.begin(), tab.entries.end(),
                   [](const Peak& a, const Peak& b) { return norm(a.k) < norm(b.k); });
  Rng rng(seed);
  for (std::size_t c = 0; c < n_controls; ++c) {
    Vec k{};
    bool ok = false;
    for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
      k = rng.uniform(k_max / 4.0, k_max) * random_direction(rng, p.dim);
      ok = std::none_of(candidates.begin(), candidates.end(), [&](const Vec& q) { return norm(q - k) < 1e-3; });
    }
    if (!ok) throw Error(ErrorCode::InvalidArgument, "no control frequency clear of the candidates");
    tab.controls.push_back(make_peak(p, k, boxes, true));
    tab.max_control = std::max(tab.max_control, std::abs(tab.controls.back().amplitude_by_box.back()));
  }
  return tab;
}

PeakTable diffraction_table(const IndexedPointSet& p, const LatticeScheme& scheme, double k_max,
                            std::size_t n_controls, std::uint64_t seed, const VanHoveSequence& boxes,
                            double internal_max) {
  std::vector<Vec> ks;
  for (const auto& c : dual_candidates(scheme, k_max, internal_max)) ks.push_back(c.k);
  return diffraction_table(p, ks, k_max, n_controls, seed, boxes);
}

SeparationReport separation_fraction(const LatticeScheme& scheme, const WindowSpec& window, std::size_t samples,
                                     std::uint64_t seed, double radius) {
  constexpr std::int64_t kDen = 1000003;
  SeparationReport rep;
  rep.samples = samples;
  rep.exact = scheme.is_exact() && window.is_exact();
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    TorusPoint tp;
    if (rep.exact) {
      ExactVec c;
      for (int i = 0; i < scheme.rank(); ++i) c.emplace_back(Rational(rng.integer(0, kDen - 1), kDen));
      tp = torus_point(c);
    } else {
      std::vector<double> c;
      for (int i = 0; i < scheme.rank(); ++i) c.push_back(rng.uniform());
      tp = torus_point(std::move(c));
    }
    if (!singularity_test(scheme, window, tp, radius).empty()) ++rep.singular;
  }
  rep.fraction = samples == 0 ? 0.0 : static_cast<double>(rep.singular) / static_cast<double>(samples);
  return rep;
}

}  // namespace modelset
