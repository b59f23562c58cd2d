// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include "modelset/autocorr.hpp"
#include "modelset/diagnostics.hpp"
#include "modelset/meyer.hpp"
#include "modelset/rng.hpp"
#include "modelset/spectral.hpp"
#include "modelset/torus.hpp"
#include "oracles.hpp"
#include "patches.hpp"
#include "properties.hpp"

using namespace modelset;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const double kSqrt5 = std::sqrt(5.0);
const double kTau = (1 + kSqrt5) / 2;

void density_law(Outcome& o) {
  auto t0 = Clock::now();
  auto p = enumerate_cut(*patches::fibonacci(), fixtures::fibonacci_window(), Box::cube(1, 0, 1e4));
  double predicted = kTau / kSqrt5;
  // the brute-force double loop is the count oracle
  auto ref = oracle::fibonacci_cut({-1.0L, oracle::kTau - 1.0L, false, true}, 0, 1e4);
  double err = std::fabs(static_cast<double>(p.size()) / 1e4 - predicted) / predicted;
  double secs = seconds_since(t0);
  o.detail << "count " << p.size() << ", predicted density " << predicted << ", rel err " << err << ", " << secs << " s";
  o.require(p.size() == ref.size(), "count differs from the double-loop oracle");
  o.require(err < 0.01, "relative error >= 1%");
  o.require(secs < 5, "runtime >= 5 s");
}

void metric_identity(Outcome& o) {
  auto t0 = Clock::now();
  auto s = patches::fibonacci();
  auto w = fixtures::fibonacci_window();
  const auto& p = patches::fib_large();
  auto boxes = VanHoveSequence::default_1d();
  auto table = eta_table(p, 50, boxes);
  auto xs = oracle::coords(p);
  Rng rng(2024);
  double worst_sym = 0;
  double worst_pred = 0;
  int tested = 0;
  while (tested < 20) {
    auto i = static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(table.deltas.size()) - 1));
    if (is_zero(table.delta_index[i])) continue;
    Translation t{table.deltas[i], table.delta_index[i]};
    double d = table.d(t);
    // symmetric difference by direct coordinate matching
    auto moved = oracle::coords(translate(p, t));
    double sym = oracle::symdiff(moved, xs, boxes.sizes.back());
    double pred = predicted_d(*s, w, *t.index);
    worst_sym = std::max(worst_sym, std::fabs(sym - d) / d);
    worst_pred = std::max({worst_pred, std::fabs(pred - d) / d, std::fabs(pred - sym) / sym});
    ++tested;
  }
  double secs = seconds_since(t0);
  o.detail << tested << " translations, max rel dev symdiff " << worst_sym << ", predicted " << worst_pred << ", "
           << secs << " s";
  o.require(worst_sym < 0.02, "symdiff vs 2(eta(0) - eta(t))");
  o.require(worst_pred < 0.02, "predicted_d");
  o.require(secs < 30, "runtime >= 30 s");
}

// Max gap of P_eps within [0, R] for the two radii, per eps fraction.
std::vector<std::pair<double, double>> gaps(const IndexedPointSet& p, double r1, double r2, const VanHoveSequence& boxes,
                                            std::vector<std::size_t>* members = nullptr) {
  auto big = eta_table(p, r2, boxes);
  std::vector<std::pair<double, double>> out;
  for (double f : {0.1, 0.2, 0.4}) {
    double eps = f * 2 * big.eta_zero();
    auto a2 = almost_periods(big, eps);
    // the smaller radius is the same table cut down to B_r1
    AutocorrelationTable small = big;
    small.radius = r1;
    small.deltas.clear();
    small.delta_index.clear();
    for (auto& row : small.eta) row.clear();
    for (std::size_t k = 0; k < big.deltas.size(); ++k) {
      if (max_norm(big.deltas[k]) > r1) continue;
      small.deltas.push_back(big.deltas[k]);
      if (!big.delta_index.empty()) small.delta_index.push_back(big.delta_index[k]);
      for (std::size_t b = 0; b < big.eta.size(); ++b) small.eta[b].push_back(big.eta[b][k]);
    }
    auto a1 = almost_periods(small, eps);
    if (members) {
      std::size_t n = 0;
      for (const auto& m : a2.members) n += m.delta.vec[0] > 0 ? 1 : 0;
      members->push_back(n);
    }
    out.emplace_back(a1.max_gap, a2.max_gap);
  }
  return out;
}

void almost_periods_criterion(Outcome& o) {
  auto p = enumerate_cut(*patches::fibonacci(), fixtures::fibonacci_window(), Box::cube(1, -12100, 12100));
  auto boxes = patches::boxes_1d({500, 1000, 2000});
  std::vector<std::size_t> members;
  auto fib = gaps(p, 5e3, 1e4, boxes, &members);
  o.detail << "fibonacci gaps (R=5e3 -> 1e4):";
  for (std::size_t i = 0; i < fib.size(); ++i) {
    auto [g1, g2] = fib[i];
    o.detail << " " << g1 << "->" << g2;
    o.require(members[i] > 0, "P_eps in (0, 1e4] empty");
    o.require(std::isfinite(g1) && std::isfinite(g2) && std::fabs(g2 - g1) / g1 <= 0.1, "gap not stable within 10%");
  }
  // random fixture at reduced scale: R = 500 -> 1000 on boxes up to 1000
  auto rnd = gaps(patches::random_patch(), 500, 1000, patches::boxes_1d({250, 500}));
  o.detail << "; random:";
  for (auto [g1, g2] : rnd) {
    o.detail << " " << g1 << "->" << g2;
    o.require(!std::isfinite(g2) || g2 > 2 * g1, "random fixture gap stays bounded");
  }
}

void reconstruction(Outcome& o) {
  auto truth = fixtures::fibonacci_window();
  const auto& p = patches::fib_large();
  auto a = reconstruct_window(restrict_to(p, Box::cube(1, -1e3, 1e3)), &truth);
  auto b = reconstruct_window(restrict_to(p, Box::cube(1, -4e3, 4e3)), &truth);
  o.require(a.hausdorff && b.hausdorff, "no Hausdorff distance");
  if (!a.hausdorff || !b.hausdorff) return;
  o.detail << "Hausdorff " << *a.hausdorff << " at 1e3, " << *b.hausdorff << " at 4e3";
  o.require(*a.hausdorff <= 0.01, "Hausdorff > 0.01 at [-1e3, 1e3]");
  o.require(*b.hausdorff < *a.hausdorff, "no improvement at [-4e3, 4e3]");
}

void pure_point(Outcome& o) {
  auto boxes = patches::boxes_1d({1000, 4000});
  auto t = diffraction_table(patches::fib_large(), *patches::fibonacci(), 3.0, 10, 42, boxes);
  double eta0 = t.entries.front().amplitude_by_box.back().real();
  double worst = 0;
  std::size_t visible = 0;
  for (const auto& e : t.entries) {
    // peaks below 1% of the central intensity are not resolved at n = 1e3
    if (e.intensity < 0.01 * eta0 * eta0) continue;
    ++visible;
    double i1 = std::norm(e.amplitude_by_box.front());
    worst = std::max(worst, std::fabs(i1 - e.intensity) / e.intensity);
  }
  double max_control = 0;
  for (const auto& c : t.controls) max_control = std::max(max_control, std::abs(c.amplitude_by_box.back()));
  o.detail << visible << " visible peaks, max fluctuation " << worst << ", max control |S| " << max_control
           << " (bound " << 0.05 * eta0 << ")";
  o.require(visible > 3, "too few visible peaks");
  o.require(worst < 0.05, "intensity fluctuation >= 5%");
  o.require(t.controls.size() == 10 && max_control < 0.05 * eta0, "control amplitude too large");

  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -4100, 4100));
  auto zt = diffraction_table(z, *patches::crystal(1), 3.0, 10, 42, boxes);
  bool integers = zt.entries.size() == 7;
  for (const auto& e : zt.entries) {
    integers = integers && e.k[0] == std::round(e.k[0]) && std::fabs(e.intensity - 1) < 1e-3;
  }
  o.detail << "; crystal peaks at integers " << (integers ? "yes" : "no") << ", max control " << zt.max_control;
  o.require(integers, "crystal peaks not exactly at integers");
  o.require(zt.max_control < 0.05, "crystal control amplitude too large");
}

void fiber_dichotomy(Outcome& o) {
  auto s = patches::fibonacci();
  auto w = fixtures::fibonacci_window();
  auto sep = separation_fraction(*s, w, 1000, 11, 1000);
  o.detail << sep.singular << "/" << sep.samples << " singular (exact " << sep.exact << ")";
  o.require(sep.exact && sep.samples == 1000 && sep.singular == 0, "generic samples singular");

  // h = -3: the stars of (2, 0) and (3, -1) land on -1 and tau - 1
  auto tp = beta_of_cut(*s, ExactVec{QuadraticNumber(0)}, ExactVec{QuadraticNumber(-3)});
  auto rep = fiber_enumerate(s, w, tp, 1000);
  // fiber indices are relative to the torus representative; positions are not
  auto key = [](double x) { return std::llround(x * 1e6); };
  std::set<long long> hit;
  for (const auto& b : rep.hits) hit.insert(key(b.physical[0]));
  std::set<long long> diff;
  if (rep.elements.size() == 2) {
    std::set<long long> a;
    std::set<long long> b;
    for (const auto& v : rep.elements[0].physical) a.insert(key(v[0]));
    for (const auto& v : rep.elements[1].physical) b.insert(key(v[0]));
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(diff, diff.end()));
  }
  // hit orbit oracle: stars of the lattice points in [-1e3, 1e3] landing exactly on -3 + dW
  std::set<long long> orbit;
  auto tau1 = fixtures::golden() - QuadraticNumber(1);
  for (auto [n0, n1] : oracle::fibonacci_cut({-1.0L + 3 - 1e-6L, oracle::kTau - 1.0L + 3 + 1e-6L, true, true}, -1e3, 1e3)) {
    IndexVec n{n0, n1};
    auto h = QuadraticNumber(-3) + s->exact_star(n)[0];
    if (h == QuadraticNumber(-1) || h == tau1) orbit.insert(key(s->physical(n)[0]));
  }
  o.detail << "; endpoint fiber has " << rep.elements.size() << " elements, symdiff " << diff.size() << ", hit orbit "
           << orbit.size();
  o.require(rep.elements.size() == 2, "endpoint fiber not two elements");
  o.require(!orbit.empty() && diff == orbit && hit == orbit, "symmetric difference differs from the hit orbit");
}

void cornerstone(Outcome& o) {
  // the generic window: no star on the boundary, so eps(M) is not pinned by
  // an endpoint coincidence
  const auto& p = patches::fib_generic();
  auto table = eta_table(p, 500, patches::boxes_1d({250, 500, 1000}));
  const double ms[] = {5, 10, 20, 40};
  auto rows = continuity_epsilon(p, table, ms);
  o.detail << "eps(M):";
  std::size_t checked = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    o.detail << " " << rows[i].epsilon;
    o.require(rows[i].epsilon > 0, "eps(M) not positive");
    if (i > 0) o.require(rows[i].epsilon <= rows[i - 1].epsilon, "eps(M) increases");
    Box core = Box::cube(1, -rows[i].m, rows[i].m);
    for (std::size_t k = 0; k < table.deltas.size(); ++k) {
      Translation t{table.deltas[k], table.delta_index[k]};
      if (table.d(t) >= rows[i].epsilon) continue;
      ++checked;
      // independent check on coordinates, not indices
      auto a = oracle::coords(restrict_to(translate(p, t), core));
      auto b = oracle::coords(restrict_to(p, core));
      bool same = a.size() == b.size();
      for (std::size_t j = 0; same && j < a.size(); ++j) same = std::fabs(a[j] - b[j]) < 1e-7;
      o.require(same, "almost period fails the patch match");
    }
  }
  o.detail << "; " << checked << " almost periods verified";
}

void meyer_certificates(Outcome& o) {
  auto p = restrict_to(patches::fib_large(), Box::cube(1, -2000, 2000));
  auto k = meyer_constants(p, 1000, 200, 1);
  auto pool = restrict_to(p, Box::cube(1, 0, 500));
  PointLookup look(p);
  Rng rng(7);
  std::size_t valid = 0;
  std::int64_t worst = 0;
  for (int i = 0; i < 100; ++i) {
    auto x = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
    auto y = pool.index[static_cast<std::size_t>(rng.integer(0, static_cast<std::int64_t>(pool.size()) - 1))];
    try {
      auto c = stepping_certificate(p, x, y, k);
      bool members = std::all_of(c.chain.begin(), c.chain.end(), [&](const ChainStep& st) {
        return look.find_index(*st.p.index) && look.find_index(*st.q.index);
      });
      IndexVec last = c.chain.empty() ? IndexVec{} : *c.chain.back().q.index;
      auto f = (y - x) - last;
      bool ok = c.valid && members && l1_norm(f) <= 2 * c.m * static_cast<std::int64_t>(c.big_m);
      valid += ok ? 1 : 0;
      worst = std::max(worst, l1_norm(f));
    } catch (const ChainFailure&) {
    }
  }
  auto cover = m1_cover(p, 50);
  o.detail << valid << "/100 certificates valid, max |f| " << worst << " vs 2mM " << 2 * k.m * static_cast<std::int64_t>(k.big_m)
           << "; card(F) " << cover.card_r << " at R=50, " << cover.card_2r << " at R=100";
  o.require(valid == 100, "a certificate failed");
  o.require(cover.card_r == cover.card_2r, "card(F) changes");
}

void crystallographic(Outcome& o) {
  auto z = restrict_to(patches::crystal_patch(), Box::cube(1, -2000, 2000));
  auto periods = period_candidates(z, 10);
  bool gen1 = periods.generators.size() == 1 && std::fabs(periods.generators[0].vec[0]) == 1.0;
  o.require(gen1 && periods.full_rank, "generator 1 not found");

  const double r = 100;
  auto table = eta_table(z, r, patches::boxes_1d({500, 1000}));
  bool all_z = true;
  for (double f : {0.1, 0.2, 0.4}) {
    auto ap = almost_periods(table, f * 2 * table.eta_zero());
    all_z = all_z && ap.members.size() == 2 * static_cast<std::size_t>(r) + 1;
  }
  o.require(all_z, "P_eps differs from Z cap B_R");

  auto s = patches::crystal(1);
  Rng rng(5);
  std::size_t singular = 0;
  for (int i = 0; i < 200; ++i) {
    auto tp = embed_translation(*s, Vec{rng.uniform(0, 1), 0, 0});
    singular += singularity_test(*s, WindowSpec::whole(), tp, 100).empty() ? 0 : 1;
  }
  o.require(singular == 0, "a crystal fiber is not a singleton");

  auto fib = period_candidates(restrict_to(patches::fib_large(), Box::cube(1, -400, 400)), 100);
  bool trivial = fib.periods.size() == 1 && max_norm(fib.periods[0].vec) == 0;
  o.require(trivial, "fibonacci has a nonzero period");
  o.detail << "Z generator " << (gen1 ? "1" : "?") << ", P_eps = Z cap B_R " << (all_z ? "yes" : "no") << ", "
           << singular << "/200 singular crystal samples, fibonacci periods " << fib.periods.size();
}

void invariants(Outcome& o) {
  auto t0 = Clock::now();
  std::size_t failed = 0;
  const auto& all = properties::all();
  for (const auto& p : all) {
    std::string why;
    try {
      why = p.check();
    } catch (const std::exception& e) {
      why = std::string("threw ") + e.what();
    }
    if (!why.empty()) {
      ++failed;
      o.detail << " [" << p.module << ": " << p.name << ": " << why << "]";
    }
  }
  double secs = seconds_since(t0);
  o.detail << " " << all.size() - failed << "/" << all.size() << " properties hold, " << secs << " s";
  o.pass = failed == 0 && secs < 300;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<void(Outcome&)> run;
  };
  const Criterion criteria[] = {
      {1, "density law", density_law},
      {2, "metric identity", metric_identity},
      {3, "almost periods", almost_periods_criterion},
      {4, "window reconstruction", reconstruction},
      {5, "pure-point diagnostic", pure_point},
      {6, "fiber dichotomy", fiber_dichotomy},
      {7, "cornerstone continuity", cornerstone},
      {8, "Meyer certificates", meyer_certificates},
      {9, "crystallographic case", crystallographic},
      {10, "invariant suites", invariants},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " [threw " << e.what() << "]";
    }
    std::printf("%s %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
