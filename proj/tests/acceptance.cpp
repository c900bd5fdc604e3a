// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/core.h>

#include "entangle/runner.hpp"
#include "entangle/stats.hpp"

using namespace entangle;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what) {
  fmt::print("[{}] AC{} {}\n", ok ? "PASS" : "FAIL", n, what);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class F>
void guarded(int n, F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    f();
  } catch (const std::exception& e) {
    report(n, false, std::string("threw: ") + e.what());
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("      ({:.1f} s)\n", s);
}

ExperimentConfig config(Ensemble e, std::uint64_t n, std::vector<Gate> gates = {}, std::uint64_t seed = 1) {
  ExperimentConfig c;
  c.ensemble = e;
  c.samples = n;
  c.gates = std::move(gates);
  c.seed = seed;
  c.exec = Executor::hardware();
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

double max_mean(const ConditionalCurve& c) {
  double m = -1.0;
  for (std::size_t i = 0; i < c.axis().bins; ++i)
    if (c.mean(i)) m = std::max(m, *c.mean(i));
  return m;
}

void ac1() {
  const auto r = entanglement_histogram(config(Ensemble::Pure, 1'000'000));
  const double target = 1.0 / (3.0 * std::log(2.0));
  const double m = r.entanglement.mean();
  report(1, std::abs(m - target) <= 0.005, fmt::format("pure <E> = {:.5f}, expected {:.5f} +- 0.005", m, target));
}

void ac2() {
  const auto r = entanglement_histogram(config(Ensemble::All, 1'000'000));
  const double m = r.entanglement.mean();
  report(2, std::abs(m - 0.03) <= 0.01, fmt::format("all-states <E> = {:.5f}, expected 0.03 +- 0.01", m));
}

void ac3() {
  const auto r = gate_from_separable(config(Ensemble::All, 100'000, {Gate::cnot(), Gate::u_theta(M_PI / 4)}));
  const double cx = r.per_gate[0].moments.mean(), q = r.per_gate[1].moments.mean();
  report(3, std::abs(cx - 0.0052) <= 0.002 && std::abs(q - 0.0023) <= 0.001,
         fmt::format("from separable ({} accepted): CNOT <E_F> = {:.5f} (0.0052 +- 0.002), pi/4 <E_F> = {:.5f} "
                     "(0.0023 +- 0.001)",
                     r.accepted, cx, q));
}

void ac4() {
  const auto r = mean_final_vs_initial(config(Ensemble::Pure, 1'000'000, {Gate::cnot(), Gate::u_theta(M_PI / 4)}));
  const auto crossing = find_crossing(r.per_gate[0].curve, r.per_gate[1].curve);
  const auto& q = r.per_gate[1].curve;
  const std::size_t top = q.axis().bins - 1;
  const double top_mean = q.mean(top).value_or(std::nan(""));
  const bool ok = crossing && std::abs(*crossing - 0.53) <= 0.05 && std::abs(top_mean - 0.738) <= 0.02;
  report(4, ok,
         fmt::format("pure curves cross at E0 = {} (0.53 +- 0.05); pi/4 top bin <E_F> = {:.4f} (0.738 +- 0.02, "
                     "n = {})",
                     crossing ? fmt::format("{:.4f}", *crossing) : "none", top_mean, q.count(top)));
}

void ac5() {
  RngStream rng(20'001, 0);
  const Gate cx = Gate::cnot(), half = Gate::u_theta(M_PI / 2), quarter = Gate::u_theta(M_PI / 4);
  double worst = 0.0;
  for (int k = 0; k < 10'000; ++k) {
    double v[4], n = 0.0;
    for (auto& x : v) {
      x = rng.normal();
      n += x * x;
    }
    for (auto& x : v) x /= std::sqrt(n);
    const double a = v[0], b = v[1], c = v[2], d = v[3];
    const auto rho = density_from_pure(PureState(a, b, c, d));
    auto c2 = [](const DensityMatrix& s) {
      const double x = concurrence(s);
      return x * x;
    };
    const double expected[4] = {
        4.0 * (a * d - b * c) * (a * d - b * c),
        4.0 * (a * c - b * d) * (a * c - b * d),
        4.0 * (a * c + b * d) * (a * c + b * d),
        2.0 * (a * a + b * b) * (c * c + d * d) + 4.0 * ((-a * a + b * b) * c * d + (c * c - d * d) * a * b),
    };
    const double got[4] = {c2(rho), c2(apply(cx, rho)), c2(apply(half, rho)), c2(apply(quarter, rho))};
    for (int i = 0; i < 4; ++i) worst = std::max(worst, std::abs(got[i] - expected[i]));
  }
  report(5, worst <= 1e-9, fmt::format("10^4 real pure states: max |C^2 - closed form| = {:.2e} (<= 1e-9)", worst));
}

void ac6() {
  const auto r = delta_e_distribution(config(Ensemble::All, 100'000, {parse_gate("theta:0")}));
  const auto& h = r.per_gate[0].histogram;
  const std::size_t z = *h.axis().index(0.0);
  const bool ok = h.counts()[z] == h.total() && r.per_gate[0].moments.mean() == 0.0 &&
                  r.per_gate[0].moments.variance() == 0.0;
  report(6, ok, fmt::format("theta = 0: {} of {} samples in the dE = 0 bin, max |dE| = {}", h.counts()[z], h.total(),
                            r.per_gate[0].moments.variance() == 0.0 ? "0" : "nonzero"));
}

void ac7() {
  RngStream rng(20'002, 0);
  const auto v = haar_unitary(rng);
  const auto s = unitary_invariance_samples(config(Ensemble::All, 100'000, {}, 7), v);
  const auto ks = ks_two_sample(s.before, s.after, 0.01);
  report(7, ks.passes(),
         fmt::format("KS before vs after a fixed Haar unitary, 10^5 per side: D = {:.5f}, critical {:.5f}",
                     ks.statistic, ks.critical));
}

void ac8() {
  struct Count {
    std::uint64_t disagree = 0, separable = 0;
    void merge(const Count& o) {
      disagree += o.disagree;
      separable += o.separable;
    }
  };
  const auto r = reduce_blocks<Count>(
      100'000, [] { return Count{}; },
      [](Count& acc, std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
        RngStream rng(20'003, stream_id(1, b));
        for (std::uint64_t s = begin; s < end; ++s) {
          const auto rho = sample_mixed(rng);
          const bool sep = double(concurrence(rho)) == 0.0;
          acc.separable += sep;
          acc.disagree += sep != is_ppt_separable(rho);
        }
      },
      Executor::hardware());
  report(8, r.disagree == 0,
         fmt::format("10^5 mixed states: {} separable, {} PPT/concurrence disagreements", r.separable, r.disagree));
}

void ac9() {
  auto c = config(Ensemble::All, 100'000, {Gate::cnot()});
  c.bins = 51;
  c.max_attempts = 100'000'000;
  const auto lo = initial_stats_vs_delta_at_fixed_R(c, participation_band(1.4, 0.01));
  const auto hi = initial_stats_vs_delta_at_fixed_R(c, participation_band(2.2, 0.01));
  const auto& a = lo.per_gate[0].curve;
  const auto& b = hi.per_gate[0].curve;
  const std::size_t za = *a.axis().index(0.0), zb = *b.axis().index(0.0);
  const double ma = max_mean(a), mb = max_mean(b);
  const bool va = variance_local_max(a, za), vb = variance_local_max(b, zb);
  report(9, mb < ma && va && vb,
         fmt::format("max <E0>: R=2.2 {:.4f} < R=1.4 {:.4f}; variance local max at dE = 0: R=1.4 {}, R=2.2 {}", mb,
                     ma, va, vb));
}

void ac10() {
  const auto pure = delta_e_distribution(config(Ensemble::Pure, 100'000, {Gate::cnot()}));
  const auto all = delta_e_distribution(config(Ensemble::All, 100'000, {Gate::cnot()}));
  const std::size_t z = *pure.per_gate[0].histogram.axis().index(0.0);
  const double mp = pure.per_gate[0].histogram.mass(z), ma = all.per_gate[0].histogram.mass(z);
  const auto& m = all.per_gate[0].moments;
  const double lower = m.mean() - 3.0 * m.stderr_mean();
  report(10, ma > mp && lower <= 0.0,
         fmt::format("dE = 0 bin mass: all {:.4f} > pure {:.4f}; CNOT mean dE (all) = {:.5f} +- {:.5f}, "
                     "mean - 3 sigma = {:.5f} <= 0",
                     ma, mp, m.mean(), m.stderr_mean(), lower));
}

void ac11() {
  const fs::path root = fs::temp_directory_path() / "entangle_acceptance";
  fs::remove_all(root);
  RunSettings s;
  s.samples = 20'000;
  s.seed = 11;
  s.out = (root / "a").string();
  const auto ra = run_figure(FigureId::Fig3b, s);
  s.out = (root / "b").string();
  s.streams = 1;
  const auto rb = run_figure(FigureId::Fig3b, s);
  bool identical = true;
  for (const auto& f : ra.files)
    if (f.extension() == ".csv") identical = identical && slurp(f) == slurp(rb.directory / f.filename());

  struct Acc {
    Histogram hist{BinAxis::unit(kDefaultEntanglementBins)};
    void merge(const Acc& o) { hist.merge(o.hist); }
  };
  auto fn = [](Acc& acc, std::uint64_t b, std::uint64_t begin, std::uint64_t end) {
    RngStream rng(20'004, stream_id(2, b));
    for (std::uint64_t k = begin; k < end; ++k) acc.hist.add(entanglement_of_formation(sample_mixed(rng)));
  };
  const std::uint64_t n = 100'000, nb = block_count(n);
  const auto whole = reduce_blocks_serial<Acc>(n, 0, nb, [] { return Acc{}; }, fn);
  bool merged_ok = true;
  for (std::uint64_t k : {2u, 3u, 7u}) {
    Acc merged;
    for (std::uint64_t i = 0; i < k; ++i)
      merged.merge(reduce_blocks_serial<Acc>(n, nb * i / k, nb * (i + 1) / k, [] { return Acc{}; }, fn));
    merged_ok = merged_ok && merged.hist == whole.hist;
  }
  fs::remove_all(root);
  report(11, identical && merged_ok,
         fmt::format("seeded reruns byte-identical: {}; 2/3/7-shard merges equal single stream: {}", identical,
                     merged_ok));
}

} // namespace

int main() {
  guarded(1, ac1);
  guarded(2, ac2);
  guarded(3, ac3);
  guarded(4, ac4);
  guarded(5, ac5);
  guarded(6, ac6);
  guarded(7, ac7);
  guarded(8, ac8);
  guarded(9, ac9);
  guarded(10, ac10);
  guarded(11, ac11);
  fmt::print("{} of 11 criteria passed\n", 11 - failures);
  return failures ? 1 : 0;
}
