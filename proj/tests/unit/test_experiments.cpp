#include "doctest.h"

#include "oracles.hpp"
#include "test_util.hpp"

#include "resavg/dynamics/evaluators.hpp"
#include "resavg/dynamics/observables.hpp"
#include "resavg/experiments/convergence.hpp"
#include "resavg/experiments/ensemble.hpp"
#include "resavg/experiments/phase_test.hpp"
#include "resavg/experiments/stationary.hpp"
#include "resavg/experiments/statistics.hpp"
#include "resavg/lattice/resonance_module.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace resavg;

namespace {

std::vector<double> sorted_sample(std::size_t n, std::uint64_t seed, double shift = 0.0) {
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> e(1.0);
  std::vector<double> x(n);
  for (auto& v : x) v = e(gen) + shift;
  std::sort(x.begin(), x.end());
  return x;
}

Model small_model(double rho, std::optional<double> nu, double horizon, std::uint64_t seed = 7,
                  int dim = 1, int kmax = 1, double b0 = 0.5, double dt = 1e-2) {
  auto basis = build_mode_basis(dim, kmax);
  auto cfg = make_sim_config(basis, nu, rho, 1, DampingProfile{}, b0, 1.0, dt, horizon, seed);
  return Model(std::move(basis), cfg);
}

ResonanceVector rv(std::initializer_list<std::pair<int, std::int64_t>> e) {
  ResonanceVector s;
  s.entries.assign(e.begin(), e.end());
  return s;
}

}  // namespace

TEST_CASE("law distances on point masses and identical samples") {
  const std::vector<double> a{0, 0}, b{1, 1};
  auto d = action_law_distance(a, b);
  CHECK(d.ks == 1.0);
  CHECK(d.w1 == 1.0);
  auto self = action_law_distance(b, b);
  CHECK(self.ks == 0.0);
  CHECK(self.w1 == 0.0);
  const std::vector<double> c{0, 1, 2, 3};
  const std::vector<double> e{0.5};
  // On [0.5, 1) F_c = 1/4 and F_e = 1; W1 = E|X - 0.5|.
  auto ce = action_law_distance(c, e);
  CHECK(ce.ks == doctest::Approx(0.75));
  CHECK(ce.w1 == doctest::Approx(1.25));
}

TEST_CASE("law distances are metrics on random samples") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto x = sorted_sample(50 + seed, seed, 0.0);
    const auto y = sorted_sample(80, seed + 100, 0.1 * static_cast<double>(seed % 3));
    const auto z = sorted_sample(33, seed + 200, -0.2);
    const auto xy = action_law_distance(x, y), yx = action_law_distance(y, x);
    CHECK(xy.ks == doctest::Approx(yx.ks).epsilon(1e-14));
    CHECK(xy.w1 == doctest::Approx(yx.w1).epsilon(1e-12));
    const auto xz = action_law_distance(x, z), yz = action_law_distance(y, z);
    CHECK(xz.ks <= xy.ks + yz.ks + 1e-12);
    CHECK(xz.w1 <= xy.w1 + yz.w1 + 1e-12);
    CHECK(xy.ks > 0.0);
    // W1 of a pure shift is the shift.
    std::vector<double> shifted(x);
    for (auto& v : shifted) v += 0.75;
    CHECK(action_law_distance(x, shifted).w1 == doctest::Approx(0.75).epsilon(1e-12));
  }
}

TEST_CASE("joint KS sees dependence that the marginals miss") {
  using P = std::pair<double, double>;
  const std::vector<P> a{{0, 0}, {1, 1}};
  const std::vector<P> b{{0, 1}, {1, 0}};
  CHECK(joint_ks_distance(a, a) == 0.0);
  CHECK(joint_ks_distance(a, b) == doctest::Approx(0.5));
  CHECK(joint_ks_distance(std::vector<P>{{0, 0}}, std::vector<P>{{2, 2}}) == doctest::Approx(1.0));

  std::mt19937_64 gen(4);
  std::normal_distribution<double> g;
  std::vector<P> x(23), y(31);
  for (auto& p : x) p = {g(gen), g(gen)};
  for (auto& p : y) p = {g(gen), g(gen) + 0.5};
  double brute = 0.0;
  auto cdf = [](const std::vector<P>& s, double u, double v) {
    double c = 0.0;
    for (const auto& p : s) c += (p.first <= u && p.second <= v) ? 1.0 : 0.0;
    return c / static_cast<double>(s.size());
  };
  std::vector<P> pooled = x;
  pooled.insert(pooled.end(), y.begin(), y.end());
  for (const auto& p : pooled)
    for (const auto& q : pooled)
      brute = std::max(brute, std::abs(cdf(x, p.first, q.second) - cdf(y, p.first, q.second)));
  CHECK(joint_ks_distance(x, y) == doctest::Approx(brute).epsilon(1e-12));
}

TEST_CASE("KS critical value matches the asymptotic formula") {
  CHECK(ks_critical_value(0.01, 100, 100) == doctest::Approx(1.6276 * std::sqrt(0.02)).epsilon(1e-3));
  CHECK(ks_critical_value(0.05, 512, 512) == doctest::Approx(1.3581 * std::sqrt(2.0 / 512)).epsilon(1e-3));
}

TEST_CASE("Kuiper statistic on synthetic inputs") {
  const double two_pi = 2 * std::numbers::pi;
  SUBCASE("point mass is maximal") {
    std::vector<double> constant(1000, 1.234);
    CHECK(kuiper_statistic(constant) == doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("irrational rotation is accepted as uniform") {
    // phi(t) = t W with s . W = 1 - sqrt(2) != 0.
    const ModeBasis basis = build_mode_basis(1, 1);
    std::vector<double> angles;
    const double W1 = 1.0, W2 = std::sqrt(2.0);
    for (int i = 0; i < 4000; ++i) {
      const double t = 0.37 * i;
      angles.push_back(wrap_angle(t * W1 - t * W2));
    }
    const double V = kuiper_statistic(angles);
    CHECK(V < kuiper_critical_value(0.01, static_cast<double>(angles.size())));
    auto r = phase_equidistribution_test(angles, rv({{1, 1}}), basis, angles.size());
    CHECK(r.verdict == "uniform");
    CHECK((r.s_dot_lambda == Rational(1)));
  }
  SUBCASE("tail and critical value are consistent") {
    for (double n : {10.0, 100.0, 1000.0}) {
      const double v = kuiper_critical_value(0.01, n);
      CHECK(kuiper_tail(v, n) == doctest::Approx(0.01).epsilon(1e-3));
      CHECK(kuiper_tail(v * 1.1, n) < 0.01);
    }
    // Large-n limit: lambda_crit ~ 2.001 at 1%.
    CHECK(kuiper_critical_value(0.01, 1e8) * 1e4 == doctest::Approx(2.0009).epsilon(2e-3));
  }
  SUBCASE("uniform samples pass at roughly the nominal rate") {
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> u(0.0, two_pi);
    int rejections = 0;
    for (int rep = 0; rep < 400; ++rep) {
      std::vector<double> x(200);
      for (auto& v : x) v = u(gen);
      rejections += kuiper_statistic(x) > kuiper_critical_value(0.05, 200.0);
    }
    CHECK(rejections > 5);
    CHECK(rejections < 40);
  }
}

TEST_CASE("equidistribution test rejects resonant probes") {
  const ModeBasis basis = build_mode_basis(1, 1);
  std::vector<double> angles{0.1, 0.2};
  // modes (0), (-1), (1): lambda = 0, 1, 1.
  CHECK_THROWS_AS(phase_equidistribution_test(angles, rv({{1, 1}, {2, -1}}), basis, 2), std::invalid_argument);
  auto r = phase_contrast_test(angles, rv({{1, 1}, {2, -1}}), basis, 2);
  CHECK(r.resonant);
}

TEST_CASE("ensemble with T = 0 duplicates the initial observables") {
  const Model model = small_model(1.0, std::nullopt, 1.0);
  EnsembleSpec spec;
  spec.trajectories = 2;
  spec.sample_times = {0.0};
  spec.initial = testing::random_state(model.size(), 3);
  const auto s = run_ensemble(model, spec);
  REQUIRE(s.completed == 2);
  for (std::size_t k = 0; k < model.size(); ++k) {
    const double I = action(spec.initial[k]);
    CHECK(s.actions[0][k] == std::vector<double>{I, I});
    CHECK(s.action_mean[0][k] == doctest::Approx(I));
    CHECK(s.action_variance[0][k] == doctest::Approx(0.0));
  }
}

TEST_CASE("norm monitor tracks the h^r norm") {
  const Model model = small_model(1.0, std::nullopt, 1.0);
  EnsembleSpec spec;
  spec.trajectories = 3;
  spec.sample_times = {0.0, 1.0};
  spec.initial = testing::random_state(model.size(), 5);
  const auto s = run_ensemble(model, spec);
  const double n0 = hr_norm(model.basis(), spec.initial, model.config().noise.r);
  CHECK(s.norm_exponent == model.config().noise.r);
  REQUIRE(s.norm_mean.size() == 2);
  CHECK(s.norm_mean[0] == doctest::Approx(n0));
  CHECK(s.norm_peak >= n0);
  CHECK(s.norm_peak >= s.norm_mean[1]);
  double mass = 0.0;
  for (const auto& z : spec.initial) mass += std::norm(z);
  CHECK(s.exp_moment[0] == doctest::Approx(std::exp(spec.moment_epsilon * mass)));
}

TEST_CASE("ensembles are deterministic and independent of the thread count") {
  const Model model = small_model(1.0, 0.1, 1.0, 11, 2, 1);
  EnsembleSpec spec;
  spec.scheme = Scheme::kFull;
  spec.trajectories = 9;
  spec.sample_times = {0.5, 1.0};
  spec.phase_probes = {rv({{1, 1}})};
  spec.average_from = 0.25;
  spec.resonance_histogram_bins = 8;
  const auto a = run_ensemble(model, spec);
  spec.threads = 4;
  const auto b = run_ensemble(model, spec);
  CHECK(a.actions == b.actions);
  CHECK(a.probe_phases == b.probe_phases);
  CHECK(a.time_average == b.time_average);
  CHECK(a.resonance_histograms == b.resonance_histograms);
  spec.domain = kReferenceDomain;
  CHECK(run_ensemble(model, spec).actions != a.actions);
}

TEST_CASE("self-distance of effective ensembles sits at the noise floor") {
  const Model model = small_model(1.0, std::nullopt, 1.0, 21, 1, 1);
  EnsembleSpec spec;
  spec.trajectories = 400;
  spec.sample_times = {1.0};
  const auto a = run_ensemble(model, spec);
  spec.domain = 5;
  const auto b = run_ensemble(model, spec);
  const auto r = compare_ensembles(a, b);
  const double crit = ks_critical_value(0.01, 400, 400);
  for (const auto& m : r.per_mode) CHECK(m.ks < crit);
  CHECK(compare_ensembles(a, a).aggregate_ks == 0.0);
}

TEST_CASE("convergence sweep validates the nu list") {
  const Model model = small_model(1.0, std::nullopt, 0.1);
  EnsembleSpec spec;
  spec.sample_times = {0.1};
  const std::vector<double> bad{0.1, 0.3};
  CHECK_THROWS_AS(convergence_sweep(model, spec, bad), std::invalid_argument);
  const std::vector<double> good{0.3, 0.1};
  const auto r = convergence_sweep(model, spec, good);
  CHECK(r.per_nu.size() == 2);
  CHECK(r.per_nu[1].nu == 0.1);
}

TEST_CASE("OU stationary mean from the effective equation with rho = 0") {
  // E|v|^2 -> b^2 / gamma, so E I -> b^2 / (2 gamma), checked through the time
  // average over a long window.
  auto basis = build_mode_basis(1, 1);
  auto cfg = make_sim_config(basis, std::nullopt, 0.0, 1, DampingProfile{}, 0.8, 1.0, 5e-3, 60.0, 3);
  cfg.rho = 0.0;
  const Model model(basis, cfg);
  EnsembleSpec spec;
  spec.trajectories = 16;
  spec.average_from = 5.0;
  spec.average_stride = 20;
  const auto s = run_ensemble(model, spec);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const double b = cfg.noise.amplitudes[k], g = cfg.gamma[k];
    const double exact = oracles::oracle_ou_action_law(g, b, 0.0, 1e9).mean;
    CHECK(exact == doctest::Approx(b * b / (2 * g)));
    // Euler bias of the noise-only scheme is O(gamma h); allow 3 standard errors plus that.
    CHECK(std::abs(s.time_average[k] - exact) < 3 * s.time_average_stderr[k] + 2 * g * 5e-3 * exact);
  }
}

TEST_CASE("balance weights and admissibility") {
  const ModeBasis basis = build_mode_basis(2, 1);
  const auto table = build_resonance_table(basis, 1);
  const auto module = resonance_module_basis(table.resonance_set, basis.size());
  const auto mass = alpha_weights(parse_alpha("mass"), basis, module);
  const auto energy = alpha_weights(parse_alpha("energy"), basis, module);
  CHECK(is_admissible(mass, table.resonance_set));
  CHECK(is_admissible(energy, table.resonance_set));
  for (std::size_t j = 0; j < module.eta.size(); ++j)
    CHECK(is_admissible(alpha_weights(parse_alpha("dual:" + std::to_string(j + 1)), basis, module),
                        table.resonance_set));
  CHECK_THROWS_AS(parse_alpha("dual:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_alpha("momentum"), std::invalid_argument);
  CHECK_THROWS_AS(alpha_weights(parse_alpha("dual:999"), basis, module), std::invalid_argument);

  // A single-mode weight on a mode involved in a resonance is not admissible.
  std::vector<Rational> bad(basis.size(), Rational(0));
  bad[1] = Rational(1);
  CHECK_FALSE(is_admissible(bad, table.resonance_set));
  EnsembleSummary fake;
  fake.modes = basis.size();
  fake.time_average.assign(basis.size(), 1.0);
  const auto cfg = make_sim_config(basis, std::nullopt, 1.0, 1, DampingProfile{}, 1.0, 1.0, 1e-3, 1.0);
  CHECK_THROWS_AS(stationary_balance(fake, cfg, bad, table.resonance_set), std::invalid_argument);
  const auto ok = stationary_balance(fake, cfg, mass, table.resonance_set, "mass");
  double lhs = 0, rhs = 0;
  for (std::size_t j = 0; j < basis.size(); ++j) {
    lhs += 2 * cfg.gamma[j];
    rhs += cfg.noise.amplitudes[j] * cfg.noise.amplitudes[j];
  }
  CHECK(ok.lhs == doctest::Approx(lhs));
  CHECK(ok.rhs == doctest::Approx(rhs));
}
