#include "oracles.hpp"

#include "resavg/dynamics/steppers.hpp"
#include "resavg/lattice/interaction_tuples.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace resavg::oracles {
namespace {

ModeBasis fixture_basis(const nlohmann::json& f) {
  return build_mode_basis(f.at("dim").get<int>(), f.at("kmax").get<int>(),
                          parse_rational(f.value("period", std::string("1"))));
}

std::vector<std::complex<double>> fixture_state(const nlohmann::json& f, std::size_t n) {
  std::vector<std::complex<double>> v(n);
  if (f.contains("v")) {
    const auto& arr = f.at("v");
    if (arr.size() != n) throw std::invalid_argument("fixture: v has wrong length");
    for (std::size_t j = 0; j < n; ++j) v[j] = {arr[j].at(0).get<double>(), arr[j].at(1).get<double>()};
    return v;
  }
  std::mt19937_64 gen(f.value("seed", std::uint64_t{1}));
  std::normal_distribution<double> g(0.0, f.value("scale", 0.5));
  for (auto& z : v) z = {g(gen), g(gen)};
  return v;
}

nlohmann::json complex_array(const std::vector<std::complex<double>>& v) {
  auto arr = nlohmann::json::array();
  for (const auto& z : v) arr.push_back({z.real(), z.imag()});
  return arr;
}

OracleReport run_convolution(const nlohmann::json& f) {
  const ModeBasis basis = fixture_basis(f);
  const int qstar = f.at("qstar").get<int>();
  const double rho = f.value("rho", 1.0);
  const auto v = fixture_state(f, basis.size());
  const auto expected = oracle_convolution(v, qstar, basis, rho);

  SimConfig cfg = make_sim_config(basis, 1.0, rho, qstar, DampingProfile{}, 1.0, 1.0, 1e-3, 1.0);
  const Model model(basis, cfg);
  const auto got = eval_nonlinearity_full(model, v);

  double diff = 0.0, scale = 0.0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    diff = std::max(diff, std::abs(got[k] - expected[k]));
    scale = std::max(scale, std::abs(expected[k]));
  }
  OracleReport r;
  r.name = "convolution";
  r.instance = "dim=" + std::to_string(basis.dim()) + " kmax=" + std::to_string(basis.kmax()) +
               " qstar=" + std::to_string(qstar);
  r.oracle_value = complex_array(expected);
  r.implementation_value = complex_array(got);
  r.discrepancy = scale > 0.0 ? diff / scale : diff;
  r.norm = "max_k |impl - oracle| / max_k |oracle|";
  return r;
}

OracleReport run_resonance_enumeration(const nlohmann::json& f) {
  const ModeBasis basis = fixture_basis(f);
  const int qstar = f.at("qstar").get<int>();
  const auto expected = oracle_resonance_enumeration(basis, qstar);
  const TupleTable table = enumerate_interaction_tuples(basis, qstar);

  std::set<OracleTuple> got;
  for (std::size_t k = 0; k < table.outputs(); ++k) {
    for (std::size_t t = 0; t < table.count(k); ++t) {
      const auto legs = table.tuple(k, t);
      got.insert({static_cast<int>(k), std::vector<int>(legs.begin(), legs.end())});
    }
  }
  const std::set<OracleTuple> want(expected.begin(), expected.end());
  std::vector<OracleTuple> sym;
  std::set_symmetric_difference(want.begin(), want.end(), got.begin(), got.end(),
                                std::back_inserter(sym));
  OracleReport r;
  r.name = "resonance_enumeration";
  r.instance = "dim=" + std::to_string(basis.dim()) + " kmax=" + std::to_string(basis.kmax()) +
               " qstar=" + std::to_string(qstar);
  r.oracle_value = {{"tuples", want.size()}};
  r.implementation_value = {{"tuples", got.size()}};
  r.discrepancy = static_cast<double>(sym.size());
  r.norm = "size of the symmetric difference of the tuple sets";
  return r;
}

OracleReport run_ou_action_law(const nlohmann::json& f) {
  const double gamma = f.at("gamma").get<double>();
  const double b = f.at("b").get<double>();
  const double I0 = f.value("I0", 0.0);
  const double tau = f.at("tau").get<double>();
  const double nu = f.value("nu", 1.0);
  const double dt = f.value("dt", 1e-3);
  const int M = f.value("trajectories", 512);
  const std::size_t mode = f.value("mode", std::size_t{2}) - 1;
  const std::uint64_t seed = f.value("seed", std::uint64_t{0});
  const auto law = oracle_ou_action_law(gamma, b, I0, tau);

  const ModeBasis basis = build_mode_basis(1, 1);
  if (mode >= basis.size()) throw std::invalid_argument("fixture: mode out of range");
  SimConfig cfg = make_sim_config(basis, nu, 0.0, 1, DampingProfile::polynomial({gamma}), b, 0.0,
                                  dt, tau, seed);
  const Model model(basis, cfg);
  const TimeGrid grid = make_time_grid(tau, max_step(cfg, Scheme::kFull));
  double sum = 0.0, sum2 = 0.0;
  for (int m = 0; m < M; ++m) {
    ModeState s;
    s.v.assign(basis.size(), std::sqrt(2.0 * I0));
    integrate(model, Scheme::kFull, {seed, static_cast<std::uint32_t>(m), 0}, grid.h, s, 0,
              grid.steps);
    const double I = 0.5 * std::norm(s.v[mode]);
    sum += I;
    sum2 += I * I;
  }
  const double mean = sum / M;
  const double var = (sum2 - M * mean * mean) / (M - 1);
  OracleReport r;
  r.name = "ou_action_law";
  r.instance = "gamma=" + std::to_string(gamma) + " b=" + std::to_string(b) +
               " tau=" + std::to_string(tau) + " M=" + std::to_string(M);
  r.oracle_value = {{"mean", law.mean}, {"variance", law.variance}};
  r.implementation_value = {{"mean", mean}, {"variance", var}};
  const double se = std::sqrt(law.variance / M);
  r.discrepancy = se > 0.0 ? std::abs(mean - law.mean) / se : std::abs(mean - law.mean);
  r.norm = "|sample mean - exact mean| in standard errors";
  return r;
}

}  // namespace

OracleReport run_oracle(const std::string& name, const nlohmann::json& fixture) {
  if (name == "convolution") return run_convolution(fixture);
  if (name == "resonance_enumeration") return run_resonance_enumeration(fixture);
  if (name == "ou_action_law") return run_ou_action_law(fixture);
  throw std::invalid_argument("unknown oracle '" + name +
                              "' (convolution, resonance_enumeration, ou_action_law)");
}

}  // namespace resavg::oracles
