#include "resavg/io/outputs.hpp"

#include "resavg/common/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace resavg {

using nlohmann::json;

namespace {

long long parse_int(const std::string& s, const std::string& what) {
  long long x = 0;
  const char* b = s.data();
  const char* e = b + s.size();
  while (b < e && *b == ' ') ++b;
  while (e > b && e[-1] == ' ') --e;
  if (b < e && *b == '+') ++b;
  auto [p, ec] = std::from_chars(b, e, x);
  if (ec != std::errc() || p != e || b == e) throw ConfigError(what + ": expected an integer, got '" + s + "'");
  return x;
}

json sparse_json(const ResonanceVector& s) {
  json out = json::array();
  for (const auto& [i, c] : s.entries) out.push_back({i + 1, c});
  return out;
}

}  // namespace

ResonanceVector parse_sparse_vector(const std::string& text, std::size_t modes) {
  std::map<int, std::int64_t> acc;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ConfigError("s: entry '" + item + "' is not k:c");
    const long long k = parse_int(item.substr(0, colon), "s");
    const long long c = parse_int(item.substr(colon + 1), "s");
    if (k < 1 || static_cast<std::size_t>(k) > modes)
      throw ConfigError("s: mode index " + std::to_string(k) + " outside 1.." + std::to_string(modes));
    acc[static_cast<int>(k - 1)] += c;
  }
  ResonanceVector s;
  for (const auto& [i, c] : acc)
    if (c != 0) s.entries.emplace_back(i, c);
  if (s.empty()) throw ConfigError("s: vector is zero");
  return s;
}

std::string format_sparse_vector(const ResonanceVector& s) {
  std::string out;
  for (const auto& [i, c] : s.entries) {
    if (!out.empty()) out += ',';
    out += std::to_string(i + 1) + ':' + std::to_string(c);
  }
  return out;
}

json resonance_table_json(const ModeBasis& basis, const ResonanceTable& table, const ResonanceModule& module) {
  json j;
  j["dim"] = basis.dim();
  j["kmax"] = basis.kmax();
  j["period"] = to_string(basis.period());
  j["qstar"] = table.qstar;
  j["order"] = table.order_m;
  j["modes"] = basis.modes();
  json freqs = json::array();
  for (const auto& f : basis.freqs()) freqs.push_back(to_string(f));
  j["freqs"] = freqs;

  json tuples = json::array();
  const auto& t = table.tuples;
  for (std::size_t k = 0; k < t.outputs(); ++k) {
    json list = json::array();
    for (std::size_t n = 0; n < t.count(k); ++n) {
      json tuple = json::array();
      for (int leg : t.tuple(k, n)) tuple.push_back(leg + 1);
      list.push_back(std::move(tuple));
    }
    tuples.push_back(std::move(list));
  }
  j["tuples"] = std::move(tuples);

  json set = json::array();
  for (const auto& s : table.resonance_set) set.push_back(sparse_json(s));
  j["resonance_set"] = std::move(set);
  j["resonance_set_modes"] = table.set_modes;

  json m;
  m["rank"] = module.rank;
  m["zeta"] = module.zeta;
  json R = json::array();
  for (std::size_t i = 0; i < module.completion.rows; ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < module.completion.cols; ++c) row.push_back(module.completion(i, c));
    R.push_back(std::move(row));
  }
  m["R"] = std::move(R);
  m["eta"] = module.eta;
  m["lattice_index"] = nullptr;
  j["module"] = std::move(m);
  return j;
}

TrajectoryCsv::TrajectoryCsv(std::ostream& out, std::size_t modes, bool header) : out_(out), modes_(modes) {
  if (!header) return;
  out_ << "tau";
  for (std::size_t j = 1; j <= modes_; ++j) out_ << ",re_v" << j << ",im_v" << j;
  out_ << '\n';
}

void TrajectoryCsv::row(double tau, std::span<const Complex> v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", tau);
  out_ << buf;
  for (std::size_t j = 0; j < modes_; ++j) {
    std::snprintf(buf, sizeof buf, ",%.17g", v[j].real());
    out_ << buf;
    std::snprintf(buf, sizeof buf, ",%.17g", v[j].imag());
    out_ << buf;
  }
  out_ << '\n';
}

json to_json(const Checkpoint& c) {
  json amps = json::array();
  for (const auto& z : c.v) amps.push_back({z.real(), z.imag()});
  return json{{"config_digest", c.config_digest},
              {"scheme", c.scheme},
              {"tau", c.tau},
              {"h", c.h},
              {"step", c.step},
              {"total_steps", c.total_steps},
              {"amplitudes", std::move(amps)},
              {"rng",
               {{"algorithm", c.rng_algorithm},
                {"seed", c.stream.seed},
                {"trajectory", c.stream.trajectory},
                {"domain", c.stream.domain},
                {"next_step", c.next_step}}}};
}

Checkpoint checkpoint_from_json(const json& j) {
  Checkpoint c;
  try {
    c.config_digest = j.at("config_digest").get<std::string>();
    c.scheme = j.at("scheme").get<std::string>();
    c.tau = j.at("tau").get<double>();
    c.h = j.at("h").get<double>();
    c.step = j.at("step").get<std::uint64_t>();
    c.total_steps = j.at("total_steps").get<std::uint64_t>();
    for (const auto& a : j.at("amplitudes")) c.v.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    const auto& r = j.at("rng");
    c.rng_algorithm = r.at("algorithm").get<std::string>();
    c.stream.seed = r.at("seed").get<std::uint64_t>();
    c.stream.trajectory = r.at("trajectory").get<std::uint32_t>();
    c.stream.domain = r.at("domain").get<std::uint32_t>();
    c.next_step = r.at("next_step").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("checkpoint: ") + e.what());
  }
  if (c.rng_algorithm != kRngAlgorithm)
    throw ConfigError("checkpoint: rng algorithm '" + c.rng_algorithm + "' is not " + kRngAlgorithm);
  return c;
}

void save_checkpoint(const std::string& path, const Checkpoint& c) { write_json(path, to_json(c)); }

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

json to_json(const ConvergenceReport& r) {
  json per_nu = json::array();
  for (const auto& n : r.per_nu) {
    json modes = json::array();
    for (const auto& m : n.per_mode) modes.push_back({{"k", m.k + 1}, {"ks", m.ks}, {"w1", m.w1}});
    json joint = json::array();
    for (const auto& p : n.joint) joint.push_back({{"k1", p.k1 + 1}, {"k2", p.k2 + 1}, {"ks", p.ks}});
    per_nu.push_back({{"nu", n.nu},
                      {"per_mode", std::move(modes)},
                      {"aggregate", {{"ks", n.aggregate_ks}, {"w1", n.aggregate_w1}}},
                      {"aborted", n.aborted},
                      {"joint", std::move(joint)},
                      {"norm", {{"mean", n.norm_mean}, {"peak", n.norm_peak}, {"exp_moment", n.exp_moment}}}});
  }
  return json{{"per_nu", std::move(per_nu)},
              {"reference_aborted", r.reference_aborted},
              {"reference_norm", {{"mean", r.reference_norm_mean}, {"peak", r.reference_norm_peak},
                                  {"exp_moment", r.reference_exp_moment}}},
              {"norm_exponent", r.norm_exponent},
              {"moment_epsilon", r.moment_epsilon},
              {"trend_slope", r.trend_slope}};
}

json to_json(const BalanceResult& b) {
  return json{{"alpha", b.alpha_name}, {"alpha_weights", b.alpha}, {"lhs", b.lhs},
              {"lhs_stderr", b.lhs_stderr}, {"rhs", b.rhs}, {"rel_err", b.rel_err}};
}

json to_json(const PhaseTestResult& p) {
  return json{{"s", format_sparse_vector(p.s)},
              {"s_dot_lambda", to_string(p.s_dot_lambda)},
              {"resonant", p.resonant},
              {"kuiper", p.kuiper},
              {"threshold", p.threshold},
              {"alpha", p.alpha},
              {"n_eff", p.n_eff},
              {"samples", p.samples},
              {"verdict", p.verdict}};
}

json spectrum_json(const ModeBasis& basis, std::span<const double> mean_actions) {
  std::map<std::int64_t, std::pair<double, std::size_t>> shells;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto& s = shells[basis.sq_norms()[k]];
    s.first += mean_actions[k];
    ++s.second;
  }
  json sh = json::array();
  for (const auto& [n2, acc] : shells)
    sh.push_back({{"k_sq", n2}, {"modes", acc.second}, {"mean_action", acc.first / static_cast<double>(acc.second)}});
  return json{{"per_mode", std::vector<double>(mean_actions.begin(), mean_actions.end())}, {"shells", std::move(sh)}};
}

json to_json(const Report& r) {
  json j;
  j["config_digest"] = r.config_digest;
  j["rng_algorithm"] = kRngAlgorithm;
  j["version"] = kVersion;
  if (r.convergence) {
    const json c = to_json(*r.convergence);
    for (const auto& [key, value] : c.items()) j[key] = value;
  } else {
    j["per_nu"] = nullptr;
  }
  j["balance"] = r.balance ? to_json(*r.balance) : json(nullptr);
  json phases = json::array();
  for (const auto& p : r.phases) phases.push_back(to_json(p));
  j["phases"] = std::move(phases);
  j["details"] = r.extra;
  return j;
}

void write_json(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  if (path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError(path + ": cannot write");
  out << text;
}

}  // namespace resavg
