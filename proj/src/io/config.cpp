#include "resavg/io/config.hpp"

#include "resavg/common/errors.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace resavg {

namespace {

using boost::property_tree::ptree;

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  s = s.substr(b, e - b + 1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw ConfigError(path + ": " + msg);
}

class Section {
 public:
  Section(const ptree* tree, std::string name, std::set<std::string> allowed)
      : tree_(tree), name_(std::move(name)) {
    if (!tree_) return;
    for (const auto& [key, child] : *tree_) {
      if (!child.empty()) fail(path(key), "nested keys are not supported");
      if (!allowed.count(key)) fail(path(key), "unknown key");
    }
  }

  std::optional<std::string> raw(const std::string& key) const {
    if (!tree_) return std::nullopt;
    auto it = tree_->find(key);
    if (it == tree_->not_found()) return std::nullopt;
    return trim(it->second.data());
  }

  double real(const std::string& key, double fallback) const {
    auto v = raw(key);
    return v ? parse_real(key, *v) : fallback;
  }

  std::optional<double> optional_real(const std::string& key) const {
    auto v = raw(key);
    if (!v) return std::nullopt;
    return parse_real(key, *v);
  }

  long long integer(const std::string& key, long long fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    long long x = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || p != v->data() + v->size()) fail(path(key), "expected an integer, got '" + *v + "'");
    return x;
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    auto v = raw(key);
    if (!v) return fallback;
    std::uint64_t x = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), x);
    if (ec != std::errc() || p != v->data() + v->size())
      fail(path(key), "expected a non-negative 64-bit integer, got '" + *v + "'");
    return x;
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    auto v = raw(key);
    return v ? *v : fallback;
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  double parse_real(const std::string& key, const std::string& v) const {
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || !std::isfinite(x))
      fail(path(key), "expected a finite number, got '" + v + "'");
    return x;
  }

 private:
  const ptree* tree_;
  std::string name_;
};

std::vector<double> parse_list(const Section& s, const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(s.parse_real(key, trim(item)));
  return out;
}

std::string format_real(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

ConfigDocument parse_config(const std::string& text, const std::string& source) {
  ptree root;
  try {
    std::istringstream in(text);
    boost::property_tree::read_ini(in, root);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(source + ": " + e.message() + " (line " + std::to_string(e.line()) + ")");
  }

  const std::set<std::string> sections{"model", "damping", "noise", "integration", "run", "initial"};
  for (const auto& [key, child] : root) {
    if (child.empty()) fail(key, "keys must live inside a [section]");
    if (!sections.count(key)) fail(key, "unknown section");
  }
  auto child = [&](const std::string& name) -> const ptree* {
    auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
  };

  ConfigDocument d;
  const Section model(child("model"), "model", {"dim", "kmax", "period", "qstar", "rho"});
  d.dim = static_cast<int>(model.integer("dim", d.dim));
  d.kmax = static_cast<int>(model.integer("kmax", d.kmax));
  if (auto p = model.raw("period")) {
    try {
      d.period = parse_rational(*p);
    } catch (const std::exception& e) {
      fail("model.period", e.what());
    }
  }
  d.qstar = static_cast<int>(model.integer("qstar", d.qstar));
  d.rho = model.real("rho", d.rho);
  if (d.dim < 1 || d.dim > 3) fail("model.dim", "must be 1, 2 or 3");
  if (d.kmax < 1) fail("model.kmax", "must be >= 1");
  if (d.period.numerator() <= 0) fail("model.period", "must be positive");
  if (d.qstar < 0) fail("model.qstar", "must be >= 0");
  if (!(d.rho > 0.0)) fail("model.rho", "must be positive");

  const Section damping(child("damping"), "damping", {"type", "c1", "c0", "coefficients"});
  const std::string dtype = damping.text("type", "affine");
  if (dtype == "affine") {
    if (damping.raw("coefficients")) fail("damping.coefficients", "only valid for type = polynomial");
    const double c1 = damping.real("c1", 1.0);
    const double c0 = damping.real("c0", 1.0);
    if (!(c1 > 0.0)) fail("damping.c1", "must be positive (f(t) >= C1 t + C2 with C1 > 0)");
    if (!(c0 > 0.0)) fail("damping.c0", "must be positive (f(t) >= C1 t + C2 with C2 > 0)");
    d.damping = DampingProfile::affine(c1, c0);
  } else if (dtype == "polynomial") {
    if (damping.raw("c1") || damping.raw("c0")) fail("damping", "c1/c0 are only valid for type = affine");
    auto raw = damping.raw("coefficients");
    if (!raw) fail("damping.coefficients", "required for type = polynomial");
    auto coeffs = parse_list(damping, "coefficients", *raw);
    while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
    if (coeffs.size() < 2 || !(coeffs.back() > 0.0))
      fail("damping.coefficients", "need degree >= 1 with a positive leading coefficient");
    if (!(coeffs.front() > 0.0)) fail("damping.coefficients", "f(0) must be positive");
    d.damping = DampingProfile::polynomial(coeffs);
  } else {
    fail("damping.type", "expected affine or polynomial, got '" + dtype + "'");
  }

  const Section noise(child("noise"), "noise", {"profile", "b0", "decay_p", "r"});
  d.noise_profile = noise.text("profile", d.noise_profile);
  if (d.noise_profile != "power_law") fail("noise.profile", "only power_law is supported");
  d.b0 = noise.real("b0", d.b0);
  d.decay_p = noise.real("decay_p", d.decay_p);
  d.r = static_cast<int>(noise.integer("r", d.r));
  if (d.b0 == 0.0) fail("noise.b0", "must be non-zero (every b_k must be non-zero)");
  if (d.r < 0) fail("noise.r", "must be >= 0");

  const Section integ(child("integration"), "integration", {"dt", "horizon", "nu", "scheme"});
  d.dt = integ.real("dt", d.dt);
  d.horizon = integ.real("horizon", d.horizon);
  d.nu = integ.optional_real("nu");
  d.scheme = integ.text("scheme", d.scheme);
  if (!(d.dt > 0.0)) fail("integration.dt", "must be positive");
  if (!(d.horizon > 0.0)) fail("integration.horizon", "must be positive");
  if (d.nu && !(*d.nu > 0.0)) fail("integration.nu", "must be positive");
  if (d.scheme != "default") fail("integration.scheme", "only 'default' is available");

  const Section run(child("run"), "run", {"seed", "save_every"});
  d.seed = run.unsigned_integer("seed", d.seed);
  d.save_every = run.unsigned_integer("save_every", d.save_every);
  if (d.save_every == 0) fail("run.save_every", "must be >= 1");

  const Section init(child("initial"), "initial", {"type", "amplitude", "decay_p"});
  d.initial_type = init.text("type", d.initial_type);
  if (d.initial_type == "zero") {
    if (init.raw("amplitude") || init.raw("decay_p")) fail("initial", "amplitude/decay_p need type = profile");
  } else if (d.initial_type == "profile") {
    d.initial_amplitude = init.real("amplitude", 0.0);
    d.initial_decay_p = init.real("decay_p", 0.0);
  } else {
    fail("initial.type", "expected zero or profile, got '" + d.initial_type + "'");
  }
  return d;
}

ConfigDocument load_config_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

nlohmann::json canonical_json(const ConfigDocument& d) {
  nlohmann::json j;
  j["model"] = {{"dim", d.dim}, {"kmax", d.kmax}, {"period", to_string(d.period)},
                {"qstar", d.qstar}, {"rho", d.rho}};
  j["damping"] = {{"type", d.damping.type}, {"coefficients", d.damping.coefficients}};
  j["noise"] = {{"profile", d.noise_profile}, {"b0", d.b0}, {"decay_p", d.decay_p}, {"r", d.r}};
  j["integration"] = {{"dt", d.dt}, {"horizon", d.horizon}, {"scheme", d.scheme},
                      {"nu", d.nu ? nlohmann::json(*d.nu) : nlohmann::json(nullptr)}};
  j["run"] = {{"seed", d.seed}, {"save_every", d.save_every}};
  j["initial"] = {{"type", d.initial_type}, {"amplitude", d.initial_amplitude},
                  {"decay_p", d.initial_decay_p}};
  return j;
}

std::string config_digest(const ConfigDocument& doc) {
  const std::string text = canonical_json(doc).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream os;
  for (unsigned i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string to_ini(const ConfigDocument& d) {
  std::ostringstream os;
  os << "[model]\ndim = " << d.dim << "\nkmax = " << d.kmax << "\nperiod = " << to_string(d.period)
     << "\nqstar = " << d.qstar << "\nrho = " << format_real(d.rho) << "\n\n[damping]\n";
  if (d.damping.type == "affine") {
    os << "type = affine\nc1 = " << format_real(d.damping.coefficients.at(1))
       << "\nc0 = " << format_real(d.damping.coefficients.at(0)) << "\n";
  } else {
    os << "type = polynomial\ncoefficients = ";
    for (std::size_t i = 0; i < d.damping.coefficients.size(); ++i)
      os << (i ? ", " : "") << format_real(d.damping.coefficients[i]);
    os << "\n";
  }
  os << "\n[noise]\nprofile = " << d.noise_profile << "\nb0 = " << format_real(d.b0)
     << "\ndecay_p = " << format_real(d.decay_p) << "\nr = " << d.r << "\n\n[integration]\ndt = "
     << format_real(d.dt) << "\nhorizon = " << format_real(d.horizon) << "\n";
  if (d.nu) os << "nu = " << format_real(*d.nu) << "\n";
  os << "scheme = " << d.scheme << "\n\n[run]\nseed = " << d.seed << "\nsave_every = " << d.save_every
     << "\n\n[initial]\ntype = " << d.initial_type << "\n";
  if (d.initial_type == "profile")
    os << "amplitude = " << format_real(d.initial_amplitude) << "\ndecay_p = " << format_real(d.initial_decay_p) << "\n";
  return os.str();
}

LoadedConfig realize_config(const ConfigDocument& doc) {
  LoadedConfig c;
  c.doc = doc;
  try {
    c.basis = build_mode_basis(doc.dim, doc.kmax, doc.period);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("model: ") + e.what());
  }
  c.sim = make_sim_config(c.basis, doc.nu, doc.rho, doc.qstar, doc.damping, doc.b0, doc.decay_p,
                          doc.dt, doc.horizon, doc.seed, doc.r);
  c.sim.scheme = doc.scheme;
  for (std::size_t k = 0; k < c.basis.size(); ++k) {
    if (!(c.sim.gamma[k] > 0.0))
      throw ConfigError("damping: gamma_" + std::to_string(k + 1) + " = f(lambda) is not positive");
    const double b = c.sim.noise.amplitudes[k];
    if (b == 0.0 || !std::isfinite(b))
      throw ConfigError("noise: b_" + std::to_string(k + 1) + " is zero or not finite");
  }
  if (!std::isfinite(c.sim.noise.B_r)) throw ConfigError("noise: B_r is not finite");
  c.digest = config_digest(doc);
  return c;
}

LoadedConfig load_config(const std::string& path) { return realize_config(load_config_document(path)); }

std::vector<std::complex<double>> initial_state(const ConfigDocument& doc, const ModeBasis& basis) {
  std::vector<std::complex<double>> v(basis.size());
  if (doc.initial_type == "profile") {
    for (std::size_t k = 0; k < basis.size(); ++k)
      v[k] = doc.initial_amplitude * std::pow(1.0 + basis.lambdas()[k], -doc.initial_decay_p);
  }
  return v;
}

}  // namespace resavg
