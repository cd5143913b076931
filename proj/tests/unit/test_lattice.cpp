#include "doctest.h"

#include "oracles.hpp"

#include "resavg/common/errors.hpp"
#include "resavg/lattice/interaction_tuples.hpp"
#include "resavg/lattice/resonance_module.hpp"
#include "resavg/lattice/resonance_set.hpp"
#include "resavg/lattice/trig_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace resavg;

namespace {

std::set<oracles::OracleTuple> table_as_set(const TupleTable& table) {
  std::set<oracles::OracleTuple> out;
  for (std::size_t k = 0; k < table.outputs(); ++k)
    for (std::size_t t = 0; t < table.count(k); ++t) {
      auto legs = table.tuple(k, t);
      out.insert({static_cast<int>(k), {legs.begin(), legs.end()}});
    }
  return out;
}

std::vector<std::int64_t> dense(const ResonanceVector& s, std::size_t n) { return s.dense(n); }

std::int64_t dot(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

TEST_CASE("mode basis: small examples") {
  auto b1 = build_mode_basis(1, 1);
  REQUIRE(b1.size() == 3);
  CHECK(b1.mode(0) == Wavevector{0});
  CHECK(b1.mode(1) == Wavevector{-1});
  CHECK(b1.mode(2) == Wavevector{1});
  CHECK(b1.freqs() == std::vector<Rational>{0, 1, 1});

  auto b2 = build_mode_basis(2, 1);
  REQUIRE(b2.size() == 9);
  std::vector<Rational> want{0, 1, 1, 1, 1, 2, 2, 2, 2};
  CHECK(b2.freqs() == want);

  auto b3 = build_mode_basis(1, 3, Rational(2));
  auto j = b3.index_of({3});
  REQUIRE(j);
  CHECK((b3.freqs()[*j] == Rational(9, 4)));
}

TEST_CASE("mode basis: invariants") {
  for (int d = 1; d <= 3; ++d) {
    auto basis = build_mode_basis(d, 2, Rational(3, 2));
    CHECK(is_zero(basis.freqs()[0]));
    CHECK(std::is_sorted(basis.freqs().begin(), basis.freqs().end()));
    std::size_t expect = 1;
    for (int i = 0; i < d; ++i) expect *= 5;
    CHECK(basis.size() == expect);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      CHECK(basis.index_of(basis.mode(j)) == j);
      CHECK((basis.freqs()[j] * basis.period() * basis.period() == Rational(basis.sq_norms()[j])));
    }
  }
}

TEST_CASE("mode basis: guards") {
  CHECK_THROWS_AS(build_mode_basis(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mode_basis(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_mode_basis(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_mode_basis(1, 1, Rational(-1)), std::invalid_argument);
  CHECK_THROWS_AS(build_mode_basis(3, 20, Rational(1), 1000), ResourceGuardError);
  CHECK_FALSE(build_mode_basis(2, 2).index_of({3, 0}).has_value());
}

TEST_CASE("tuples: 1d cubic closure") {
  auto basis = build_mode_basis(1, 8);
  auto table = enumerate_interaction_tuples(basis, 1);
  for (std::size_t k = 0; k < table.outputs(); ++k) {
    for (std::size_t t = 0; t < table.count(k); ++t) {
      auto l = table.tuple(k, t);
      std::multiset<int> lhs{l[0], l[1]}, rhs{l[2], static_cast<int>(k)};
      CHECK(lhs == rhs);
    }
    // {(a,k;a)} u {(k,a;a)}: 2N - 1 distinct tuples.
    CHECK(table.count(k) == 2 * basis.size() - 1);
  }
}

TEST_CASE("tuples: 2d rectangle is resonant") {
  auto basis = build_mode_basis(2, 1);
  auto table = enumerate_interaction_tuples(basis, 1);
  const int a = static_cast<int>(*basis.index_of({1, 0}));
  const int b = static_cast<int>(*basis.index_of({0, 1}));
  const int c = static_cast<int>(*basis.index_of({0, 0}));
  const std::size_t k = *basis.index_of({1, 1});
  bool found = false;
  for (std::size_t t = 0; t < table.count(k); ++t) {
    auto l = table.tuple(k, t);
    found = found || (l[0] == a && l[1] == b && l[2] == c);
  }
  CHECK(found);
}

TEST_CASE("tuples: every stored tuple satisfies both deltas") {
  for (int q : {1, 2}) {
    auto basis = build_mode_basis(2, 2);
    auto table = enumerate_interaction_tuples(basis, q);
    for (std::size_t k = 0; k < table.outputs(); ++k) {
      for (std::size_t t = 0; t < table.count(k); ++t) {
        auto l = table.tuple(k, t);
        std::vector<long long> mom(2, 0);
        long long en = 0;
        for (std::size_t i = 0; i < l.size(); ++i) {
          const int sign = static_cast<int>(i) <= q ? 1 : -1;
          for (int c = 0; c < 2; ++c) mom[c] += sign * basis.mode(l[i])[c];
          en += sign * basis.sq_norms()[l[i]];
        }
        for (int c = 0; c < 2; ++c) mom[c] -= basis.mode(k)[c];
        en -= basis.sq_norms()[k];
        CHECK(mom == std::vector<long long>{0, 0});
        CHECK(en == 0);
      }
    }
  }
}

TEST_CASE("tuples: oracle equivalence on small fixtures") {
  for (int d : {1, 2}) {
    for (int q : {1, 2}) {
      const int kmax = d == 1 ? 4 : (q == 1 ? 2 : 1);
      auto basis = build_mode_basis(d, kmax);
      auto fast = table_as_set(enumerate_interaction_tuples(basis, q));
      auto slow = oracles::oracle_resonance_enumeration(basis, q);
      CHECK(fast == std::set<oracles::OracleTuple>(slow.begin(), slow.end()));
    }
  }
}

TEST_CASE("tuples: qstar 0 is the diagonal and guard trips") {
  auto basis = build_mode_basis(2, 2);
  auto table = enumerate_interaction_tuples(basis, 0);
  for (std::size_t k = 0; k < table.outputs(); ++k) {
    REQUIRE(table.count(k) == 1);
    CHECK(table.tuple(k, 0)[0] == static_cast<int>(k));
  }
  CHECK_THROWS_AS(enumerate_interaction_tuples(build_mode_basis(2, 4), 2, 1000), ResourceGuardError);
}

TEST_CASE("resonance set: spec examples") {
  auto basis = build_mode_basis(1, 1);
  auto set = enumerate_resonance_set(basis, 2, 3);
  auto has = [&](std::vector<std::int64_t> s) {
    return std::any_of(set.begin(), set.end(), [&](const auto& r) { return r.dense(3) == s; });
  };
  CHECK(has({1, 0, 0}));
  CHECK(has({0, 1, -1}));
  CHECK(has({0, -1, 1}));

  std::vector<std::int64_t> w{1, 2};
  CHECK(enumerate_resonances(w, 2).empty());
}

TEST_CASE("resonance set: symmetry, ordering, brute force") {
  auto basis = build_mode_basis(2, 1);
  for (int m : {2, 4}) {
    auto set = enumerate_resonance_set(basis, m, 6);
    std::set<std::vector<std::int64_t>> dense_set;
    for (const auto& s : set) {
      CHECK(s.l1_norm() <= m);
      CHECK(s.dot(basis.sq_norms()) == 0);
      dense_set.insert(s.dense(6));
    }
    for (const auto& s : set) CHECK(dense_set.count(s.negated().dense(6)) == 1);
    CHECK(std::is_sorted(set.begin(), set.end(), resonance_order_less));
    std::vector<std::int64_t> w(basis.sq_norms().begin(), basis.sq_norms().begin() + 6);
    auto brute = oracles::brute_force_resonances(w, m);
    CHECK(std::set<std::vector<std::int64_t>>(brute.begin(), brute.end()) == dense_set);
  }
}

TEST_CASE("resonance table: J(N)") {
  auto basis = build_mode_basis(1, 2);
  auto table = build_resonance_table(basis, 1);
  CHECK(table.order_m == 4);
  std::size_t prev = 0;
  for (std::size_t N = 1; N <= basis.size(); ++N) {
    const std::size_t J = table.J_of_N(N);
    CHECK(J >= prev);
    for (std::size_t j = 0; j < J; ++j) CHECK(table.resonance_set[j].ceil() < static_cast<int>(N));
    if (J < table.resonance_set.size()) CHECK(table.resonance_set[J].ceil() >= static_cast<int>(N));
    prev = J;
  }
  CHECK(table.J_of_N(basis.size()) == table.resonance_set.size());
}

TEST_CASE("module: spec examples") {
  std::vector<ResonanceVector> g{ResonanceVector::from_dense(std::vector<std::int64_t>{1, -1})};
  auto mod = resonance_module_basis(g, 2);
  CHECK(mod.rank == 1);
  CHECK(std::abs(determinant(mod.completion)) == 1);
  REQUIRE(mod.eta.size() == 1);
  CHECK(dot(mod.eta[0], {1, -1}) == 0);
  CHECK((mod.zeta[0] == std::vector<std::int64_t>{1, -1} || mod.zeta[0] == std::vector<std::int64_t>{-1, 1}));
  CHECK((mod.eta[0] == std::vector<std::int64_t>{1, 1}));

  auto empty = resonance_module_basis({}, 3);
  CHECK(empty.rank == 0);
  CHECK(empty.completion == IntMatrix::identity(3));
  CHECK(empty.eta.size() == 3);

  std::vector<ResonanceVector> g2{ResonanceVector::from_dense(std::vector<std::int64_t>{2, -2})};
  auto fine = resonance_module_basis(g2, 2);
  CHECK(fine.rank == 1);
  CHECK(oracles::fraction_free_rank({fine.zeta[0], {2, -2}}) == 1);
}

TEST_CASE("module: randomized properties") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 2 + gen() % 5;
    const int count = static_cast<int>(gen() % 4);
    std::vector<ResonanceVector> g;
    std::vector<std::vector<std::int64_t>> rows;
    for (int i = 0; i < count; ++i) {
      std::vector<std::int64_t> s(n);
      for (auto& x : s) x = static_cast<std::int64_t>(gen() % 7) - 3;
      if (std::all_of(s.begin(), s.end(), [](auto x) { return x == 0; })) continue;
      g.push_back(ResonanceVector::from_dense(s));
      rows.push_back(s);
    }
    auto mod = resonance_module_basis(g, n);
    CHECK(std::abs(determinant(mod.completion)) == 1);
    CHECK(mod.rank == oracles::fraction_free_rank(rows));
    CHECK(multiply(mod.completion, mod.completion_inverse) == IntMatrix::identity(n));
    for (const auto& eta : mod.eta)
      for (const auto& s : rows) CHECK(dot(eta, s) == 0);
    // Same rational span: adding zeta to the generators keeps the rank.
    auto both = rows;
    for (const auto& z : mod.zeta) both.push_back(z);
    CHECK(oracles::fraction_free_rank(both) == mod.rank);
  }
}

TEST_CASE("kappa") {
  std::vector<Rational> w1{1, 2};
  CHECK((kappa(w1, 2) == Rational(1)));
  std::vector<Rational> w2{0, 1, 1, 4, 4};
  CHECK((kappa(w2, 2) == Rational(1)));
  std::vector<Rational> w3{Rational(1, 3), Rational(1, 2)};
  CHECK((kappa(w3, 2) == Rational(1, 6)));
  std::vector<Rational> zero{0, 0};
  CHECK_FALSE(kappa(zero, 3).has_value());
  std::mt19937_64 gen(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<Rational> w(3);
    for (auto& x : w) x = static_cast<std::int64_t>(gen() % 11);
    auto k = kappa(w, 3);
    if (k) CHECK((*k >= Rational(1)));
  }
}

TEST_CASE("resonant average: examples") {
  std::vector<Rational> lam{Rational(1), Rational(2)};
  TrigPolynomial f(2);
  f.add({2, -1}, 1.0);
  auto g = resonant_average_polynomial(f, lam, 3);
  CHECK(g.terms() == f.terms());

  TrigPolynomial h(2);
  h.add({1, -1}, 1.0);
  CHECK(resonant_average_polynomial(h, lam, 2).terms().empty());

  std::vector<Rational> flat{Rational(1), Rational(1)};
  TrigPolynomial c(2);
  c.add({0, 0}, 3.0);
  c.add({1, -1}, 1.0, {1, 0});
  CHECK(resonant_average_polynomial(c, flat, 2).terms() == c.terms());

  TrigPolynomial big(2);
  big.add({3, 0}, 1.0);
  CHECK_THROWS_AS(resonant_average_polynomial(big, flat, 2), std::invalid_argument);
}

TEST_CASE("resonant average: projection and time-average consistency") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + gen() % 3;
    const int m = 4;
    std::vector<Rational> lam(n);
    std::vector<double> W(n);
    for (std::size_t i = 0; i < n; ++i) {
      lam[i] = static_cast<std::int64_t>(gen() % 4);
      W[i] = to_double(lam[i]);
    }
    TrigPolynomial f(n);
    for (int t = 0; t < 6; ++t) {
      std::vector<std::int64_t> s(n, 0);
      int budget = static_cast<int>(gen() % (m + 1));
      while (budget-- > 0) s[gen() % n] += (gen() % 2) ? 1 : -1;
      f.add(s, {u(gen), u(gen)});
    }
    auto avg = resonant_average_polynomial(f, lam, m);
    CHECK(resonant_average_polynomial(avg, lam, m).terms() == avg.terms());

    TrigPolynomial g(n);
    g.add(std::vector<std::int64_t>(n, 0), 2.0);
    auto lhs = resonant_average_polynomial(f + g * 3.0, lam, m);
    auto rhs = avg + resonant_average_polynomial(g, lam, m) * 3.0;
    for (const auto& [key, c] : lhs.terms()) CHECK(std::abs(c - rhs.terms().at(key)) < 1e-14);

    // Time average along phi + t W; integer W so the period is 2 pi and
    // trapezoid over one period is exact for trigonometric polynomials.
    std::vector<double> I(n, 1.0), phi(n);
    for (auto& p : phi) p = u(gen) * std::numbers::pi;
    const int steps = 64;
    std::complex<double> mean{};
    for (int i = 0; i < steps; ++i) {
      const double t = 2.0 * std::numbers::pi * i / steps;
      std::vector<double> shifted(n);
      for (std::size_t j = 0; j < n; ++j) shifted[j] = phi[j] + t * W[j];
      mean += f.evaluate(I, shifted);
    }
    mean /= static_cast<double>(steps);
    CHECK(std::abs(mean - avg.evaluate(I, phi)) < 1e-3);
  }
}
