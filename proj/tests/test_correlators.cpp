#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "bgw/characters.hpp"
#include "bgw/correlators.hpp"
#include "bgw/error.hpp"
#include "bgw/psi.hpp"
#include "helpers.hpp"

using namespace bgw;
using bgw::test::q;

namespace {

// Omega_g(C_1..C_n) = |G|^{2g-2} sum_chi chi(1)^{2-2g-n} prod_j |C_j| conj(chi(C_j)),
// the character count of solutions of prod [a_i, b_i] = prod sigma_j.
double omega_by_characters(const ClassAlgebra& a, const CharacterTable& ct, int g, const std::vector<ClassIndex>& cls) {
  const auto& cd = a.conjugacy();
  const double n = static_cast<double>(a.order());
  Complex sum = 0;
  for (std::size_t x = 0; x < ct.r; ++x) {
    const double d = ct.degrees[x];
    Complex term = std::pow(d, 2.0 - 2.0 * g - static_cast<double>(cls.size()));
    for (ClassIndex c : cls) term *= static_cast<double>(cd.class_size[c]) * std::conj(ct.values[x][c]);
    sum += term;
  }
  return (std::pow(n, 2.0 * g - 2.0) * sum).real();
}

Rational factorial_ratio(const std::vector<int>& levels) {
  const int n = static_cast<int>(levels.size());
  Rational r = factorial(n - 3);
  for (int a : levels) r /= factorial(a);
  return r;
}

void for_each_levels(int n, int sum, const std::function<void(std::vector<int>&)>& visit) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max) {
    if (static_cast<int>(cur.size()) == n) {
      if (left == 0) visit(cur);
      return;
    }
    for (int a = std::min(left, max); a >= 0; --a) {
      cur.push_back(a);
      rec(left - a, a);
      cur.pop_back();
    }
  };
  rec(sum, sum);
}

std::vector<std::vector<ClassIndex>> sorted_tuples(std::size_t r, std::size_t n) {
  std::vector<std::vector<ClassIndex>> out;
  std::vector<ClassIndex> cur;
  std::function<void(ClassIndex)> rec = [&](ClassIndex lo) {
    out.push_back(cur);
    if (cur.size() == n) return;
    for (ClassIndex c = lo; c < r; ++c) {
      cur.push_back(c);
      rec(c);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace

TEST_SUITE("psi") {
  TEST_CASE("known values") {
    CHECK(psi_intersection(0, {0, 0, 0}) == q(1));
    CHECK(psi_intersection(1, {1}) == q(1, 24));
    CHECK(psi_intersection(0, {0, 0, 0, 1}) == q(1));
    CHECK(psi_intersection(0, {0, 0, 0, 1, 1}) == q(2));
    CHECK(psi_intersection(2, {4}) == q(1, 1152));
    CHECK(psi_intersection(2, {2, 3}) == q(29, 5760));
    CHECK(psi_intersection(2, {2, 2, 2}) == q(7, 240));
    CHECK(psi_intersection(3, {7}) == q(1, 82944));
    CHECK(psi_intersection(1, {1, 1, 1, 1}) == q(3, 12));
    CHECK(psi_intersection(1, {0, 2}) == q(1, 24));
    CHECK(psi_intersection(0, {0, 0, 1}) == q(0));
    CHECK_THROWS_AS(psi_intersection(0, {0, 0}), Error);
    CHECK_THROWS_AS(psi_intersection(1, {}), Error);
  }

  TEST_CASE("one-point numbers") {
    Rational p = q(1);
    for (int g = 1; g <= 4; ++g) {
      p *= q(24 * g);
      CHECK(psi_intersection(g, {3 * g - 2}) == q(1) / p);
    }
  }

  TEST_CASE("genus zero closed form up to seven points") {
    for (int n = 3; n <= 7; ++n)
      for_each_levels(n, n - 3, [&](std::vector<int>& lv) { CHECK(psi_intersection(0, lv) == factorial_ratio(lv)); });
  }

  TEST_CASE("string and dilaton equations") {
    for (int g = 0; g <= 3; ++g)
      for (int n = 1; n <= 5; ++n) {
        if (!is_stable(g, static_cast<std::size_t>(n))) continue;
        const int dim = 3 * g - 3 + n;
        for_each_levels(n, dim, [&](std::vector<int>& lv) {
          // Dilaton: <tau_1 X> = (2g - 2 + n) <X>.
          std::vector<int> with1 = lv;
          with1.push_back(1);
          CHECK(psi_intersection(g, with1) == q(2 * g - 2 + n) * psi_intersection(g, lv));
        });
        for_each_levels(n, dim + 1, [&](std::vector<int>& lv) {
          // String: <tau_0 X> = sum_j <... tau_{a_j - 1} ...>.
          std::vector<int> with0 = lv;
          with0.push_back(0);
          Rational rhs;
          for (std::size_t j = 0; j < lv.size(); ++j) {
            if (lv[j] == 0) continue;
            std::vector<int> lower = lv;
            --lower[j];
            rhs += psi_intersection(g, lower);
          }
          CHECK(psi_intersection(g, with0) == rhs);
        });
      }
  }

  TEST_CASE("genus one powers of tau_1") {
    for (int n = 1; n <= 6; ++n) CHECK(psi_intersection(1, std::vector<int>(static_cast<std::size_t>(n), 1)) == factorial(n - 1) / q(24));
  }

  TEST_CASE("symmetric in the levels") {
    CHECK(psi_intersection(2, {3, 2, 0}) == psi_intersection(2, {0, 2, 3}));
    CHECK(psi_intersection(2, {1, 4, 0, 0}) == psi_intersection(2, {0, 0, 4, 1}));
  }

  TEST_CASE("double factorials") {
    CHECK(double_factorial(-1) == q(1));
    CHECK(double_factorial(1) == q(1));
    CHECK(double_factorial(5) == q(15));
    CHECK(double_factorial(9) == q(945));
  }
}

TEST_SUITE("omega") {
  TEST_CASE("worked values") {
    const ClassAlgebra z2 = bgw::test::algebra("Z", 2), s3 = bgw::test::algebra("S", 3);
    const OmegaEngine e2(z2), e3(s3);
    CHECK(e2.bruteforce({1, {}}) == q(2));
    CHECK(e3.bruteforce({1, {}}) == q(3));
    const ClassIndex t = bgw::test::cls(s3, "(0 1)"), c = bgw::test::cls(s3, "(0 1 2)");
    CHECK(e3.bruteforce({0, {t, t, c}}) == q(1));
    CHECK(e3.recursive({0, {t, t, c}}) == q(1));
    CHECK(e3.bruteforce({0, {t, t}}) == q(1, 2));
    CHECK(e3.recursive({0, {t, t}}) == q(1, 2));
    CHECK(e3.bruteforce({0, {}}) == q(1, 6));
    CHECK(e3.recursive({0, {}}) == q(1, 6));
    CHECK(e3.recursive({2, {}}) == e3.bruteforce({2, {}}));
    CHECK(e3.recursive({0, {t}}) == q(0));
    CHECK(e3.recursive({0, {0}}) == q(1, 6));
  }

  TEST_CASE("genus one without insertions counts classes") {
    for (const char* name : {"S", "D", "Z"})
      for (int n = 2; n <= 5; ++n) {
        const ClassAlgebra a = bgw::test::algebra(name, n);
        CHECK(OmegaEngine(a).bruteforce({1, {}}) == q(static_cast<long>(a.rank())));
      }
  }

  TEST_CASE("cyclic groups") {
    for (int n = 1; n <= 6; ++n) {
      const ClassAlgebra a = bgw::test::algebra("Z", n);
      const OmegaEngine e(a);
      for (int g = 0; g <= 2; ++g)
        for (const auto& tup : sorted_tuples(a.rank(), 3)) {
          // Classes are singletons; the element of class k is a^k.
          long sum = 0;
          for (ClassIndex k : tup) {
            const Element x = a.conjugacy().representative[k];
            long power = 0;
            for (Element y = 0; y != x; y = a.group().mul(y, 1)) ++power;
            sum += power;
          }
          const Rational expected = sum % n == 0 ? Rational(static_cast<long>(std::pow(n, 2 * g)), n) : q(0);
          CHECK(e.bruteforce({g, tup}) == expected);
          CHECK(e.recursive({g, tup}) == expected);
        }
    }
  }

  TEST_CASE("character formula") {
    for (const char* name : {"S3", "Q8", "D4", "D5"}) {
      const ClassAlgebra a = std::string(name) == "Q8" ? bgw::test::algebra("Q8")
                                                      : bgw::test::algebra(std::string(1, name[0]), name[1] - '0');
      const CharacterTable ct = character_table(a);
      const OmegaEngine e(a);
      for (int g = 0; g <= 2; ++g)
        for (const auto& tup : sorted_tuples(a.rank(), 3)) {
          const double expected = omega_by_characters(a, ct, g, tup);
          CHECK(std::abs(e.recursive({g, tup}).to_double() - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
          CHECK(std::abs(e.bruteforce({g, tup}).to_double() - expected) < 1e-8 * std::max(1.0, std::abs(expected)));
        }
    }
  }

  TEST_CASE("the two algorithms agree") {
    for (const char* name : {"S", "D"})
      for (int n = 3; n <= 4; ++n) {
        const ClassAlgebra a = bgw::test::algebra(name, n);
        const OmegaEngine e(a);
        for (int g = 0; g <= 2; ++g)
          for (const auto& tup : sorted_tuples(a.rank(), 3)) CHECK(e.recursive({g, tup}) == e.bruteforce({g, tup}));
      }
  }

  TEST_CASE("brute force does not depend on the worker count") {
    const ClassAlgebra a = bgw::test::algebra("S", 4);
    const OmegaKey key{2, {1, 2}};
    const Rational one = OmegaEngine(a).bruteforce(key, {1'000'000'000, 1});
    CHECK(OmegaEngine(a).bruteforce(key, {1'000'000'000, 3}) == one);
    CHECK(OmegaEngine(a).bruteforce(key, {1'000'000'000, 4}) == one);
    CHECK(OmegaEngine(a).commutator_count(2, 0, {1'000'000'000, 2}) == OmegaEngine(a).commutator_count(2, 0));
  }

  TEST_CASE("enumeration statistics and work cap") {
    const ClassAlgebra s3 = bgw::test::algebra("S", 3);
    const OmegaEngine e(s3);
    EnumerationStats stats;
    e.bruteforce({1, {1}}, {}, &stats);
    CHECK(stats.tuples_covered == 36 * 3);
    try {
      e.bruteforce({2, {1, 1}}, {100, 1});
      FAIL("work cap ignored");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::WorkCapExceeded);
      CHECK(err.is_resource_error());
    }
    CHECK_THROWS_AS(e.recursive({0, {7}}), Error);
    CHECK_THROWS_AS(e.recursive({-1, {}}), Error);
  }

  TEST_CASE("memo agrees with recomputation") {
    const ClassAlgebra a = bgw::test::algebra("D", 4);
    const OmegaEngine e(a);
    const Rational first = e.recursive({2, {3, 1, 2}});
    CHECK(e.memo().omega.size() > 0);
    CHECK(e.recursive({2, {1, 2, 3}}) == first);
    CHECK(OmegaEngine(a).recursive({2, {2, 3, 1}}) == first);
    CHECK(omega_recursive(a, {2, {3, 2, 1}}) == first);
    CHECK(omega_bruteforce(a, {2, {1, 3, 2}}) == first);
  }
}

TEST_SUITE("correlators") {
  TEST_CASE("orbifold correlators") {
    const ClassAlgebra z2 = bgw::test::algebra("Z", 2), s3 = bgw::test::algebra("S", 3);
    const OmegaEngine e2(z2), e3(s3);
    CHECK(orbifold_correlator(e2, {1, {{1, 0}}}) == q(1, 12));
    CHECK(orbifold_correlator(e3, {1, {{1, 0}}}) == q(1, 8));
    const CorrelatorValue dim = orbifold_correlator_detail(e2, {1, {{0, 1}}});
    CHECK(dim.value == q(0));
    CHECK(dim.vanishing_reason == "dimension");
    const CorrelatorValue om = orbifold_correlator_detail(e2, {1, {{1, 1}}});
    CHECK(om.value == q(0));
    CHECK(om.vanishing_reason == "omega");
    CHECK(orbifold_correlator_detail(e2, {2, {}}).vanishing_reason == "no-insertions");
    CHECK_THROWS_AS(orbifold_correlator(e2, {0, {{0, 0}, {0, 1}}}), Error);
    CHECK_THROWS_AS(orbifold_correlator(e2, {0, {{0, 0}, {0, 5}, {0, 0}}}), Error);
  }

  TEST_CASE("three-point correlators count triples") {
    for (const char* name : {"S", "D"}) {
      const ClassAlgebra a = bgw::test::algebra(name, 4);
      const OmegaEngine e(a);
      const auto& g = a.group();
      const auto& cd = a.conjugacy();
      for (ClassIndex i = 0; i < a.rank(); ++i)
        for (ClassIndex j = 0; j < a.rank(); ++j)
          for (ClassIndex k = 0; k < a.rank(); ++k) {
            long n = 0;
            for (Element x : cd.classes[i])
              for (Element y : cd.classes[j])
                for (Element z : cd.classes[k]) n += g.mul(g.mul(x, y), z) == GroupTable::identity;
            CHECK(orbifold_correlator(e, {0, {{0, i}, {0, j}, {0, k}}}) == Rational(n, static_cast<long>(a.order())));
          }
    }
  }

  TEST_CASE("canonical correlators") {
    const ClassAlgebra triv = bgw::test::algebra("Z", 1);
    const CanonicalBasis cbt = canonical_basis(character_table(triv), triv);
    CHECK(canonical_correlator(2, cbt, {0, 0}, {2, 3}) == q(29, 5760));
    const ClassAlgebra s3 = bgw::test::algebra("S", 3);
    const CanonicalBasis cb = canonical_basis(character_table(s3), s3);
    CHECK(canonical_correlator(0, cb, {2, 2, 2}, {0, 0, 0}) == q(1, 9));
    CHECK(canonical_correlator(0, cb, {1, 2, 2}, {0, 0, 0}) == q(0));
    CHECK(canonical_correlator(1, cb, {2}, {1}) == q(1, 24));
    CHECK(canonical_correlator(2, cb, {0}, {4}) == q(36, 1152));
  }

  TEST_CASE("canonical correlators match the multilinear expansion") {
    for (const char* name : {"S", "Q8"}) {
      const ClassAlgebra a = std::string(name) == "S" ? bgw::test::algebra("S", 3) : bgw::test::algebra("Q8");
      const OmegaEngine e(a);
      const CanonicalBasis cb = canonical_basis(character_table(a), a);
      const std::size_t r = a.rank();
      for (int g = 0; g <= 2; ++g)
        for (int n = 1; n <= 3; ++n) {
          if (!is_stable(g, static_cast<std::size_t>(n))) continue;
          for_each_levels(n, 3 * g - 3 + n, [&](std::vector<int>& lv) {
            for (std::size_t alpha = 0; alpha < r; ++alpha)
              for (std::size_t beta = 0; beta < r; ++beta) {
                // Insert f_alpha everywhere except the last slot, which gets f_beta.
                Complex sum = 0;
                std::vector<ClassIndex> idx(static_cast<std::size_t>(n), 0);
                for (;;) {
                  Complex w = 1;
                  CorrelatorKey key{g, {}};
                  for (int s = 0; s < n; ++s) {
                    const auto& f = cb.vectors[s + 1 == n ? beta : alpha];
                    w *= f[idx[static_cast<std::size_t>(s)]];
                    key.insertions.push_back({lv[static_cast<std::size_t>(s)], idx[static_cast<std::size_t>(s)]});
                  }
                  if (std::abs(w) > 0) sum += w * orbifold_correlator(e, key).to_double();
                  int s = 0;
                  while (s < n && ++idx[static_cast<std::size_t>(s)] == r) idx[static_cast<std::size_t>(s++)] = 0;
                  if (s == n) break;
                }
                std::vector<std::size_t> alphas(static_cast<std::size_t>(n), alpha);
                alphas.back() = beta;
                const double expected = canonical_correlator(g, cb, alphas, lv).to_double();
                CHECK(std::abs(sum - expected) < 1e-9);
              }
          });
        }
    }
  }

  TEST_CASE("potentials") {
    const ClassAlgebra triv = bgw::test::algebra("Z", 1);
    const OmegaEngine et(triv);
    const ExactSeries phi = class_potential(et, SeriesCaps::for_potential(3, 0));
    CHECK(phi.size() == 1);
    CHECK(phi.coefficient(Monomial::of({0, 0}, 3), -2) == q(1, 6));
    CHECK(class_potential(et, SeriesCaps::for_potential(2, 0)).is_zero());

    const ClassAlgebra z2 = bgw::test::algebra("Z", 2);
    const OmegaEngine e2(z2);
    const ExactSeries p2 = class_potential(e2, SeriesCaps::for_potential(3, 1));
    CHECK(p2.coefficient(Monomial::of({1, 0}), 0) == q(1, 12));
    CHECK(p2.coefficient(Monomial::of({1, 1}), 0) == q(0));
    // Repeated variables carry 1/k!: <tau_0(e_1)^2 tau_0(e_0)>_0 = 1/2.
    CHECK(p2.coefficient(Monomial::from_factors({{{0, 0}, 1}, {{0, 1}, 2}}), -2) == q(1, 4));

    const ExactSeries z = partition_function(p2);
    CHECK(z.coefficient(Monomial(), 0) == q(1));
    CHECK(z.coefficient(Monomial::of({1, 0}), 0) == q(1, 12));
    CHECK(p2.coefficient(Monomial::of({1, 0}, 2), 0) == q(1, 24));
    CHECK(z.coefficient(Monomial::of({1, 0}, 2), 0) == q(1, 24) + q(1, 288));
  }

  TEST_CASE("the canonical potential of Z_2 is two rescaled trivial potentials") {
    const SeriesCaps caps = SeriesCaps::for_potential(5, 2);
    const ExactSeries one = class_potential(OmegaEngine(bgw::test::algebra("Z", 1)), caps);
    const ClassAlgebra z2 = bgw::test::algebra("Z", 2);
    const ExactSeries two = canonical_rescaled_potential(canonical_basis(character_table(z2), z2).nus, caps);
    std::size_t n = 0;
    for (const auto& [m, l] : two.terms()) {
      REQUIRE(m.max_slot() <= 1);
      // Variables of one slot only.
      bool mixed = false;
      for (std::size_t i = 0; i < m.num_factors(); ++i) mixed = mixed || m.var(i).slot != m.var(0).slot;
      CHECK_FALSE(mixed);
      std::vector<std::pair<SeriesVar, int>> f;
      for (const auto& [v, e] : m.factors()) f.push_back({{v.level, 0}, e});
      for (const auto& [e, c] : l.entries()) CHECK(c == one.coefficient(Monomial::from_factors(f), e));
      n += l.entries().size();
    }
    CHECK(n == 2 * one.size());
  }

  TEST_CASE("dimension keys") {
    std::size_t count = 0;
    for_each_dimension_key(1, 3, 10, 1, [&](int g, const std::vector<SeriesVar>& vars) {
      int sum = 0;
      for (const auto& v : vars) sum += v.level;
      CHECK(sum == 3 * g - 3 + static_cast<int>(vars.size()));
      ++count;
    });
    // tau_0^3 at genus 0; tau_1, tau_0 tau_2, tau_1^2, tau_0^2 tau_3, tau_0 tau_1 tau_2, tau_1^3 at genus 1.
    CHECK(count == 7);
  }
}
