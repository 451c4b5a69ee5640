#include <doctest.h>

#include "bgw/characters.hpp"
#include "bgw/cohft.hpp"
#include "bgw/correlators.hpp"
#include "bgw/error.hpp"
#include "bgw/factorization.hpp"
#include "bgw/kdv.hpp"
#include "bgw/mutation.hpp"
#include "bgw/virasoro.hpp"
#include "helpers.hpp"

using namespace bgw;
using bgw::test::q;
using bgw::test::require_all_pass;

namespace {

ClassAlgebra by_name(const std::string& name) {
  if (name == "Q8") return bgw::test::algebra("Q8");
  return bgw::test::algebra(name.substr(0, 1), std::stoi(name.substr(1)));
}

struct VirasoroData {
  ClassAlgebra algebra;
  CanonicalBasis cb;
  ExactSeries phi, z, z_canonical;

  explicit VirasoroData(const std::string& name, int degree = 6, int genus = 2)
      : algebra(by_name(name)),
        cb(canonical_basis(character_table(algebra), algebra)),
        phi(class_potential(OmegaEngine(algebra), SeriesCaps::for_potential(degree, genus))),
        z(partition_function(phi)),
        z_canonical(partition_function(canonical_rescaled_potential(cb.nus, SeriesCaps::for_potential(degree, genus)))) {}
};

double residual(const ConstraintReport& r) {
  if (const auto* d = std::get_if<double>(&r.max_residual)) return *d;
  return std::get<Rational>(r.max_residual).to_double();
}

}  // namespace

TEST_SUITE("cohft") {
  TEST_CASE("Frobenius structure from correlators") {
    for (const char* name : {"Z1", "Z4", "S3", "S4", "D4", "D5", "Q8"}) {
      const ClassAlgebra a = by_name(name);
      require_all_pass(frobenius_checks(a, name));
      require_all_pass(correlator_frobenius_checks(OmegaEngine(a), name));
    }
  }

  TEST_CASE("gluing axioms") {
    for (const char* name : {"S3", "Q8", "D4"}) {
      const ClassAlgebra a = by_name(name);
      CohftOptions opts;
      opts.max_genus = 2;
      opts.max_n = 3;
      require_all_pass(cohft_checks(OmegaEngine(a), opts, name));
    }
  }

  TEST_CASE("individual axioms report their work") {
    const ClassAlgebra a = by_name("S3");
    const OmegaEngine e(a);
    CohftOptions opts;
    const ConstraintReport loops = cutting_loops_check(e, opts, "S3");
    CHECK(loops.passed());
    CHECK(loops.checked > 0);
    CHECK(loops.check == "cohft");
    CHECK(cutting_trees_check(e, opts, "S3").passed());
    CHECK(forgetting_tails_check(e, opts, "S3").passed());
    CHECK(permutation_invariance_check(e, opts, "S3").passed());
    CHECK(conjugation_invariance_check(e, opts, "S3").passed());
    CHECK(string_equation_check(e, opts, "S3").passed());
  }

  TEST_CASE("tensor products") {
    for (auto [g, h] : {std::pair{"Z2", "Z3"}, std::pair{"Z2", "Z2"}, std::pair{"S3", "Z2"}}) {
      const TensorReport rep = tensor_omega_check(by_name(g), by_name(h), 2, 3);
      CHECK(rep.passed());
      CHECK(rep.checked > 0);
    }
  }

  TEST_CASE("tensor check does not depend on the worker count") {
    const ClassAlgebra a = by_name("Z2"), b = by_name("Z3");
    const TensorReport one = tensor_omega_check(a, b, 2, 3, {1'000'000'000, 1});
    const TensorReport four = tensor_omega_check(a, b, 2, 3, {1'000'000'000, 4});
    CHECK(one.checked == four.checked);
    CHECK(one.mismatches.size() == four.mismatches.size());
  }
}

TEST_SUITE("virasoro") {
  TEST_CASE("operator coefficients") {
    const auto ctx = VirasoroContext::identity(1);
    const DifferentialOperator l1 = virasoro_operator({VirasoroSpec::Flavor::PerIndex, 1, 0}, ctx, 6);
    REQUIRE_FALSE(l1.terms.empty());
    CHECK(l1.terms.front().kind == OperatorTerm::Kind::Derivative);
    CHECK(l1.terms.front().coeff == q(-15, 4));
    CHECK(l1.terms.front().a == SeriesVar{2, 0});
    CHECK(l1.order() == 2);

    const DifferentialOperator l0 = virasoro_operator({VirasoroSpec::Flavor::PerIndex, 0, 0}, ctx, 6);
    CHECK(l0.terms.back().kind == OperatorTerm::Kind::Constant);
    CHECK(l0.terms.back().coeff == q(1, 16));

    const ClassAlgebra s3 = by_name("S3");
    const DifferentialOperator d0 =
        virasoro_operator({VirasoroSpec::Flavor::Diagonal, 0, 0}, VirasoroContext::from_algebra(s3), 6);
    CHECK(d0.terms.back().coeff == q(3, 16));

    CHECK_THROWS_AS(virasoro_operator({VirasoroSpec::Flavor::PerIndex, 6, 0}, ctx, 6), Error);
    CHECK_THROWS_AS(virasoro_operator({VirasoroSpec::Flavor::PerIndex, -2, 0}, ctx, 6), Error);
    CHECK_THROWS_AS(virasoro_operator({VirasoroSpec::Flavor::PerIndex, 0, 3}, ctx, 6), Error);
  }

  TEST_CASE("certification") {
    const SeriesCaps caps = SeriesCaps::for_potential(6, 2);
    CHECK(virasoro_watermark(-1, caps) == 5);
    CHECK(virasoro_watermark(1, caps) == 4);
    CHECK(virasoro_certified(0, 0, 0, caps));
    CHECK_FALSE(virasoro_certified(0, 6, -2, caps));
  }

  TEST_CASE("the constant series is not annihilated") {
    const ClassAlgebra z2 = by_name("Z2");
    ExactSeries one(SeriesCaps::for_potential(6, 2), VariableSystem::ClassBasis);
    one.add_term(Monomial(), 0, q(1));
    const auto ctx = VirasoroContext::from_algebra(z2);
    const auto rep = annihilation_report(
        virasoro_operator({VirasoroSpec::Flavor::Diagonal, -1, 0}, ctx, one.caps().max_level), -1, one, "L_-1", "Z2");
    CHECK_FALSE(rep.passed());
    REQUIRE_FALSE(rep.violations.empty());
  }

  TEST_CASE("annihilation") {
    for (const char* name : {"Z1", "Z2", "S3"}) {
      const VirasoroData d(name);
      require_all_pass(virasoro_check(d.algebra, d.z, d.z_canonical, d.cb, {}, name));
    }
  }

  TEST_CASE("bracket relations") {
    const SeriesCaps caps = SeriesCaps::for_potential(6, 2);
    const ClassAlgebra s3 = by_name("S3");
    const auto ctx = VirasoroContext::from_algebra(s3);
    const auto unit = VirasoroContext::identity(3);
    using F = VirasoroSpec::Flavor;
    CHECK(commutator_check({F::PerIndex, 0, 0}, {F::PerIndex, 0, 0}, unit, caps, 1, "S3").passed());
    CHECK(commutator_check({F::PerIndex, 1, 1}, {F::PerIndex, -1, 2}, unit, caps, 2, "S3").passed());
    CHECK(commutator_check({F::PerIndex, 1, 0}, {F::PerIndex, -1, 0}, unit, caps, 3, "S3").passed());
    CHECK(commutator_check({F::Diagonal, 2, 0}, {F::Diagonal, -1, 0}, ctx, caps, 4, "S3").passed());
    CHECK(commutator_check({F::Diagonal, 1, 0}, {F::Diagonal, 0, 0}, ctx, caps, 5, "S3").passed());
  }

  TEST_CASE("diagonal operators split over canonical indices") {
    const ClassAlgebra s3 = by_name("S3");
    const CanonicalBasis cb = canonical_basis(character_table(s3), s3);
    for (int m : {-1, 0, 1, 2}) {
      const auto rep = operator_identity_check(s3, cb, m, SeriesCaps::for_potential(6, 2), 7, 1e-8, "S3");
      CHECK(rep.passed());
      CHECK(residual(rep) < 1e-8);
    }
  }

  TEST_CASE("a doubled coefficient breaks annihilation") {
    const VirasoroData d("Z2");
    const ExactSeries z = partition_function(mutate(d.phi, Monomial::parse("t[0,0] t[0,1]^2"), -2));
    bool any_failed = false;
    for (const auto& r : virasoro_check(d.algebra, z, d.z_canonical, d.cb, {}, "Z2")) any_failed |= !r.passed();
    CHECK(any_failed);
  }

  TEST_CASE("operators need matching variables") {
    const VirasoroData d("Z2", 4, 1);
    CHECK_THROWS_AS(apply_virasoro({VirasoroSpec::Flavor::PerIndex, 0, 0}, VirasoroContext::identity(2), d.z), Error);
  }
}

TEST_SUITE("kdv") {
  TEST_CASE("potentials satisfy the hierarchy") {
    for (const char* name : {"Z1", "Z2", "S3"}) {
      const ClassAlgebra a = by_name(name);
      const ExactSeries phi = class_potential(OmegaEngine(a), kdv_potential_caps(4, 1));
      const auto reps = kdv_check(a, phi, 2, 4, name);
      CHECK(reps.size() == 2 * a.rank());
      require_all_pass(reps);
    }
  }

  TEST_CASE("perturbation agrees with rechecking") {
    const ClassAlgebra a = by_name("Z2");
    const ExactSeries phi = class_potential(OmegaEngine(a), kdv_potential_caps(3, 1));
    const KdvSystem sys(a, phi, 2, 3);
    std::size_t failures = 0;
    for (const auto& [m, e] : mutation_candidates(phi, 1, 4)) {
      const ExactSeries mutated = mutate(phi, m, e);
      bool full = true, delta = true;
      for (const auto& r : kdv_check(a, mutated, 2, 3, "Z2")) full = full && r.passed();
      for (const auto& r : sys.perturbation(mutated - phi, "Z2")) delta = delta && r.passed();
      INFO(m.str(), " lambda^", e);
      CHECK(full == delta);
      failures += !full;
    }
    CHECK(failures > 0);
  }

  TEST_CASE("a doubled coefficient is located") {
    const ClassAlgebra a = by_name("Z2");
    const ExactSeries phi = mutate(class_potential(OmegaEngine(a), kdv_potential_caps(4, 1)),
                                   Monomial::parse("t[0,0] t[0,1]^2"), -2);
    std::size_t violations = 0;
    for (const auto& r : kdv_check(a, phi, 2, 4, "Z2")) {
      violations += r.violation_count;
      for (const auto& v : r.violations) CHECK_FALSE(v.location.empty());
    }
    CHECK(violations > 0);
  }
}

TEST_SUITE("factorization") {
  TEST_CASE("the potential splits over canonical indices") {
    for (auto [name, degree, genus, tol] :
         {std::tuple{"Z1", 6, 2, 0.0}, std::tuple{"Z2", 6, 2, 1e-9}, std::tuple{"S3", 4, 1, 1e-8},
          std::tuple{"Q8", 4, 1, 1e-8}}) {
      const ClassAlgebra a = by_name(name);
      const CanonicalBasis cb = canonical_basis(character_table(a), a);
      const auto rep = factorization_check(OmegaEngine(a), cb, SeriesCaps::for_potential(degree, genus),
                                           tol == 0.0 ? 1e-12 : tol, name);
      INFO(name);
      CHECK(rep.passed());
      CHECK(rep.checked > 0);
      CHECK(residual(rep) <= tol);
    }
  }

  TEST_CASE("a wrong metric scale is caught") {
    const ClassAlgebra a = by_name("S3");
    CanonicalBasis cb = canonical_basis(character_table(a), a);
    cb.nus[2] *= q(2);
    const SeriesCaps caps = SeriesCaps::for_potential(4, 1);
    CHECK_FALSE(factorization_check(OmegaEngine(a), cb, caps, 1e-8, "S3").passed());
    CHECK_THROWS_AS(factorization_check(OmegaEngine(a), cb, caps, 1e-8, "S3", true), Error);
  }
}

TEST_SUITE("mutation") {
  TEST_CASE("doubling leaves other coefficients alone") {
    const ExactSeries phi = class_potential(OmegaEngine(by_name("Z2")), SeriesCaps::for_potential(4, 1));
    const Monomial m = Monomial::parse("t[1,0]");
    const ExactSeries mut = mutate(phi, m, 0);
    CHECK(mut.coefficient(m, 0) == q(2) * phi.coefficient(m, 0));
    CHECK((mut - phi).size() == 1);
    CHECK_THROWS_AS(mutate(phi, Monomial::parse("t[3,1]"), 0), Error);
  }

  TEST_CASE("candidates") {
    const ExactSeries phi = class_potential(OmegaEngine(by_name("Z2")), SeriesCaps::for_potential(6, 2));
    const auto cands = mutation_candidates(phi, 1, 5);
    REQUIRE_FALSE(cands.empty());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      CHECK(cands[i].first.degree() <= 5);
      CHECK(cands[i].second <= 0);
      if (i) CHECK(cands[i - 1].first.degree() <= cands[i].first.degree());
    }
  }

  TEST_CASE("low-degree coefficients are all detected") {
    for (const char* name : {"Z1", "Z2"}) {
      const VirasoroData d(name);
      const ClassAlgebra& a = d.algebra;
      const ExactSeries kphi = class_potential(OmegaEngine(a), kdv_potential_caps(4, 1));
      MutationInputs in;
      in.algebra = &a;
      in.phi = &d.phi;
      in.z = &d.z;
      in.kdv_phi = &kphi;
      const auto outcomes = mutation_sweep(in, mutation_candidates(d.phi, 1, 5));
      REQUIRE_FALSE(outcomes.empty());
      for (const auto& o : outcomes) {
        INFO(name, " ", o.monomial.str(), " lambda^", o.lambda);
        CHECK(o.detected());
      }
    }
  }
}
