// One line per acceptance criterion; exit status 1 if any line fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "bgw/characters.hpp"
#include "bgw/cohft.hpp"
#include "bgw/correlators.hpp"
#include "bgw/factorization.hpp"
#include "bgw/kdv.hpp"
#include "bgw/mutation.hpp"
#include "bgw/psi.hpp"
#include "bgw/report.hpp"
#include "bgw/virasoro.hpp"

using namespace bgw;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct NamedGroup {
  std::string label;
  GroupTable table;
};

NamedGroup make(const std::string& name, int param) { return {name + std::to_string(param), named_group(name, param)}; }
NamedGroup q8() { return {"Q8", named_group("Q8", 0)}; }
NamedGroup product(const NamedGroup& a, const NamedGroup& b) {
  return {a.label + "x" + b.label, direct_product(a.table, b.table)};
}

std::vector<NamedGroup> frobenius_groups() {
  std::vector<NamedGroup> out;
  for (int n = 1; n <= 8; ++n) out.push_back(make("Z", n));
  out.push_back(make("S", 3));
  out.push_back(make("S", 4));
  out.push_back(make("D", 4));
  out.push_back(make("D", 5));
  out.push_back(q8());
  out.push_back(product(make("Z", 2), make("Z", 2)));
  out.push_back(product(make("Z", 2), make("Z", 3)));
  return out;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void absorb(Outcome& o, const std::vector<ConstraintReport>& reps, std::size_t& checked) {
  for (const auto& r : reps) {
    checked += r.checked;
    if (!r.passed()) {
      o.pass = false;
      if (o.detail.size() < 400) o.detail += " [" + summary_line(r) + "]";
    }
  }
}

double as_double(const std::variant<Rational, double>& v) {
  if (const auto* d = std::get_if<double>(&v)) return *d;
  return std::get<Rational>(v).to_double();
}

void for_each_sorted(std::size_t r, std::size_t n, const std::function<void(const std::vector<ClassIndex>&)>& f) {
  std::vector<ClassIndex> cur;
  std::function<void(ClassIndex)> rec = [&](ClassIndex lo) {
    f(cur);
    if (cur.size() == n) return;
    for (ClassIndex c = lo; c < r; ++c) {
      cur.push_back(c);
      rec(c);
      cur.pop_back();
    }
  };
  rec(0);
}

void for_each_levels(int n, int sum, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max) {
    if (static_cast<int>(cur.size()) == n) {
      if (left == 0) f(cur);
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

Outcome frobenius() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, groups = 0;
  for (const auto& g : frobenius_groups()) {
    const ClassAlgebra a(g.table);
    absorb(o, frobenius_checks(a, g.label), checked);
    ++groups;
  }
  const double t = seconds_since(t0);
  if (t >= 10.0) o.pass = false;
  std::ostringstream os;
  os << groups << " groups, " << checked << " identities, " << t << " s (limit 10 s)" << o.detail;
  o.detail = os.str();
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t keys = 0, mismatches = 0;
  for (const auto& g : frobenius_groups()) {
    if (g.table.order() > 24) continue;
    const ClassAlgebra a(g.table);
    const OmegaEngine brute(a), rec(a);
    for (int genus = 0; genus <= 2; ++genus)
      for_each_sorted(a.rank(), 3, [&](const std::vector<ClassIndex>& cls) {
        const OmegaKey key{genus, cls};
        ++keys;
        if (brute.bruteforce(key, {1'000'000'000, 4}) != rec.recursive(key)) {
          ++mismatches;
          o.pass = false;
        }
      });
  }
  const double t = seconds_since(t0);
  if (t >= 300.0) o.pass = false;
  std::ostringstream os;
  os << keys << " keys, " << mismatches << " mismatches, " << t << " s with 4 workers (limit 300 s)";
  o.detail = os.str();
  return o;
}

Outcome cohft() {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& g : {make("S", 3), q8()}) {
    const ClassAlgebra a(g.table);
    CohftOptions opts;
    opts.max_genus = 2;
    opts.max_n = 4;
    absorb(o, cohft_checks(OmegaEngine(a), opts, g.label), checked);
  }
  o.detail = std::to_string(checked) + " identities on S3, Q8" + o.detail;
  return o;
}

Outcome tensor() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  for (auto [g, h] : {std::pair{make("Z", 2), make("Z", 3)}, std::pair{make("Z", 2), make("Z", 2)}}) {
    const TensorReport rep = tensor_omega_check(ClassAlgebra(g.table), ClassAlgebra(h.table), 2, 3);
    checked += rep.checked;
    bad += rep.mismatches.size();
  }
  o.pass = bad == 0 && checked > 0;
  o.detail = std::to_string(checked) + " product keys, " + std::to_string(bad) + " mismatches";
  return o;
}

Outcome intersection_numbers() {
  Outcome o;
  std::size_t checked = 0, bad = 0;
  auto expect = [&](bool ok) {
    ++checked;
    if (!ok) ++bad;
  };
  for (int n = 3; n <= 7; ++n)
    for_each_levels(n, n - 3, [&](const std::vector<int>& lv) {
      Rational closed = factorial(n - 3);
      for (int a : lv) closed /= factorial(a);
      expect(psi_intersection(0, lv) == closed);
    });
  expect(psi_intersection(1, {1}) == Rational(1, 24));
  expect(psi_intersection(2, {4}) == Rational(1, 1152));
  // String and dilaton equations through genus 2.
  for (int g = 0; g <= 2; ++g)
    for (int n = 1; n <= 5; ++n) {
      if (!is_stable(g, static_cast<std::size_t>(n))) continue;
      for_each_levels(n, 3 * g - 3 + n, [&](const std::vector<int>& lv) {
        std::vector<int> with1 = lv;
        with1.push_back(1);
        expect(psi_intersection(g, with1) == Rational(2 * g - 2 + n) * psi_intersection(g, lv));
      });
      for_each_levels(n, 3 * g - 2 + n, [&](const std::vector<int>& lv) {
        std::vector<int> with0 = lv;
        with0.push_back(0);
        Rational rhs;
        for (std::size_t j = 0; j < lv.size(); ++j) {
          if (lv[j] == 0) continue;
          std::vector<int> lower = lv;
          --lower[j];
          rhs += psi_intersection(g, lower);
        }
        expect(psi_intersection(g, with0) == rhs);
      });
    }
  o.pass = bad == 0;
  o.detail = std::to_string(checked) + " values, " + std::to_string(bad) + " wrong";
  return o;
}

Outcome semisimplicity() {
  Outcome o;
  double worst_basis = 0.0, worst_corr = 0.0;
  std::size_t compared = 0;
  for (const auto& g : {make("S", 3), q8(), make("Z", 6)}) {
    const ClassAlgebra a(g.table);
    const CanonicalBasis cb = canonical_basis(character_table(a), a);
    const auto res = canonical_basis_residuals(cb, a);
    worst_basis = std::max({worst_basis, res.idempotency, res.orthogonality, res.unit});
    const OmegaEngine e(a);
    const std::size_t r = a.rank();
    for (int genus = 0; genus <= 2; ++genus)
      for (int n = 1; n <= 3; ++n) {
        if (!is_stable(genus, static_cast<std::size_t>(n))) continue;
        for_each_levels(n, 3 * genus - 3 + n, [&](const std::vector<int>& lv) {
          for (std::size_t alpha = 0; alpha < r; ++alpha)
            for (std::size_t beta = 0; beta < r; ++beta) {
              Complex sum = 0;
              std::vector<ClassIndex> idx(static_cast<std::size_t>(n), 0);
              for (;;) {
                Complex w = 1;
                CorrelatorKey key{genus, {}};
                for (int s = 0; s < n; ++s) {
                  const auto su = static_cast<std::size_t>(s);
                  w *= cb.vectors[s + 1 == n ? beta : alpha][idx[su]];
                  key.insertions.push_back({lv[su], idx[su]});
                }
                if (std::abs(w) > 0) sum += w * orbifold_correlator(e, key).to_double();
                int s = 0;
                while (s < n && ++idx[static_cast<std::size_t>(s)] == r) idx[static_cast<std::size_t>(s++)] = 0;
                if (s == n) break;
              }
              std::vector<std::size_t> alphas(static_cast<std::size_t>(n), alpha);
              alphas.back() = beta;
              worst_corr = std::max(worst_corr, std::abs(sum - canonical_correlator(genus, cb, alphas, lv).to_double()));
              ++compared;
            }
        });
      }
  }
  o.pass = worst_basis < 1e-9 && worst_corr < 1e-9;
  std::ostringstream os;
  os << "basis residual " << worst_basis << ", " << compared << " canonical correlators, max error " << worst_corr
     << " (tol 1e-9)";
  o.detail = os.str();
  return o;
}

struct PotentialData {
  std::string label;
  ClassAlgebra algebra;
  CanonicalBasis cb;
  ExactSeries phi, z, z_canonical;

  PotentialData(const NamedGroup& g, int degree, int genus)
      : label(g.label),
        algebra(g.table),
        cb(canonical_basis(character_table(algebra), algebra)),
        phi(class_potential(OmegaEngine(algebra), SeriesCaps::for_potential(degree, genus))),
        z(partition_function(phi)),
        z_canonical(partition_function(canonical_rescaled_potential(cb.nus, SeriesCaps::for_potential(degree, genus)))) {}
};

std::vector<NamedGroup> virasoro_groups() { return {make("Z", 1), make("Z", 2), make("S", 3)}; }

Outcome virasoro(std::vector<ConstraintReport>* keep = nullptr) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t checked = 0, ops = 0;
  for (const auto& g : virasoro_groups()) {
    const PotentialData d(g, 6, 2);
    const auto reps = virasoro_check(d.algebra, d.z, d.z_canonical, d.cb, {}, d.label);
    ops += reps.size();
    absorb(o, reps, checked);
    if (keep) keep->insert(keep->end(), reps.begin(), reps.end());
  }
  const double t = seconds_since(t0);
  if (t >= 120.0) o.pass = false;
  std::ostringstream os;
  os << ops << " operators, " << checked << " coefficients, " << t << " s (limit 120 s)" << o.detail;
  o.detail = os.str();
  return o;
}

Outcome kdv(std::vector<ConstraintReport>* keep = nullptr) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& g : virasoro_groups()) {
    const ClassAlgebra a(g.table);
    const auto reps = kdv_check(a, class_potential(OmegaEngine(a), kdv_potential_caps(4, 1)), 2, 4, g.label);
    absorb(o, reps, checked);
    if (keep) keep->insert(keep->end(), reps.begin(), reps.end());
  }
  o.detail = std::to_string(checked) + " coefficients" + o.detail;
  return o;
}

Outcome factorization(std::vector<ConstraintReport>* keep = nullptr) {
  Outcome o;
  double worst = 0.0;
  for (auto [g, degree, genus] : {std::tuple{make("Z", 2), 6, 2}, std::tuple{make("S", 3), 4, 1}}) {
    const ClassAlgebra a(g.table);
    const CanonicalBasis cb = canonical_basis(character_table(a), a);
    const auto rep = factorization_check(OmegaEngine(a), cb, SeriesCaps::for_potential(degree, genus), 1e-8, g.label);
    worst = std::max(worst, as_double(rep.max_residual));
    o.pass = o.pass && rep.passed() && rep.checked > 0;
    if (keep) keep->push_back(rep);
  }
  std::ostringstream os;
  os << "max residual " << worst << " (tol 1e-8)";
  o.detail = os.str();
  return o;
}

Outcome mutation() {
  Outcome o;
  std::ostringstream os;
  std::size_t total = 0, detected = 0;
  std::string first_missed;
  for (const auto& g : virasoro_groups()) {
    const PotentialData d(g, 6, 2);
    const ExactSeries kphi = class_potential(OmegaEngine(d.algebra), kdv_potential_caps(4, 1));
    MutationInputs in;
    in.algebra = &d.algebra;
    in.phi = &d.phi;
    in.z = &d.z;
    in.kdv_phi = &kphi;
    std::size_t mine = 0;
    const auto outcomes = mutation_sweep(in, mutation_candidates(d.phi, 1, 6));
    for (const auto& m : outcomes) {
      if (m.detected()) {
        ++mine;
      } else if (first_missed.empty()) {
        first_missed = g.label + " " + m.monomial.str() + " lambda^" + std::to_string(m.lambda);
      }
    }
    total += outcomes.size();
    detected += mine;
    os << g.label << " " << mine << "/" << outcomes.size() << "; ";
  }
  o.pass = detected == total;
  os << "detected " << detected << " of " << total;
  if (!first_missed.empty()) os << ", first undetected: " << first_missed;
  o.detail = os.str();
  return o;
}

std::string suite_json() {
  std::vector<ConstraintReport> reps;
  virasoro(&reps);
  kdv(&reps);
  factorization(&reps);
  Json j = to_json(reps);
  const PotentialData d(make("S", 3), 4, 1);
  j.push_back({{"phi", to_json(d.phi)}, {"z", to_json(d.z)}, {"chartable", to_json(character_table(d.algebra), d.cb)}});
  return j.dump(2);
}

Outcome determinism() {
  Outcome o;
  const std::string first = suite_json(), second = suite_json();
  const bool same_json = first == second;
  bool same_brute = true;
  std::size_t keys = 0;
  for (const auto& g : {make("S", 4), make("D", 5)}) {
    const ClassAlgebra a(g.table);
    for (int genus = 0; genus <= 2; ++genus)
      for_each_sorted(a.rank(), 2, [&](const std::vector<ClassIndex>& cls) {
        const OmegaKey key{genus, cls};
        ++keys;
        // Fresh engines so that nothing is shared between the runs.
        const Rational one = OmegaEngine(a).bruteforce(key, {1'000'000'000, 1});
        const Rational four = OmegaEngine(a).bruteforce(key, {1'000'000'000, 4});
        same_brute = same_brute && one == four;
      });
  }
  o.pass = same_json && same_brute;
  o.detail = std::string(same_json ? "identical" : "different") + " JSON (" + std::to_string(first.size()) +
             " bytes) over two runs; " + std::to_string(keys) + " brute-force keys " +
             (same_brute ? "independent of" : "depend on") + " the worker count";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"Frobenius structure", frobenius},
      {"brute force equals recursion", oracle_equivalence},
      {"CohFT axioms", cohft},
      {"tensor law", tensor},
      {"intersection numbers", intersection_numbers},
      {"semisimplicity", semisimplicity},
      {"Virasoro constraints", [] { return virasoro(); }},
      {"KdV equation", [] { return kdv(); }},
      {"factorization", [] { return factorization(); }},
      {"mutation sensitivity", mutation},
      {"determinism", determinism},
  };
  int failed = 0, index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("error: ") + e.what();
    }
    failed += !o.pass;
    std::printf("criterion %2d %s  %s: %s\n", index, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
