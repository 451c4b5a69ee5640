#include "bgw/cohft.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "bgw/correlators.hpp"
#include "bgw/psi.hpp"

namespace bgw {

namespace {

std::string key_str(int genus, const std::vector<ClassIndex>& cls) {
  std::string s = "g=" + std::to_string(genus) + " (";
  for (std::size_t i = 0; i < cls.size(); ++i) s += (i ? "," : "") + std::to_string(cls[i]);
  return s + ")";
}

ConstraintReport make_report(const std::string& check, const std::string& op, const std::string& label) {
  ConstraintReport r;
  r.check = check;
  r.op = op;
  r.group = label;
  return r;
}

void compare(ConstraintReport& r, const std::string& where, const Rational& lhs, const Rational& rhs) {
  ++r.checked;
  Rational diff = lhs - rhs;
  r.note_residual(diff);
  if (!diff.is_zero()) r.add_violation({where, 0, lhs.str(), rhs.str()});
}

void for_each_sorted_tuple(std::size_t rank, std::size_t len,
                           const std::function<void(const std::vector<ClassIndex>&)>& visit) {
  std::vector<ClassIndex> t;
  std::function<void(ClassIndex)> rec = [&](ClassIndex from) {
    if (t.size() == len) {
      visit(t);
      return;
    }
    for (ClassIndex c = from; c < rank; ++c) {
      t.push_back(c);
      rec(c);
      t.pop_back();
    }
  };
  rec(0);
}

Rational brute(const OmegaEngine& e, int genus, std::vector<ClassIndex> cls, const OmegaOptions& o) {
  std::sort(cls.begin(), cls.end());
  return e.bruteforce({genus, std::move(cls)}, o);
}

}  // namespace

std::vector<ConstraintReport> frobenius_checks(const ClassAlgebra& alg, const std::string& label) {
  const std::size_t r = alg.rank();
  auto e = [&](std::size_t k) { return ClassVector::basis(r, k); };
  auto vec_str = [](const ClassVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v.coeffs[i].str();
    return s + "]";
  };
  auto vec_compare = [&](ConstraintReport& rep, const std::string& where, const ClassVector& a, const ClassVector& b) {
    ++rep.checked;
    Rational worst;
    for (std::size_t i = 0; i < r; ++i) worst = std::max(worst, (a.coeffs[i] - b.coeffs[i]).abs());
    rep.note_residual(worst);
    if (!worst.is_zero()) rep.add_violation({where, 0, vec_str(a), vec_str(b)});
  };
  std::vector<std::vector<ClassVector>> prod(r, std::vector<ClassVector>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) prod[i][j] = alg.product(e(i), e(j));

  auto comm = make_report("frobenius", "commutativity", label);
  auto assoc = make_report("frobenius", "associativity", label);
  auto unit = make_report("frobenius", "unit", label);
  auto frob = make_report("frobenius", "eta(a*b,c)=eta(a,b*c)", label);
  for (std::size_t i = 0; i < r; ++i) {
    vec_compare(unit, "e_0*e_" + std::to_string(i), alg.product(alg.unit(), e(i)), e(i));
    for (std::size_t j = 0; j < r; ++j) {
      vec_compare(comm, "(" + std::to_string(i) + "," + std::to_string(j) + ")", prod[i][j], prod[j][i]);
      for (std::size_t k = 0; k < r; ++k) {
        const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
        vec_compare(assoc, where, alg.product(prod[i][j], e(k)), alg.product(e(i), prod[j][k]));
        compare(frob, where, alg.pairing(prod[i][j], e(k)), alg.pairing(e(i), prod[j][k]));
      }
    }
  }
  return {comm, assoc, unit, frob};
}

std::vector<ConstraintReport> correlator_frobenius_checks(const OmegaEngine& engine, const std::string& label) {
  const ClassAlgebra& alg = engine.algebra();
  const std::size_t r = alg.rank();
  auto three = [&](std::size_t j, std::size_t k, std::size_t l) {
    return orbifold_correlator(engine, {0, {{0, static_cast<ClassIndex>(j)}, {0, static_cast<ClassIndex>(k)},
                                            {0, static_cast<ClassIndex>(l)}}});
  };
  auto metric = make_report("frobenius", "eta = <tau_0 tau_0 tau_0(e_0)>_0", label);
  auto triples = make_report("frobenius", "3-point correlator = triple count", label);
  auto structure = make_report("frobenius", "structure constants from correlators", label);
  for (std::size_t j = 0; j < r; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      const std::string jk = "(" + std::to_string(j) + "," + std::to_string(k) + ")";
      compare(metric, jk, alg.metric_entry(j, k), three(j, k, 0));
      ClassVector rebuilt = ClassVector::zero(r);
      for (std::size_t l = 0; l < r; ++l) {
        const Rational c = three(j, k, l);
        compare(triples, jk.substr(0, jk.size() - 1) + "," + std::to_string(l) + ")", c,
                engine.bruteforce({0, {static_cast<ClassIndex>(j), static_cast<ClassIndex>(k), static_cast<ClassIndex>(l)}}));
        for (std::size_t m = 0; m < r; ++m) rebuilt.coeffs[m] += c * alg.inverse_metric_entry(l, m);
      }
      ClassVector direct = alg.product(ClassVector::basis(r, j), ClassVector::basis(r, k));
      for (std::size_t m = 0; m < r; ++m)
        compare(structure, jk + "->" + std::to_string(m), direct.coeffs[m], rebuilt.coeffs[m]);
    }
  }
  return {metric, triples, structure};
}

ConstraintReport cutting_trees_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label) {
  const ClassAlgebra& alg = engine.algebra();
  const auto& cd = alg.conjugacy();
  auto rep = make_report("cohft", "cutting trees", label);
  for (int g = 0; g <= opts.max_genus; ++g) {
    for (int n = 0; n <= opts.max_n; ++n) {
      for_each_sorted_tuple(alg.rank(), static_cast<std::size_t>(n), [&](const std::vector<ClassIndex>& gamma) {
        const Rational lhs = brute(engine, g, gamma, opts.omega);
        for (int g1 = 0; g1 <= g; ++g1) {
          for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            std::vector<ClassIndex> left, right;
            for (int j = 0; j < n; ++j) (mask >> j & 1 ? left : right).push_back(gamma[static_cast<std::size_t>(j)]);
            Rational rhs;
            for (ClassIndex z = 0; z < alg.rank(); ++z) {
              auto l = left;
              l.push_back(z);
              Rational a = brute(engine, g1, l, opts.omega);
              if (a.is_zero()) continue;
              auto rr = right;
              rr.push_back(cd.inverse_class[z]);
              rhs += a * alg.inverse_metric_entry(z, cd.inverse_class[z]) * brute(engine, g - g1, rr, opts.omega);
            }
            compare(rep, key_str(g, gamma) + " g1=" + std::to_string(g1) + " I=" + std::to_string(mask), lhs, rhs);
          }
        }
      });
    }
  }
  return rep;
}

ConstraintReport cutting_loops_check(const OmegaEngine& engine, const CohftOptions& opts, const std::string& label) {
  const ClassAlgebra& alg = engine.algebra();
  const auto& cd = alg.conjugacy();
  auto rep = make_report("cohft", "cutting loops", label);
  for (int g = 1; g <= opts.max_genus; ++g) {
    for (int n = 0; n <= opts.max_n; ++n) {
      for_each_sorted_tuple(alg.rank(), static_cast<std::size_t>(n), [&](const std::vector<ClassIndex>& gamma) {
        Rational rhs;
        for (ClassIndex z = 0; z < alg.rank(); ++z) {
          auto k = gamma;
          k.push_back(z);
          k.push_back(cd.inverse_class[z]);
          rhs += alg.inverse_metric_entry(z, cd.inverse_class[z]) * brute(engine, g - 1, k, opts.omega);
        }
        compare(rep, key_str(g, gamma), brute(engine, g, gamma, opts.omega), rhs);
      });
    }
  }
  return rep;
}

ConstraintReport forgetting_tails_check(const OmegaEngine& engine, const CohftOptions& opts,
                                        const std::string& label) {
  auto rep = make_report("cohft", "forgetting tails", label);
  for (int g = 0; g <= opts.max_genus; ++g) {
    for (int n = 0; n <= opts.max_n; ++n) {
      for_each_sorted_tuple(engine.algebra().rank(), static_cast<std::size_t>(n),
                            [&](const std::vector<ClassIndex>& gamma) {
                              auto with_unit = gamma;
                              with_unit.insert(with_unit.begin(), 0);
                              compare(rep, key_str(g, gamma), brute(engine, g, gamma, opts.omega),
                                      engine.bruteforce({g, with_unit}, opts.omega));
                            });
    }
  }
  return rep;
}

ConstraintReport permutation_invariance_check(const OmegaEngine& engine, const CohftOptions& opts,
                                              const std::string& label) {
  auto rep = make_report("cohft", "permutation invariance", label);
  std::mt19937_64 rng(opts.seed);
  const auto r = static_cast<ClassIndex>(engine.algebra().rank());
  for (int t = 0; t < opts.random_trials; ++t) {
    const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(opts.max_genus + 1));
    const auto n = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(opts.max_n + 1));
    std::vector<ClassIndex> cls(n);
    for (auto& c : cls) c = static_cast<ClassIndex>(rng() % r);
    auto shuffled = cls;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    compare(rep, key_str(g, cls) + " vs " + key_str(g, shuffled), engine.bruteforce({g, cls}, opts.omega),
            engine.bruteforce({g, shuffled}, opts.omega));
  }
  return rep;
}

ConstraintReport conjugation_invariance_check(const OmegaEngine& engine, const CohftOptions& opts,
                                              const std::string& label) {
  auto rep = make_report("cohft", "conjugation invariance", label);
  const ClassAlgebra& alg = engine.algebra();
  const GroupTable& grp = alg.group();
  const auto& cd = alg.conjugacy();
  std::mt19937_64 rng(opts.seed + 1);
  const std::uint64_t order = grp.order();
  for (int t = 0; t < opts.random_trials; ++t) {
    const int g = static_cast<int>(rng() % static_cast<std::uint64_t>(opts.max_genus + 1));
    const auto n = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(opts.max_n + 1));
    std::vector<Element> sigma(n);
    for (auto& s : sigma) s = static_cast<Element>(rng() % order);
    // Individually conjugated representatives name the same classes.
    std::vector<ClassIndex> a, b;
    for (Element s : sigma) {
      a.push_back(resolve_class_label(grp, cd, grp.name(s)));
      const auto h = static_cast<Element>(rng() % order);
      b.push_back(resolve_class_label(grp, cd, grp.name(grp.conjugate(h, s))));
    }
    compare(rep, "labels " + key_str(g, a), engine.bruteforce({g, a}, opts.omega),
            engine.bruteforce({g, b}, opts.omega));
    // Simultaneous conjugation of a fixed element tuple.
    const auto h = static_cast<Element>(rng() % order);
    Element p = GroupTable::identity, q = GroupTable::identity;
    for (Element s : sigma) {
      p = grp.mul(p, s);
      q = grp.mul(q, grp.conjugate(h, s));
    }
    compare(rep, "elements " + key_str(g, a), Rational(static_cast<long>(engine.commutator_count(g, p, opts.omega))),
            Rational(static_cast<long>(engine.commutator_count(g, q, opts.omega))));
  }
  return rep;
}

ConstraintReport string_equation_check(const OmegaEngine& engine, const CohftOptions& opts,
                                       const std::string& label) {
  auto rep = make_report("cohft", "string equation with e_0", label);
  const std::size_t r = engine.algebra().rank();
  const int degree = opts.max_n + 1;
  for_each_dimension_key(opts.max_genus, degree, 3 * opts.max_genus - 3 + degree + 1, r,
                         [&](int g, const std::vector<SeriesVar>& vars) {
                           if (vars.front().level != 0 || vars.front().slot != 0) return;
                           if (!is_stable(g, vars.size() - 1)) return;
                           CorrelatorKey full{g, {}}, base{g, {}};
                           for (const auto& v : vars)
                             full.insertions.push_back({v.level, static_cast<ClassIndex>(v.slot)});
                           base.insertions.assign(full.insertions.begin() + 1, full.insertions.end());
                           Rational rhs;
                           for (std::size_t j = 0; j < base.insertions.size(); ++j) {
                             if (base.insertions[j].level == 0) continue;
                             CorrelatorKey k = base;
                             --k.insertions[j].level;
                             rhs += orbifold_correlator(engine, k);
                           }
                           std::vector<ClassIndex> cls;
                           for (const auto& ins : full.insertions) cls.push_back(ins.cls);
                           compare(rep, key_str(g, cls), orbifold_correlator(engine, full), rhs);
                         });
  return rep;
}

std::vector<ConstraintReport> cohft_checks(const OmegaEngine& engine, const CohftOptions& opts,
                                           const std::string& label) {
  std::vector<ConstraintReport> out = frobenius_checks(engine.algebra(), label);
  for (auto& r : correlator_frobenius_checks(engine, label)) out.push_back(std::move(r));
  out.push_back(cutting_trees_check(engine, opts, label));
  out.push_back(cutting_loops_check(engine, opts, label));
  out.push_back(forgetting_tails_check(engine, opts, label));
  out.push_back(permutation_invariance_check(engine, opts, label));
  out.push_back(conjugation_invariance_check(engine, opts, label));
  out.push_back(string_equation_check(engine, opts, label));
  return out;
}

}  // namespace bgw
