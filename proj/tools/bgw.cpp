// Command-line front end for the orbifold Gromov-Witten theory of BG.
//
// Exit status: 0 success, 1 failed check, 2 bad input, 3 resource cap hit.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <thread>

#include "bgw/cohft.hpp"
#include "bgw/correlators.hpp"
#include "bgw/factorization.hpp"
#include "bgw/group_spec.hpp"
#include "bgw/kdv.hpp"
#include "bgw/mutation.hpp"
#include "bgw/psi.hpp"
#include "bgw/report.hpp"
#include "bgw/virasoro.hpp"

namespace {

using namespace bgw;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;
constexpr int kResourceError = 3;

struct RunConfig {
  std::string group;
  int genus = -1;
  int degree = -1;
  int levels = -1;
  int a_max = 2;
  double tol = 1e-8;
  std::uint64_t work_cap = 1'000'000'000;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;
  std::string mutate;
  // command-specific
  std::string classes;
  std::string insertions;
  std::string basis = "class";
  std::string which;
  bool profile = false;
};

struct Output {
  Json json;
  std::string text;
  int status = kOk;
};

// "S3", "Z2xZ3", "Q8" as shorthand for the JSON forms.
Json shorthand_spec(const std::string& s) {
  static const std::regex named(R"(^(S|Z|D)(\d+)$)");
  const auto x = s.find('x');
  if (x != std::string::npos)
    return Json{{"product", Json::array({shorthand_spec(s.substr(0, x)), shorthand_spec(s.substr(x + 1))})}};
  if (s == "Q8") return Json{{"name", "Q8"}};
  std::smatch m;
  if (std::regex_match(s, m, named)) return Json{{"name", m[1].str()}, {"param", std::stoi(m[2].str())}};
  throw Error(ErrorKind::InvalidInput, "group '" + s + "' is neither a file, JSON, nor a name like S3 or Z2xZ3");
}

ParsedGroup load_group(const std::string& arg) {
  if (arg.empty()) throw Error(ErrorKind::InvalidInput, "--group is required");
  std::ifstream f(arg);
  if (f) {
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_group_spec(ss.str());
  }
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && arg[first] == '{') return parse_group_spec(arg);
  return parse_group_spec(shorthand_spec(arg));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorKind::InvalidInput, std::string("bad ") + what + " '" + s + "'");
}

// "t[0,1] t[1,1]^2@0": monomial and lambda exponent (0 when omitted).
std::pair<Monomial, int> parse_mutation(const std::string& s) {
  const auto at = s.rfind('@');
  if (at == std::string::npos) return {Monomial::parse(s), 0};
  return {Monomial::parse(s.substr(0, at)), parse_int(s.substr(at + 1), "lambda exponent")};
}

int or_default(int value, int fallback) { return value < 0 ? fallback : value; }

SeriesCaps potential_caps(const RunConfig& c, int default_degree, int default_genus, bool full_levels) {
  const int g = or_default(c.genus, default_genus), d = or_default(c.degree, default_degree);
  if (g < 0 || d < 0) throw Error(ErrorKind::InvalidInput, "caps must be non-negative");
  SeriesCaps caps = SeriesCaps::for_potential(d, g);
  if (c.levels >= 0) {
    if (full_levels && c.levels < caps.max_level)
      throw Error(ErrorKind::InvalidInput, "level cap " + std::to_string(c.levels) + " is below 3G-3+D = " +
                                               std::to_string(caps.max_level) + " and would drop correlators");
    caps.max_level = std::max(1, c.levels);
  }
  return caps;
}

OmegaOptions omega_options(const RunConfig& c) { return {c.work_cap, std::max(1u, c.jobs)}; }

ExactSeries mutated(const ExactSeries& phi, const RunConfig& c) {
  if (c.mutate.empty()) return phi;
  auto [m, e] = parse_mutation(c.mutate);
  return mutate(phi, m, e);
}

Output aggregate(const std::string& check, const std::string& label, std::vector<ConstraintReport> reps) {
  Output o;
  bool ok = true;
  std::string text;
  for (const auto& r : reps) {
    ok = ok && r.passed();
    text += summary_line(r) + "\n";
  }
  text += std::string(ok ? "PASS" : "FAIL") + " check " + check + " group=" + label + "\n";
  o.json = {{"check", check}, {"group", label}, {"passed", ok}, {"reports", to_json(reps)}};
  o.text = text;
  o.status = ok ? kOk : kCheckFailed;
  return o;
}

Output cmd_group(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  Output o;
  o.json = group_json(alg);
  o.json["label"] = pg.label;
  const auto& cd = alg.conjugacy();
  std::ostringstream os;
  os << "group " << pg.label << " order=" << alg.order() << " r=" << alg.rank()
     << (alg.group().is_abelian() ? " abelian" : "") << "\n";
  for (std::size_t k = 0; k < alg.rank(); ++k)
    os << "class " << k << " rep=" << alg.group().name(cd.representative[k]) << " size=" << cd.class_size[k]
       << " centralizer=" << cd.class_centralizer(static_cast<ClassIndex>(k)) << " inverse=" << cd.inverse_class[k]
       << "\n";
  o.text = os.str();
  return o;
}

Output cmd_chartable(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  CharacterOptions opts;
  opts.seed = c.seed;
  const CharacterTable ct = character_table(alg, opts);
  const CanonicalBasis cb = canonical_basis(ct, alg);
  const CanonicalBasisResiduals res = canonical_basis_residuals(cb, alg);
  Output o;
  o.json = to_json(ct, cb);
  o.json["label"] = pg.label;
  o.json["residuals"] = {{"idempotency", json_float(res.idempotency)},
                         {"orthogonality", json_float(res.orthogonality)},
                         {"unit", json_float(res.unit)}};
  std::ostringstream os;
  os << "chartable " << pg.label << " r=" << ct.r << "\n";
  for (std::size_t a = 0; a < ct.r; ++a) {
    os << "chi_" << a << " deg=" << ct.degrees[a] << " nu=" << cb.nus[a].str() << " :";
    for (const auto& z : ct.values[a]) {
      os << " " << json_float(z.real()).dump();
      if (std::abs(z.imag()) > ct.tolerance) os << (z.imag() < 0 ? "-" : "+") << json_float(std::abs(z.imag())).dump() << "i";
    }
    os << "\n";
  }
  os << "orthogonality_residual=" << json_float(ct.orthogonality_residual).dump() << "\n";
  o.text = os.str();
  return o;
}

Output cmd_omega(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  OmegaEngine engine(alg);
  OmegaKey key;
  key.genus = or_default(c.genus, 0);
  for (const auto& label : split(c.classes, ','))
    key.classes.push_back(resolve_class_label(alg.group(), alg.conjugacy(), label));
  EnumerationStats stats;
  const Rational brute = engine.bruteforce(key, omega_options(c), &stats);
  const Rational rec = engine.recursive(key);
  const bool agree = brute == rec;
  Output o;
  o.json = {{"group", pg.label},     {"genus", key.genus},      {"classes", key.classes},
            {"bruteforce", brute.str()}, {"recursive", rec.str()}, {"agree", agree}};
  std::ostringstream os;
  os << "omega " << pg.label << " g=" << key.genus << " classes=[";
  for (std::size_t i = 0; i < key.classes.size(); ++i) os << (i ? "," : "") << key.classes[i];
  os << "] bruteforce=" << brute.str() << " recursive=" << rec.str() << (agree ? " agree" : " MISMATCH") << "\n";
  if (c.profile) {
    const double rate = stats.seconds > 0 ? static_cast<double>(stats.tuples_covered) / stats.seconds : 0.0;
    o.json["profile"] = {{"tuples_covered", stats.tuples_covered},
                         {"products_evaluated", stats.products_evaluated},
                         {"seconds", json_float(stats.seconds)},
                         {"tuples_per_second", json_float(rate)},
                         {"jobs", std::max(1u, c.jobs)}};
    os << "profile tuples=" << stats.tuples_covered << " products=" << stats.products_evaluated
       << " seconds=" << json_float(stats.seconds).dump() << " tuples_per_second=" << json_float(rate).dump() << "\n";
  }
  o.text = os.str();
  o.status = agree ? kOk : kCheckFailed;
  return o;
}

Output cmd_correlator(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  OmegaEngine engine(alg);
  CorrelatorKey key;
  key.genus = or_default(c.genus, 0);
  for (const auto& item : split(c.insertions, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw Error(ErrorKind::InvalidInput, "insertion '" + item + "' is not level:class");
    key.insertions.push_back({parse_int(item.substr(0, colon), "level"),
                              resolve_class_label(alg.group(), alg.conjugacy(), item.substr(colon + 1))});
  }
  const CorrelatorValue v = orbifold_correlator_detail(engine, key);
  Output o;
  Json ins = Json::array();
  for (const auto& i : key.insertions) ins.push_back({{"level", i.level}, {"class", i.cls}});
  o.json = {{"group", pg.label}, {"genus", key.genus}, {"insertions", ins},  {"value", v.value.str()},
            {"psi", v.psi.str()}, {"omega", v.omega.str()}, {"vanishing_reason", v.vanishing_reason}};
  std::ostringstream os;
  os << "correlator " << pg.label << " g=" << key.genus << " <";
  for (std::size_t i = 0; i < key.insertions.size(); ++i)
    os << (i ? " " : "") << "tau_" << key.insertions[i].level << "(e_" << key.insertions[i].cls << ")";
  os << "> = " << v.value.str();
  if (!v.vanishing_reason.empty()) os << " (" << v.vanishing_reason << ")";
  os << "\n";
  o.text = os.str();
  return o;
}

Output cmd_potential(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  OmegaEngine engine(alg);
  const SeriesCaps caps = potential_caps(c, 3, 1, false);
  ExactSeries phi(caps);
  if (c.basis == "class") {
    phi = class_potential(engine, caps);
  } else if (c.basis == "canonical") {
    CharacterOptions copts;
    copts.seed = c.seed;
    phi = canonical_rescaled_potential(canonical_basis(character_table(alg, copts), alg).nus, caps);
  } else {
    throw Error(ErrorKind::InvalidInput, "--basis must be class or canonical");
  }
  phi = mutated(phi, c);
  const ExactSeries z = partition_function(phi);
  Output o;
  o.json = {{"group", pg.label}, {"phi", to_json(phi)}, {"z", to_json(z)}};
  std::ostringstream os;
  os << "potential " << pg.label << " basis=" << c.basis << " D=" << caps.max_degree << " G=" << caps.max_genus
     << " A=" << caps.max_level << "\n";
  for (const auto& [name, s] : {std::pair<const char*, const ExactSeries*>{"phi", &phi}, {"z", &z}}) {
    os << name << " terms=" << s->size() << "\n";
    for (const auto& [m, l] : s->terms())
      for (const auto& [e, coeff] : l.entries())
        os << "  " << coeff.str() << " * " << m.str() << " * lambda^" << e << "\n";
  }
  o.text = os.str();
  return o;
}

ConstraintReport tensor_report(const ParsedGroup& pg, const RunConfig& c) {
  if (pg.factors.size() != 2)
    throw Error(ErrorKind::InvalidInput, "check tensor needs a product group such as Z2xZ3");
  ClassAlgebra g(pg.factors[0].table), h(pg.factors[1].table);
  const int genus = or_default(c.genus, 2), n = or_default(c.degree, 3);
  const TensorReport t = tensor_omega_check(g, h, genus, n, omega_options(c));
  ConstraintReport rep;
  rep.check = "tensor";
  rep.op = "Omega(GxH) = Omega(G) Omega(H), g<=" + std::to_string(genus) + " n<=" + std::to_string(n);
  rep.group = pg.label;
  rep.checked = t.checked;
  for (const auto& m : t.mismatches) {
    std::string loc = "g=" + std::to_string(m.genus) + " classes=[";
    for (std::size_t i = 0; i < m.product_classes.size(); ++i)
      loc += (i ? "," : "") + std::to_string(m.product_classes[i]);
    rep.note_residual(m.product_value - m.factor_value);
    rep.add_violation({loc + "]", 0, m.product_value.str(), m.factor_value.str()});
  }
  return rep;
}

Output cmd_check(const RunConfig& c) {
  const ParsedGroup pg = load_group(c.group);
  ClassAlgebra alg(pg.table);
  OmegaEngine engine(alg);
  const std::string& label = pg.label;
  if (!c.mutate.empty() && c.which != "virasoro" && c.which != "kdv")
    throw Error(ErrorKind::InvalidInput, "--mutate applies to check virasoro and check kdv");
  std::vector<ConstraintReport> reps;
  if (c.which == "cohft") {
    CohftOptions opts;
    opts.max_genus = or_default(c.genus, 2);
    opts.max_n = or_default(c.degree, 4);
    opts.seed = c.seed;
    opts.omega = omega_options(c);
    reps = frobenius_checks(alg, label);
    for (auto& r : correlator_frobenius_checks(engine, label)) reps.push_back(std::move(r));
    for (auto& r : cohft_checks(engine, opts, label)) reps.push_back(std::move(r));
  } else if (c.which == "virasoro") {
    const SeriesCaps caps = potential_caps(c, 6, 2, true);
    CharacterOptions copts;
    copts.seed = c.seed;
    const CanonicalBasis cb = canonical_basis(character_table(alg, copts), alg);
    const ExactSeries z_class = partition_function(mutated(class_potential(engine, caps), c));
    const ExactSeries z_canon = partition_function(canonical_rescaled_potential(cb.nus, caps));
    VirasoroOptions vopts;
    reps = virasoro_check(alg, z_class, z_canon, cb, vopts, label);
    // Bracket relations and the scalar identity on random series.
    const auto ctx = VirasoroContext::from_algebra(alg);
    const auto unit_ctx = VirasoroContext::identity(alg.rank());
    std::uint64_t seed = c.seed;
    for (int m : vopts.ns)
      for (int n : vopts.ns) {
        if (m >= n || m + n < -1) continue;
        reps.push_back(commutator_check({VirasoroSpec::Flavor::Diagonal, m, 0}, {VirasoroSpec::Flavor::Diagonal, n, 0},
                                        ctx, caps, seed++, label));
        for (std::size_t a = 0; a < alg.rank(); ++a)
          for (std::size_t b = 0; b < alg.rank(); ++b)
            reps.push_back(commutator_check({VirasoroSpec::Flavor::PerIndex, m, a},
                                            {VirasoroSpec::Flavor::PerIndex, n, b}, unit_ctx, caps, seed++, label));
      }
    for (int m : vopts.ns) reps.push_back(operator_identity_check(alg, cb, m, caps, seed++, c.tol, label));
  } else if (c.which == "kdv") {
    const int d = or_default(c.degree, 4), g = or_default(c.genus, 1);
    const ExactSeries phi = mutated(class_potential(engine, kdv_potential_caps(d, g)), c);
    reps = KdvSystem(alg, phi, c.a_max, d).check(label);
  } else if (c.which == "factorization") {
    CharacterOptions copts;
    copts.seed = c.seed;
    const CanonicalBasis cb = canonical_basis(character_table(alg, copts), alg);
    reps.push_back(factorization_check(engine, cb, potential_caps(c, 6, 2, true), c.tol, label));
  } else if (c.which == "tensor") {
    reps.push_back(tensor_report(pg, c));
  } else {
    throw Error(ErrorKind::InvalidInput, "unknown check '" + c.which + "'");
  }
  return aggregate(c.which, label, std::move(reps));
}

int emit(const Output& o, const RunConfig& c) {
  const std::string body = c.format == "text" ? o.text : o.json.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw Error(ErrorKind::InvalidInput, "cannot write " + c.out);
    f << body;
  }
  return o.status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbifold Gromov-Witten invariants of BG for a finite group G"};
  app.require_subcommand(1);
  app.fallthrough();
  RunConfig c;
  app.add_option("--group", c.group, "group spec: file, inline JSON, or a name like S3, D4, Q8, Z2xZ3");
  app.add_option("--genus", c.genus, "genus (omega, correlator) or genus cap");
  app.add_option("--degree", c.degree, "degree cap, or the number of insertions for cohft/tensor");
  app.add_option("--levels", c.levels, "descendant level cap (default 3G-3+D)");
  app.add_option("--tol", c.tol, "tolerance for floating-point comparisons")->check(CLI::PositiveNumber);
  app.add_option("--work-cap", c.work_cap, "bound on the brute-force tuple space");
  app.add_option("--jobs", c.jobs, "worker threads for brute-force enumeration")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", c.seed, "seed for randomized checks and the character table");
  app.add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", c.out, "write output to this file");
  app.add_option("--mutate", c.mutate, "debug: double the coefficient 'MONOMIAL@LAMBDA' of Phi, e.g. 't[1,1]@0'");

  app.add_subcommand("group", "conjugacy classes, centralizers, inverse classes");
  app.add_subcommand("chartable", "character table and canonical idempotents");
  auto* omega = app.add_subcommand("omega", "Omega_g by brute force and by recursion");
  omega->add_option("--classes", c.classes, "comma-separated class labels (indices or element names)");
  omega->add_flag("--profile", c.profile, "report enumeration throughput");
  auto* corr = app.add_subcommand("correlator", "orbifold correlator <tau_a(e_m) ...>_g");
  corr->add_option("--insertions", c.insertions, "comma-separated level:class pairs, e.g. 1:1,0:0")->required();
  auto* pot = app.add_subcommand("potential", "Phi and Z = exp(Phi)");
  pot->add_option("--basis", c.basis, "class or canonical")->check(CLI::IsMember({"class", "canonical"}));
  auto* check = app.add_subcommand("check", "run a family of checks");
  check->add_option("which", c.which, "cohft, virasoro, kdv, factorization or tensor")
      ->required()
      ->check(CLI::IsMember({"cohft", "virasoro", "kdv", "factorization", "tensor"}));
  check->add_option("--a-max", c.a_max, "largest a in the KdV check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    const std::string cmd = app.get_subcommands().front()->get_name();
    Output o;
    if (cmd == "group") o = cmd_group(c);
    else if (cmd == "chartable") o = cmd_chartable(c);
    else if (cmd == "omega") o = cmd_omega(c);
    else if (cmd == "correlator") o = cmd_correlator(c);
    else if (cmd == "potential") o = cmd_potential(c);
    else o = cmd_check(c);
    return emit(o, c);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_resource_error() ? kResourceError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
}
