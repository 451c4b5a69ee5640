#include "bgw/group.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "bgw/error.hpp"

namespace bgw {

namespace {

void check_order_limits(std::size_t order, const GroupLimits& limits) {
  if (order > limits.max_order) {
    throw Error(ErrorKind::OrderExceedsLimit, "group order " + std::to_string(order) +
                                                  " exceeds limit " + std::to_string(limits.max_order));
  }
  if (order * order > limits.max_table_entries) {
    throw Error(ErrorKind::OrderExceedsLimit,
                "Cayley table for order " + std::to_string(order) + " exceeds table-entry limit");
  }
}

std::string triple(std::size_t x, std::size_t y, std::size_t z) {
  return "(" + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z) + ")";
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (std::size_t v : p.image) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

}  // namespace

GroupTable make_group_table(std::size_t order, std::vector<Element> mult,
                            std::vector<std::string> names) {
  GroupTable g;
  g.order_ = order;
  g.mult_ = std::move(mult);
  g.names_ = std::move(names);
  g.inv_.assign(order, 0);
  for (Element x = 0; x < order; ++x) {
    auto r = g.row(x);
    g.inv_[x] = static_cast<Element>(std::find(r.begin(), r.end(), GroupTable::identity) - r.begin());
  }
  return g;
}

std::vector<std::vector<std::size_t>> GroupTable::cayley_table() const {
  std::vector<std::vector<std::size_t>> t(order_, std::vector<std::size_t>(order_));
  for (std::size_t x = 0; x < order_; ++x)
    for (std::size_t y = 0; y < order_; ++y) t[x][y] = mul(static_cast<Element>(x), static_cast<Element>(y));
  return t;
}

bool GroupTable::is_abelian() const {
  for (Element x = 0; x < order_; ++x)
    for (Element y = x + 1; y < order_; ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

std::size_t GroupTable::element_order(Element x) const {
  std::size_t k = 1;
  for (Element p = x; p != identity; p = mul(p, x)) ++k;
  return k;
}

// ---------------------------------------------------------------------------
// Permutations

Permutation Permutation::operator*(const Permutation& q) const {
  std::size_t d = std::max(degree(), q.degree());
  Permutation r;
  r.image.resize(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::size_t qi = i < q.degree() ? q.image[i] : i;
    r.image[i] = qi < degree() ? image[qi] : qi;
  }
  return r;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < image.size(); ++i)
    if (image[i] != i) return false;
  return true;
}

std::string Permutation::cycle_notation() const {
  std::string out;
  std::vector<bool> seen(image.size(), false);
  for (std::size_t i = 0; i < image.size(); ++i) {
    if (seen[i] || image[i] == i) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = image[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

Permutation parse_cycles(std::string_view text, std::size_t min_degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidInput, "bad cycle notation '" + std::string(text) + "': " + why);
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    if (c != '(') fail("expected '('");
    ++i;
    std::vector<std::size_t> cyc;
    while (true) {
      while (i < text.size() && (std::isspace(static_cast<unsigned char>(text[i])) || text[i] == ',')) ++i;
      if (i >= text.size()) fail("unterminated cycle");
      if (text[i] == ')') { ++i; break; }
      if (!std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a point index");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 1000000) fail("point index too large");
        ++i;
      }
      cyc.push_back(v);
    }
    cycles.push_back(std::move(cyc));
  }
  std::size_t d = min_degree;
  for (const auto& cyc : cycles)
    for (std::size_t v : cyc) d = std::max(d, v + 1);
  Permutation p;
  p.image.resize(d);
  std::iota(p.image.begin(), p.image.end(), std::size_t{0});
  std::vector<bool> used(d, false);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      if (used[cyc[k]]) fail("cycles are not disjoint (point " + std::to_string(cyc[k]) + ")");
      used[cyc[k]] = true;
      p.image[cyc[k]] = cyc[(k + 1) % cyc.size()];
    }
  }
  return p;
}

// ---------------------------------------------------------------------------
// Builders

GroupTable build_from_cayley(const std::vector<std::vector<std::size_t>>& table,
                             const GroupLimits& limits) {
  const std::size_t n = table.size();
  if (n == 0) throw Error(ErrorKind::NotAGroup, "empty table");
  check_order_limits(n, limits);
  for (std::size_t x = 0; x < n; ++x) {
    if (table[x].size() != n)
      throw Error(ErrorKind::NotAGroup, "row " + std::to_string(x) + " has wrong length");
    for (std::size_t v : table[x])
      if (v >= n) throw Error(ErrorKind::NotAGroup, "entry " + std::to_string(v) + " out of range");
  }
  std::vector<char> seen(n);
  for (std::size_t x = 0; x < n; ++x) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[table[x][y]]++)
        throw Error(ErrorKind::NotAGroup, "row " + std::to_string(x) + " is not a permutation (entry " +
                                              std::to_string(table[x][y]) + " repeated)");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t y = 0; y < n; ++y) {
      if (seen[table[y][x]]++)
        throw Error(ErrorKind::NotAGroup, "column " + std::to_string(x) +
                                              " is not a permutation (entry " +
                                              std::to_string(table[y][x]) + " repeated)");
    }
  }
  std::size_t e = n;
  for (std::size_t x = 0; x < n && e == n; ++x) {
    bool ok = true;
    for (std::size_t y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
    if (ok) e = x;
  }
  if (e == n) throw Error(ErrorKind::NotAGroup, "no two-sided identity element");
  if (n <= limits.associativity_check_bound) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z)
          if (table[table[x][y]][z] != table[x][table[y][z]])
            throw Error(ErrorKind::NotAGroup, "associativity fails at " + triple(x, y, z));
  }
  // Relabel by swapping the identity into slot 0.
  std::vector<std::size_t> relabel(n);
  std::iota(relabel.begin(), relabel.end(), std::size_t{0});
  std::swap(relabel[0], relabel[e]);  // relabel is an involution
  std::vector<Element> mult(n * n);
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    names[x] = "g" + std::to_string(relabel[x]);
    for (std::size_t y = 0; y < n; ++y)
      mult[x * n + y] = static_cast<Element>(relabel[table[relabel[x]][relabel[y]]]);
  }
  return make_group_table(n, std::move(mult), std::move(names));
}

GroupTable build_from_generators(const std::vector<Permutation>& generators, const GroupLimits& limits) {
  std::size_t d = 0;
  for (const auto& p : generators) d = std::max(d, p.degree());
  std::vector<Permutation> gens;
  for (const auto& p : generators) {
    Permutation q = p;
    for (std::size_t i = q.degree(); i < d; ++i) q.image.push_back(i);
    std::vector<bool> hit(d, false);
    for (std::size_t v : q.image) {
      if (v >= d || hit[v]) throw Error(ErrorKind::InvalidInput, "generator is not a bijection");
      hit[v] = true;
    }
    gens.push_back(std::move(q));
  }
  Permutation id;
  id.image.resize(d);
  std::iota(id.image.begin(), id.image.end(), std::size_t{0});

  std::vector<Permutation> elems{id};
  std::vector<std::size_t> parent{0}, via{0};
  std::unordered_map<Permutation, std::size_t, PermutationHash> index{{id, 0}};
  std::vector<std::vector<std::size_t>> right(1, std::vector<std::size_t>(gens.size()));
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Permutation next = elems[head] * gens[k];
      auto [it, inserted] = index.try_emplace(next, elems.size());
      if (inserted) {
        if (elems.size() + 1 > limits.max_order)
          throw Error(ErrorKind::OrderExceedsLimit,
                      "closure exceeds " + std::to_string(limits.max_order) + " elements");
        elems.push_back(std::move(next));
        parent.push_back(head);
        via.push_back(k);
        right.emplace_back(gens.size());
      }
      right[head][k] = it->second;
    }
  }
  const std::size_t n = elems.size();
  check_order_limits(n, limits);
  // Element j = elems[parent[j]] * gens[via[j]], with parent[j] < j.
  std::vector<Element> mult(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    mult[i * n] = static_cast<Element>(i);
    for (std::size_t j = 1; j < n; ++j)
      mult[i * n + j] = static_cast<Element>(right[mult[i * n + parent[j]]][via[j]]);
  }
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) names[i] = elems[i].cycle_notation();
  return make_group_table(n, std::move(mult), std::move(names));
}

GroupFamily parse_group_family(std::string_view name) {
  if (name == "S") return GroupFamily::Symmetric;
  if (name == "Z" || name == "C") return GroupFamily::Cyclic;
  if (name == "D") return GroupFamily::Dihedral;
  if (name == "Q8" || name == "Q") return GroupFamily::Quaternion;
  throw Error(ErrorKind::UnsupportedName, "unknown group family '" + std::string(name) + "'");
}

namespace {

GroupTable cyclic_group(std::size_t n) {
  std::vector<Element> mult(n * n);
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    names[x] = x == 0 ? "e" : (x == 1 ? "a" : "a^" + std::to_string(x));
    for (std::size_t y = 0; y < n; ++y) mult[x * n + y] = static_cast<Element>((x + y) % n);
  }
  return make_group_table(n, std::move(mult), std::move(names));
}

// r^k s^f has index k + n f; (r^a s^x)(r^b s^y) = r^(a + (-1)^x b) s^(x + y).
GroupTable dihedral_group(std::size_t n) {
  const std::size_t order = 2 * n;
  std::vector<Element> mult(order * order);
  std::vector<std::string> names(order);
  for (std::size_t x = 0; x < order; ++x) {
    std::size_t a = x % n, fx = x / n;
    std::string rot = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
    names[x] = fx == 0 ? (a == 0 ? "e" : rot) : (rot.empty() ? "s" : rot + " s");
    for (std::size_t y = 0; y < order; ++y) {
      std::size_t b = y % n, fy = y / n;
      std::size_t k = fx == 0 ? (a + b) % n : (a + n - b) % n;
      mult[x * order + y] = static_cast<Element>(k + n * ((fx + fy) % 2));
    }
  }
  return make_group_table(order, std::move(mult), std::move(names));
}

// Index 2*u + s for unit u in {1,i,j,k} and sign bit s.
GroupTable quaternion_group() {
  // unit_product[u][v] = {sign bit, unit}
  static constexpr int unit_product[4][4][2] = {
      {{0, 0}, {0, 1}, {0, 2}, {0, 3}},
      {{0, 1}, {1, 0}, {0, 3}, {1, 2}},
      {{0, 2}, {1, 3}, {1, 0}, {0, 1}},
      {{0, 3}, {0, 2}, {1, 1}, {1, 0}},
  };
  std::vector<Element> mult(64);
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const auto& p = unit_product[x / 2][y / 2];
      int sign = (x % 2) ^ (y % 2) ^ p[0];
      mult[static_cast<std::size_t>(x * 8 + y)] = static_cast<Element>(2 * p[1] + sign);
    }
  return make_group_table(8, std::move(mult), {"e", "-e", "i", "-i", "j", "-j", "k", "-k"});
}

}  // namespace

GroupTable named_group(GroupFamily family, int param, const GroupLimits& limits) {
  if (family != GroupFamily::Quaternion && param < 1)
    throw Error(ErrorKind::InvalidInput, "group parameter must be >= 1");
  const auto n = static_cast<std::size_t>(param);
  switch (family) {
    case GroupFamily::Symmetric: {
      std::size_t order = 1;
      for (std::size_t k = 2; k <= n; ++k) {
        order *= k;
        if (order > limits.max_order)
          throw Error(ErrorKind::OrderExceedsLimit, "S" + std::to_string(n) + " exceeds order limit");
      }
      if (n == 1) return build_from_generators({}, limits);
      std::vector<Permutation> gens{parse_cycles("(0 1)", n)};
      if (n >= 3) {
        Permutation cyc;
        cyc.image.resize(n);
        for (std::size_t i = 0; i < n; ++i) cyc.image[i] = (i + 1) % n;
        gens.push_back(cyc);
      }
      return build_from_generators(gens, limits);
    }
    case GroupFamily::Cyclic:
      check_order_limits(n, limits);
      return cyclic_group(n);
    case GroupFamily::Dihedral:
      check_order_limits(2 * n, limits);
      return dihedral_group(n);
    case GroupFamily::Quaternion:
      return quaternion_group();
  }
  throw Error(ErrorKind::UnsupportedName, "unknown group family");
}

GroupTable named_group(std::string_view name, int param, const GroupLimits& limits) {
  return named_group(parse_group_family(name), param, limits);
}

GroupTable direct_product(const GroupTable& g, const GroupTable& h, const GroupLimits& limits) {
  const std::size_t ng = g.order(), nh = h.order(), n = ng * nh;
  check_order_limits(n, limits);
  std::vector<Element> mult(n * n);
  std::vector<std::string> names(n);
  for (std::size_t x = 0; x < n; ++x) {
    auto x1 = static_cast<Element>(x / nh), y1 = static_cast<Element>(x % nh);
    names[x] = "(" + g.name(x1) + "," + h.name(y1) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      auto x2 = static_cast<Element>(y / nh), y2 = static_cast<Element>(y % nh);
      mult[x * n + y] = static_cast<Element>(std::size_t{g.mul(x1, x2)} * nh + h.mul(y1, y2));
    }
  }
  return make_group_table(n, std::move(mult), std::move(names));
}

// ---------------------------------------------------------------------------
// Conjugacy

ConjugacyData conjugacy_data(const GroupTable& g) {
  const std::size_t n = g.order();
  constexpr auto unassigned = static_cast<ClassIndex>(-1);
  ConjugacyData cd;
  cd.group_order = n;
  cd.class_of.assign(n, unassigned);
  for (Element x = 0; x < n; ++x) {
    if (cd.class_of[x] != unassigned) continue;
    auto k = static_cast<ClassIndex>(cd.classes.size());
    std::vector<Element> orbit;
    for (Element s = 0; s < n; ++s) {
      Element y = g.conjugate(s, x);
      if (cd.class_of[y] == unassigned) {
        cd.class_of[y] = k;
        orbit.push_back(y);
      }
    }
    std::sort(orbit.begin(), orbit.end());
    cd.representative.push_back(x);
    cd.class_size.push_back(orbit.size());
    cd.classes.push_back(std::move(orbit));
  }
  cd.centralizer_order.assign(n, 0);
  for (std::size_t k = 0; k < cd.classes.size(); ++k) {
    Element rep = cd.representative[k];
    std::size_t count = 0;
    for (Element s = 0; s < n; ++s) count += g.mul(s, rep) == g.mul(rep, s);
    for (Element y : cd.classes[k]) cd.centralizer_order[y] = count;
  }
  for (std::size_t k = 0; k < cd.classes.size(); ++k)
    cd.inverse_class.push_back(cd.class_of[g.inv(cd.representative[k])]);
  return cd;
}

std::size_t joint_centralizer_order(const GroupTable& g, std::span<const Element> elems) {
  std::size_t count = 0;
  for (Element s = 0; s < g.order(); ++s) {
    bool ok = true;
    for (Element x : elems) {
      if (g.mul(s, x) != g.mul(x, s)) { ok = false; break; }
    }
    count += ok;
  }
  return count;
}

ClassIndex resolve_class_label(const GroupTable& g, const ConjugacyData& cd, std::string_view label) {
  bool digits = !label.empty() &&
                std::all_of(label.begin(), label.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  if (digits) {
    std::size_t k = std::stoul(std::string(label));
    if (k >= cd.num_classes())
      throw Error(ErrorKind::InvalidInput, "class index " + std::string(label) + " out of range");
    return static_cast<ClassIndex>(k);
  }
  const auto& names = g.element_names();
  auto it = std::find(names.begin(), names.end(), label);
  if (it == names.end()) throw Error(ErrorKind::InvalidInput, "no element named '" + std::string(label) + "'");
  return cd.class_of[static_cast<std::size_t>(it - names.begin())];
}

}  // namespace bgw
