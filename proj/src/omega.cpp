#include "bgw/omega.hpp"

#include <algorithm>
#include <chrono>
#include <thread>

#include "bgw/error.hpp"

namespace bgw {

OmegaKey OmegaKey::sorted() const {
  OmegaKey k = *this;
  std::sort(k.classes.begin(), k.classes.end());
  return k;
}

void OmegaEngine::validate(const OmegaKey& key) const {
  if (key.genus < 0) throw Error(ErrorKind::InvalidInput, "negative genus");
  for (ClassIndex c : key.classes)
    if (c >= algebra_->rank()) throw Error(ErrorKind::InvalidInput, "class index " + std::to_string(c) + " out of range");
}

namespace {

// Enumerates (alpha_2, beta_2, ..., alpha_g, beta_g) after a fixed prefix
// product, adding prefix * prod [alpha_i, beta_i] into hist.
void enumerate_tail(const GroupTable& g, const std::vector<Element>& comm, Element prefix, int pairs_left,
                    std::vector<std::uint64_t>& hist, std::uint64_t& evaluated) {
  const std::size_t n = g.order();
  if (pairs_left == 0) {
    ++hist[prefix];
    return;
  }
  for (std::size_t p = 0; p < n * n; ++p) {
    ++evaluated;
    enumerate_tail(g, comm, g.mul(prefix, comm[p]), pairs_left - 1, hist, evaluated);
  }
}

bool product_exceeds(std::uint64_t a, std::uint64_t b, std::uint64_t cap) {
  return b != 0 && a > cap / b;
}

}  // namespace

std::shared_ptr<const std::vector<std::uint64_t>> OmegaEngine::commutator_histogram(int genus, unsigned jobs,
                                                                                    EnumerationStats* stats) const {
  {
    std::lock_guard lock(histogram_mutex_);
    auto it = histograms_.find(genus);
    if (it != histograms_.end()) return it->second;
  }
  const GroupTable& g = algebra_->group();
  const std::size_t n = g.order();
  auto hist = std::make_shared<std::vector<std::uint64_t>>(n, 0);
  std::uint64_t evaluated = 0;
  if (genus == 0) {
    (*hist)[GroupTable::identity] = 1;
  } else {
    std::vector<Element> comm(n * n);
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) comm[std::size_t{a} * n + b] = g.commutator(a, b);
    // The outer (alpha_1, beta_1) loop is split into contiguous chunks.
    const std::size_t outer = n * n;
    const std::size_t workers = std::clamp<std::size_t>(jobs, 1, outer);
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(n, 0));
    std::vector<std::uint64_t> counts(workers, 0);
    auto work = [&](std::size_t w) {
      const std::size_t lo = outer * w / workers, hi = outer * (w + 1) / workers;
      for (std::size_t p = lo; p < hi; ++p) {
        ++counts[w];
        enumerate_tail(g, comm, comm[p], genus - 1, partial[w], counts[w]);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (auto& t : threads) t.join();
    }
    for (std::size_t w = 0; w < workers; ++w) {
      evaluated += counts[w];
      for (std::size_t x = 0; x < n; ++x) (*hist)[x] += partial[w][x];
    }
  }
  if (stats) stats->products_evaluated += evaluated;
  std::lock_guard lock(histogram_mutex_);
  return histograms_.emplace(genus, hist).first->second;
}

Rational OmegaEngine::bruteforce(const OmegaKey& key, const OmegaOptions& options, EnumerationStats* stats) const {
  validate(key);
  const auto start = std::chrono::steady_clock::now();
  const GroupTable& g = algebra_->group();
  const auto& cd = algebra_->conjugacy();
  const std::uint64_t n = g.order();

  std::uint64_t space = 1;
  bool over = false;
  for (int i = 0; i < 2 * key.genus && !over; ++i) {
    over = product_exceeds(space, n, options.work_cap);
    space *= n;
  }
  for (ClassIndex c : key.classes) {
    if (over) break;
    over = product_exceeds(space, cd.class_size[c], options.work_cap);
    space *= cd.class_size[c];
  }
  if (over || space > options.work_cap)
    throw Error(ErrorKind::WorkCapExceeded, "tuple space for genus " + std::to_string(key.genus) + " with " +
                                                std::to_string(key.classes.size()) + " insertions exceeds " +
                                                std::to_string(options.work_cap));
  if (auto hit = brute_memo_.find(key)) return *hit;

  EnumerationStats local;
  auto lhs = commutator_histogram(key.genus, options.jobs, &local);

  // prod_j sigma_j over all sigma_j in C_{m_j}, odometer style.
  std::vector<std::uint64_t> rhs(n, 0);
  const std::size_t len = key.classes.size();
  if (len == 0) {
    rhs[GroupTable::identity] = 1;
  } else {
    std::vector<std::size_t> idx(len, 0);
    std::vector<Element> prefix(len + 1, GroupTable::identity);
    for (std::size_t j = 0; j < len; ++j) prefix[j + 1] = g.mul(prefix[j], cd.classes[key.classes[j]][0]);
    while (true) {
      ++rhs[prefix[len]];
      ++local.products_evaluated;
      std::size_t j = len;
      while (j > 0) {
        --j;
        if (++idx[j] < cd.class_size[key.classes[j]]) break;
        idx[j] = 0;
        if (j == 0) { j = len + 1; break; }
      }
      if (j == len + 1) break;
      for (std::size_t t = j; t < len; ++t)
        prefix[t + 1] = g.mul(prefix[t], cd.classes[key.classes[t]][idx[t]]);
    }
  }
  mpz_class count = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if ((*lhs)[x] == 0 || rhs[x] == 0) continue;
    mpz_class term = static_cast<unsigned long>((*lhs)[x]);
    term *= static_cast<unsigned long>(rhs[x]);
    count += term;
  }
  Rational value = Rational::from_integers(count, mpz_class(static_cast<unsigned long>(n)));
  brute_memo_.insert(key, value);
  if (stats) {
    stats->tuples_covered += space;
    stats->products_evaluated += local.products_evaluated;
    stats->seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return value;
}

std::uint64_t OmegaEngine::commutator_count(int genus, Element x, const OmegaOptions& options) const {
  if (genus < 0) throw Error(ErrorKind::InvalidInput, "negative genus");
  if (x >= algebra_->order()) throw Error(ErrorKind::InvalidInput, "element out of range");
  std::uint64_t space = 1;
  for (int i = 0; i < 2 * genus; ++i) {
    if (product_exceeds(space, algebra_->order(), options.work_cap))
      throw Error(ErrorKind::WorkCapExceeded, "commutator space exceeds the work cap");
    space *= algebra_->order();
  }
  return (*commutator_histogram(genus, options.jobs, nullptr))[x];
}

Rational OmegaEngine::recursive(const OmegaKey& key) const {
  validate(key);
  return recursive_sorted(key.sorted());
}

Rational OmegaEngine::recursive_sorted(const OmegaKey& key) const {
  if (auto hit = memo_->omega.find(key)) return *hit;
  const ClassAlgebra& alg = *algebra_;
  const auto& cd = alg.conjugacy();
  const auto order = static_cast<long>(alg.order());
  Rational value;
  if (key.genus > 0) {
    // Cutting loops: Omega_g(gamma) = sum_k |C(zeta_k)| Omega_{g-1}(gamma, zeta_k, zeta_k^{-1}).
    for (std::size_t k = 0; k < alg.rank(); ++k) {
      OmegaKey next{key.genus - 1, key.classes};
      next.classes.push_back(static_cast<ClassIndex>(k));
      next.classes.push_back(cd.inverse_class[k]);
      value += Rational(static_cast<long>(cd.class_centralizer(static_cast<ClassIndex>(k)))) *
               recursive_sorted(next.sorted());
    }
  } else {
    const auto& c = key.classes;
    switch (c.size()) {
      case 0:
        value = Rational(1, order);
        break;
      case 1:
        value = c[0] == 0 ? Rational(1, order) : Rational(0);
        break;
      case 2:
        value = cd.inverse_class[c[0]] == c[1] ? Rational(static_cast<long>(cd.class_size[c[0]]), order) : Rational(0);
        break;
      default: {
        // Omega_0(gamma) = eta(e_1 * ... * e_{n-1}, e_n)
        ClassVector acc = ClassVector::basis(alg.rank(), c[0]);
        for (std::size_t j = 1; j + 1 < c.size(); ++j) acc = alg.product(acc, ClassVector::basis(alg.rank(), c[j]));
        value = alg.pairing(acc, ClassVector::basis(alg.rank(), c.back()));
      }
    }
  }
  memo_->omega.insert(key, value);
  return value;
}

Rational omega_bruteforce(const ClassAlgebra& algebra, const OmegaKey& key, const OmegaOptions& options) {
  return OmegaEngine(algebra).bruteforce(key, options);
}

Rational omega_recursive(const ClassAlgebra& algebra, const OmegaKey& key) {
  return OmegaEngine(algebra).recursive(key);
}

}  // namespace bgw
