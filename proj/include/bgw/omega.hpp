#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "bgw/class_algebra.hpp"
#include "bgw/rational.hpp"

namespace bgw {

/// Arguments of Omega_g: a genus and a list of class indices. The list keeps
/// the caller's order; memo tables use the sorted form.
struct OmegaKey {
  int genus = 0;
  std::vector<ClassIndex> classes;

  OmegaKey sorted() const;
  bool operator==(const OmegaKey&) const = default;
  auto operator<=>(const OmegaKey&) const = default;
};

/// Map with concurrent readers and exclusive inserts.
template <class K, class V>
class ConcurrentMemo {
 public:
  std::optional<V> find(const K& key) const {
    std::shared_lock lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const K& key, const V& value) {
    std::unique_lock lock(mutex_);
    map_.emplace(key, value);
  }
  std::size_t size() const {
    std::shared_lock lock(mutex_);
    return map_.size();
  }

 private:
  mutable std::shared_mutex mutex_;
  std::map<K, V> map_;
};

/// Omega values keyed on sorted class lists. Psi values have their own
/// process-wide cache in psi.cpp.
struct MemoStore {
  ConcurrentMemo<OmegaKey, Rational> omega;
};

struct OmegaOptions {
  /// Bound on |G|^{2g} * prod |C_{m_j}|, the size of the tuple space.
  std::uint64_t work_cap = 1'000'000'000;
  unsigned jobs = 1;
};

struct EnumerationStats {
  /// Size of the tuple space covered (|G|^{2g} * prod class sizes).
  std::uint64_t tuples_covered = 0;
  /// Group products actually evaluated.
  std::uint64_t products_evaluated = 0;
  double seconds = 0.0;
};

/// Omega^G_g(gamma) = |X^G_g(gamma)| / |G| by two independent routes.
///
/// bruteforce() enumerates every (alpha, beta) in G^{2g}, bucketing the
/// product of commutators, and every sigma-tuple in the prescribed classes,
/// bucketing prod sigma_j; |X| is the join of the two histograms. The
/// commutator histogram for each genus is computed once and cached.
///
/// recursive() cuts loops down to genus 0 and evaluates genus-0 values in the
/// Frobenius algebra.
class OmegaEngine {
 public:
  explicit OmegaEngine(const ClassAlgebra& algebra) : algebra_(&algebra) {}

  const ClassAlgebra& algebra() const { return *algebra_; }

  Rational bruteforce(const OmegaKey& key, const OmegaOptions& options = {},
                      EnumerationStats* stats = nullptr) const;
  Rational recursive(const OmegaKey& key) const;

  /// #{(alpha, beta) in G^{2g} : prod [alpha_i, beta_i] = x}.
  std::uint64_t commutator_count(int genus, Element x, const OmegaOptions& options = {}) const;

  MemoStore& memo() const { return *memo_; }

 private:
  void validate(const OmegaKey& key) const;
  std::shared_ptr<const std::vector<std::uint64_t>> commutator_histogram(int genus, unsigned jobs,
                                                                        EnumerationStats* stats) const;
  Rational recursive_sorted(const OmegaKey& key) const;

  const ClassAlgebra* algebra_;
  std::shared_ptr<MemoStore> memo_ = std::make_shared<MemoStore>();
  mutable std::mutex histogram_mutex_;
  mutable std::map<int, std::shared_ptr<const std::vector<std::uint64_t>>> histograms_;
  mutable ConcurrentMemo<OmegaKey, Rational> brute_memo_;
};

Rational omega_bruteforce(const ClassAlgebra& algebra, const OmegaKey& key, const OmegaOptions& options = {});
Rational omega_recursive(const ClassAlgebra& algebra, const OmegaKey& key);

}  // namespace bgw
