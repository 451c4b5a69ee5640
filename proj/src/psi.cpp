#include "bgw/psi.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "bgw/error.hpp"

namespace bgw {

Rational double_factorial(int k) {
  if (k < -1 || (k % 2 == 0)) throw Error(ErrorKind::InvalidInput, "double factorial needs odd k >= -1");
  long acc = 1;
  Rational out(1);
  for (int j = k; j > 1; j -= 2) {
    acc *= j;
    if (acc > (1L << 40)) {
      out *= Rational(acc);
      acc = 1;
    }
  }
  return out * Rational(acc);
}

bool is_stable(int genus, std::size_t n) { return 2 * genus - 2 + static_cast<int>(n) > 0; }

namespace {

using Key = std::pair<int, std::vector<int>>;

class PsiCache {
 public:
  Rational get(int g, std::vector<int> levels) {
    std::sort(levels.begin(), levels.end());
    const auto n = static_cast<int>(levels.size());
    if (g < 0 || 2 * g - 2 + n <= 0) return Rational(0);
    if (std::accumulate(levels.begin(), levels.end(), 0) != 3 * g - 3 + n) return Rational(0);
    Key key{g, levels};
    {
      std::lock_guard lock(mutex_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    Rational value = compute(g, levels);
    std::lock_guard lock(mutex_);
    memo_.emplace(std::move(key), value);
    return value;
  }

 private:
  // levels sorted ascending, stable, dimension constraint satisfied.
  Rational compute(int g, const std::vector<int>& levels) {
    const std::size_t n = levels.size();
    if (g == 0 && n == 3) return Rational(1);  // all levels are 0 here
    if (levels.front() == 0) {
      // String equation: <tau_0 tau_S> = sum_j <tau_{a_j - 1} tau_{S\j}>.
      std::vector<int> rest(levels.begin() + 1, levels.end());
      Rational sum;
      for (std::size_t j = 0; j < rest.size(); ++j) {
        if (rest[j] == 0) continue;
        std::vector<int> s = rest;
        --s[j];
        sum += get(g, s);
      }
      return sum;
    }
    if (levels.front() == 1 && !(g == 1 && n == 1)) {
      // Dilaton equation: <tau_1 tau_S>_g = (2g - 2 + |S|) <tau_S>_g.
      std::vector<int> rest(levels.begin() + 1, levels.end());
      return Rational(2 * g - 2 + static_cast<long>(rest.size())) * get(g, rest);
    }
    return dvv(g, levels);
  }

  // Coefficient identity from L_k Z = 0 with tau_{k+1} the largest insertion:
  // (2k+3)!! <tau_{k+1} tau_S>_g = sum_j (2a_j+2k+1)!!/(2a_j-1)!! <tau_{a_j+k} tau_{S\j}>_g
  //   + 1/2 sum_{i+l=k-1} (2i+1)!! (2l+1)!! [<tau_i tau_l tau_S>_{g-1}
  //                                          + sum <tau_i tau_I>_{g1} <tau_l tau_J>_{g2}]
  //   + delta_{k,0} delta_{g,1} delta_{S,{}} / 8.
  Rational dvv(int g, const std::vector<int>& levels) {
    const int k = levels.back() - 1;
    std::vector<int> rest(levels.begin(), levels.end() - 1);
    Rational rhs;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      std::vector<int> s = rest;
      const int a = s[j];
      s[j] = a + k;
      rhs += double_factorial(2 * a + 2 * k + 1) / double_factorial(2 * a - 1) * get(g, s);
    }
    const std::size_t m = rest.size();
    for (int i = 0; i <= k - 1; ++i) {
      const int l = k - 1 - i;
      Rational weight = double_factorial(2 * i + 1) * double_factorial(2 * l + 1) / Rational(2);
      Rational inner;
      if (g >= 1) {
        std::vector<int> s = rest;
        s.push_back(i);
        s.push_back(l);
        inner += get(g - 1, s);
      }
      for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
        std::vector<int> left{i}, right{l};
        for (std::size_t j = 0; j < m; ++j) (mask >> j & 1 ? left : right).push_back(rest[j]);
        for (int g1 = 0; g1 <= g; ++g1) {
          Rational a = get(g1, left);
          if (a.is_zero()) continue;
          inner += a * get(g - g1, right);
        }
      }
      rhs += weight * inner;
    }
    if (k == 0 && g == 1 && rest.empty()) rhs += Rational(1, 8);
    return rhs / double_factorial(2 * k + 3);
  }

  std::mutex mutex_;
  std::map<Key, Rational> memo_;
};

PsiCache& cache() {
  static PsiCache c;
  return c;
}

}  // namespace

Rational psi_intersection(int genus, const std::vector<int>& levels) {
  if (genus < 0) throw Error(ErrorKind::InvalidInput, "negative genus");
  for (int a : levels)
    if (a < 0) throw Error(ErrorKind::InvalidInput, "negative descendant level");
  if (!is_stable(genus, levels.size()))
    throw Error(ErrorKind::UnstableKey, "(g, n) = (" + std::to_string(genus) + ", " +
                                            std::to_string(levels.size()) + ") is unstable");
  return cache().get(genus, levels);
}

}  // namespace bgw
