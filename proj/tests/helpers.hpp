#pragma once

#include <doctest.h>

#include <string>
#include <vector>

#include "bgw/class_algebra.hpp"
#include "bgw/group.hpp"
#include "bgw/report.hpp"

namespace bgw::test {

inline ClassAlgebra algebra(const std::string& name, int param = 0) { return ClassAlgebra(named_group(name, param)); }

inline Rational q(long p, long d = 1) { return Rational(p, d); }

/// Index of the class containing the element with this display name.
inline ClassIndex cls(const ClassAlgebra& a, const std::string& element_name) {
  return resolve_class_label(a.group(), a.conjugacy(), element_name);
}

inline void require_all_pass(const std::vector<ConstraintReport>& reps) {
  REQUIRE_FALSE(reps.empty());
  for (const auto& r : reps) {
    INFO(summary_line(r));
    CHECK(r.passed());
    CHECK(r.checked > 0);
  }
}

}  // namespace bgw::test
