#pragma once

#include <cstddef>

#include "incidence/category.hpp"
#include "incidence/presentation.hpp"

namespace incidence {

struct BuildLimits {
  /// Upper bound on enumerated generator paths before giving up.
  std::size_t max_paths = 2'000'000;
};

/// Quotient of the free category on the presentation's arrows by the smallest
/// congruence containing the declared relations, plus all parallel paths when
/// posetal, plus the bounding relations when auto_bound.
///
/// With auto_bound, `null` (rank -1) and `universe` (max proper rank + 1) are
/// added unless declared, with arrows `i_<m>` from null to every object that
/// has no incoming arrow and `t_<m>` into universe from every object without
/// outgoing arrows.
///
/// Object ids follow declaration order with null first and universe last.
/// Morphism ids are sorted by (source, target, shortlex representative path).
CategoryPtr build_category(const Presentation& p, BuildLimits limits = {});

}  // namespace incidence
