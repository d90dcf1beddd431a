#pragma once

#include <optional>

#include "incidence/functor.hpp"

namespace incidence {

struct Isomorphism {
  Functor forward;
  Functor backward;
};

/// Category isomorphism search. Names, ranks and signs are ignored; only the
/// composition structure and the designated bounds matter.
///
/// Backtracks over objects in longest-path order from the initial object,
/// pruned by colour refinement on hom-set sizes and Hasse multiplicities.
/// Images of nondecomposable morphisms are chosen per parallel group; all
/// other images follow by composition. Candidates are tried in ascending id
/// order, so the first isomorphism found (and returned) is the
/// lexicographically smallest in that search order.
std::optional<Isomorphism> is_isomorphic(const CategoryPtr& a,
                                         const CategoryPtr& b);

}  // namespace incidence
