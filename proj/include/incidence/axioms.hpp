#pragma once

#include <vector>

#include "incidence/category.hpp"
#include "incidence/report.hpp"

namespace incidence {

enum class DiamondScope {
  all,
  /// Morphisms out of the null face or into the universe only need the
  /// semi-diamond bound.
  proper_only,
};

enum class SignCheck { off, on };

/// "name (source -> target)".
std::string describe_morphism(const Category& c, MorphismId m);

/// Irreflexivity, asymmetry, closure under composition, associativity and
/// unique initial/terminal morphisms.
ValidationReport validate_bounded_acyclic(const Category& c);

ValidationReport check_graded(const Category& c);

/// True when every point (object one rank above the null face) has a signed
/// initial morphism and at least one morphism carries a sign.
bool signs_available(const Category& c);
/// Throws SignError naming the first point whose initial morphism is unsigned.
void require_signed_points(const Category& c);

/// Every 2-rank morphism has at most two factorizations into non-identities.
/// With signs on, a morphism with exactly two fully signed factorizations must
/// have opposite chain-sign products; unsigned factorizations become notes.
ValidationReport check_semi_diamond(const Category& c, SignCheck signs);

/// As check_semi_diamond but demanding exactly two factorizations for the
/// 2-rank morphisms in scope.
ValidationReport check_diamond(const Category& c,
                               DiamondScope scope = DiamondScope::proper_only,
                               SignCheck signs = SignCheck::on);

/// Every non-identity morphism not ending at the universe is a composite of
/// 1-rank morphisms.
ValidationReport check_strongly_decomposable(const Category& c);

/// Connected components of the Hasse multigraph on proper objects. Each part
/// is sorted by id; parts are ordered by their smallest id.
std::vector<std::vector<ObjectId>> linked_clusters(const Category& c);

struct Splittability {
  bool splittable = false;
  std::vector<std::vector<ObjectId>> clusters;
};

Splittability is_splittable(const Category& c);

/// One bounded category per linked cluster (full subcategory on the cluster
/// and both bounds). An unsplittable input comes back as a single category.
std::vector<CategoryPtr> split(const Category& c);

/// Sections of every morphism of rank difference > 2 are unsplittable.
ValidationReport check_strongly_unsplittable(const Category& c);

/// Sections of initial morphisms of rank difference > 2 are unsplittable, and
/// each linked part of the section of every non-initial morphism is itself
/// strongly initial unsplittable (recursively, memoized up to isomorphism).
ValidationReport check_strongly_initial_unsplittable(const Category& c);

/// Diamond (proper-only, signs when available), strong decomposability and
/// strong initial unsplittability.
ValidationReport check_cw(const Category& c);

}  // namespace incidence
