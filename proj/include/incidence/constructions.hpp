#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "incidence/category.hpp"
#include "incidence/functor.hpp"
#include "incidence/report.hpp"

namespace incidence {

/// An object of a derived category: a host object plus the host morphism(s)
/// that split it.
///
/// upper:   base F_s, mark F_m -> F_s
/// lower:   base F_t, mark F_t -> F_m
/// section: base Z, mark first factor source(phi0) -> Z, second_mark Z ->
///          target(phi0)
struct MarkedObject {
  ObjectId base = kNoObject;
  MorphismId mark = kNoMorphism;
  MorphismId second_mark = kNoMorphism;
};

/// Offset added to inherited host ranks.
struct RankShift {
  int offset = 0;
};

/// A derived category together with its bookkeeping back into the host.
struct MarkedCategory {
  CategoryPtr category;
  CategoryPtr host;
  std::vector<MarkedObject> objects;
  /// Per morphism: the host morphism it was split from (phi_ts for upper and
  /// lower, the middle factor for sections).
  std::vector<MorphismId> underlying;
  RankShift shift;
  /// Projection back to the host (not defined for sections).
  std::optional<Functor> downward;

  /// Object whose mark is `mark` (upper/lower); nullopt when absent.
  std::optional<ObjectId> object_by_mark(MorphismId mark) const;
  /// Morphism with the given underlying host morphism out of object `source`.
  std::optional<MorphismId> morphism_from(ObjectId source,
                                          MorphismId underlying) const;

  std::unordered_map<MorphismId, ObjectId> mark_index;
  std::unordered_map<std::uint64_t, MorphismId> morphism_index;
};

/// Vertex figure: objects F_s|phi_sm for every phi_sm : F_m -> F_s, morphisms
/// phi_ts|phi_sm, composition inherited from the host. Ranks shift by
/// -(rank(F_m) + 1) when normalizing. `downward` maps F_s|phi_sm to F_s.
MarkedCategory upper_category(const CategoryPtr& c, ObjectId m,
                              bool normalize = true);

/// Face figure: objects F_t|phi_mt for every phi_mt : F_t -> F_m; ranks are
/// inherited unshifted.
MarkedCategory lower_category(const CategoryPtr& c, ObjectId m);

/// Factorizations phi* o phi = phi0 as objects, triples phi*|middle|phi as
/// morphisms, composed by merging middles. Ranks shift by
/// -(rank(source phi0) + 1) when normalizing.
MarkedCategory build_section(const CategoryPtr& c, MorphismId phi0,
                             bool normalize = true);
CategoryPtr section_category(const CategoryPtr& c, MorphismId phi0,
                             bool normalize = true);

/// For phi_mn : F_n -> F_m, the functor upper(F_m) -> upper(F_n) sending
/// F_s|phi_sm to F_s|phi_sm o phi_mn.
Functor reduced_downward_functor(const MarkedCategory& upper_m,
                                 const MarkedCategory& upper_n,
                                 MorphismId phi_mn);
Functor reduced_downward_functor(const CategoryPtr& c, MorphismId phi_mn);

/// Upper category of object `marked` of upper(c, m).
MarkedCategory iterated_upper(const CategoryPtr& c, ObjectId m,
                              ObjectId marked);

/// Every factorization of an image morphism lifts to exactly one
/// factorization of the original. Throws PreconditionError on an invalid
/// functor.
ValidationReport check_local_embedding(const Functor& mu);

/// Upper categories of all objects with the reduced downward functors between
/// them, assembled into a category, plus its isomorphism onto opposite(c).
struct UpperCategoryFamily {
  CategoryPtr category;
  std::vector<MarkedCategory> uppers;
  /// functors[m] is the reduced downward functor of host morphism m.
  std::vector<Functor> functors;
  CategoryPtr opposite;
  Functor to_opposite;
};

UpperCategoryFamily category_of_upper_categories(const CategoryPtr& c);

}  // namespace incidence
