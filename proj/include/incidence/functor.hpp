#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incidence/category.hpp"

namespace incidence {

struct Functor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<ObjectId> object_map;
  std::vector<MorphismId> morphism_map;

  ObjectId on_object(ObjectId x) const { return object_map.at(x); }
  MorphismId on_morphism(MorphismId m) const { return morphism_map.at(m); }

  bool operator==(const Functor& other) const {
    return source == other.source && target == other.target &&
           object_map == other.object_map && morphism_map == other.morphism_map;
  }
};

/// First functoriality violation found, or nullopt when the maps preserve
/// sources, targets, identities and every defined composite.
std::optional<std::string> functor_violation(const Functor& f);
bool is_functor(const Functor& f);
/// Throws PreconditionError("invalid functor: ...") on a violation.
void require_functor(const Functor& f);

Functor identity_functor(const CategoryPtr& c);

/// g o f; requires f.target and g.source to be the same category object.
Functor compose(const Functor& g, const Functor& f);

}  // namespace incidence
