#include "incidence/functor.hpp"

#include <numeric>

namespace incidence {

std::optional<std::string> functor_violation(const Functor& f) {
  if (!f.source || !f.target) return "missing source or target category";
  const auto& a = *f.source;
  const auto& b = *f.target;
  if (f.object_map.size() != a.object_count() ||
      f.morphism_map.size() != a.morphism_count()) {
    return "map sizes do not match the source category";
  }
  for (ObjectId y : f.object_map) {
    if (y < 0 || y >= static_cast<ObjectId>(b.object_count())) {
      return "object image out of range";
    }
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(a.morphism_count()); ++m) {
    const auto img = f.morphism_map[m];
    if (img < 0 || img >= static_cast<MorphismId>(b.morphism_count())) {
      return "image of " + a.name(m) + " out of range";
    }
    if (b.source(img) != f.object_map[a.source(m)] ||
        b.target(img) != f.object_map[a.target(m)]) {
      return "image of " + a.name(m) + " has wrong endpoints";
    }
  }
  for (ObjectId x = 0; x < static_cast<ObjectId>(a.object_count()); ++x) {
    if (f.morphism_map[a.identity(x)] != b.identity(f.object_map[x])) {
      return "identity of " + a.object_name(x) + " not preserved";
    }
  }
  for (MorphismId g = 0; g < static_cast<MorphismId>(a.morphism_count()); ++g) {
    for (MorphismId h : a.in(a.source(g))) {
      const auto gh = a.try_compose(g, h);
      if (!gh) continue;
      const auto img =
          b.try_compose(f.morphism_map[g], f.morphism_map[h]);
      if (img != f.morphism_map[*gh]) {
        return "composite " + a.name(g) + " o " + a.name(h) + " not preserved";
      }
    }
  }
  return std::nullopt;
}

bool is_functor(const Functor& f) { return !functor_violation(f).has_value(); }

void require_functor(const Functor& f) {
  if (auto why = functor_violation(f)) {
    throw PreconditionError("invalid functor: " + *why);
  }
}

Functor identity_functor(const CategoryPtr& c) {
  Functor f{c, c, std::vector<ObjectId>(c->object_count()),
            std::vector<MorphismId>(c->morphism_count())};
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.target != g.source) {
    throw PreconditionError("functors are not composable");
  }
  Functor out{f.source, g.target, {}, {}};
  out.object_map.reserve(f.object_map.size());
  for (ObjectId x : f.object_map) out.object_map.push_back(g.on_object(x));
  out.morphism_map.reserve(f.morphism_map.size());
  for (MorphismId m : f.morphism_map) out.morphism_map.push_back(g.on_morphism(m));
  return out;
}

}  // namespace incidence
