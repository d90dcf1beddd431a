#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "incidence/types.hpp"

namespace incidence {

struct ObjectInfo {
  std::string name;
  int rank = 0;
  /// Declared orientation of a point; meaningful for rank-0 objects.
  OptSign sign;
};

struct MorphismInfo {
  ObjectId source = kNoObject;
  ObjectId target = kNoObject;
  std::string name;
  OptSign sign;
  /// Representative path of generator names, first-applied first. Empty for
  /// identities and for morphisms of derived categories.
  std::vector<std::string> path;
};

/// Unchecked table form of a category. Used to assemble derived categories and
/// to hand-build (possibly invalid) categories in tests.
struct RawCategory {
  std::vector<ObjectInfo> objects;
  std::vector<MorphismInfo> morphisms;
  /// identities[x] is the identity morphism of object x.
  std::vector<MorphismId> identities;
  /// (g, f, g o f) for composable non-identity pairs; identity laws are filled
  /// in automatically.
  std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> compositions;
  ObjectId initial = kNoObject;
  ObjectId terminal = kNoObject;
};

/// Immutable finite category with a rank on objects and a designated initial
/// (null face) and terminal (universe) object.
///
/// Composition may be partial when the category was hand-assembled from a
/// RawCategory; `validate_bounded_acyclic` reports such gaps.
class Category {
 public:
  /// Checks only structural consistency (ids in range, endpoints of identities
  /// and composites); the category axioms are left to the validators.
  static Category from_raw(RawCategory raw);
  RawCategory to_raw() const;

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }

  const ObjectInfo& object(ObjectId x) const { return objects_.at(x); }
  const MorphismInfo& morphism(MorphismId m) const { return morphisms_.at(m); }
  const std::vector<ObjectInfo>& objects() const { return objects_; }
  const std::vector<MorphismInfo>& morphisms() const { return morphisms_; }

  ObjectId initial() const { return initial_; }
  ObjectId terminal() const { return terminal_; }
  bool is_proper(ObjectId x) const { return x != initial_ && x != terminal_; }

  int rank(ObjectId x) const { return objects_.at(x).rank; }
  ObjectId source(MorphismId m) const { return morphisms_.at(m).source; }
  ObjectId target(MorphismId m) const { return morphisms_.at(m).target; }
  /// rank(target) - rank(source).
  int rank_difference(MorphismId m) const;
  OptSign sign(MorphismId m) const { return morphisms_.at(m).sign; }
  const std::string& name(MorphismId m) const { return morphisms_.at(m).name; }
  const std::string& object_name(ObjectId x) const {
    return objects_.at(x).name;
  }

  MorphismId identity(ObjectId x) const { return identities_.at(x); }
  bool is_identity(MorphismId m) const {
    return identities_.at(source(m)) == m;
  }

  /// Morphisms out of / into x, ascending by id (identity included).
  std::span<const MorphismId> out(ObjectId x) const { return out_.at(x); }
  std::span<const MorphismId> in(ObjectId x) const { return in_.at(x); }
  /// All morphisms x -> y, ascending by id.
  std::span<const MorphismId> hom(ObjectId x, ObjectId y) const;

  std::optional<MorphismId> try_compose(MorphismId g, MorphismId f) const;
  /// g o f; throws PreconditionError when source(g) != target(f) or the
  /// composite is missing from the table.
  MorphismId compose(MorphismId g, MorphismId f) const;
  /// Composite of a first-applied-first sequence of morphisms.
  MorphismId compose_path(std::span<const MorphismId> path) const;

  /// The unique morphism initial -> x (throws when not unique).
  MorphismId initial_morphism(ObjectId x) const;
  /// The unique morphism x -> terminal (throws when not unique).
  MorphismId terminal_morphism(ObjectId x) const;

  std::optional<ObjectId> find_object(std::string_view name) const;
  ObjectId object_id(std::string_view name) const;
  std::optional<MorphismId> find_morphism(std::string_view name) const;
  MorphismId morphism_id(std::string_view name) const;

  int max_rank() const;
  int min_rank() const;

 private:
  std::vector<ObjectInfo> objects_;
  std::vector<MorphismInfo> morphisms_;
  std::vector<MorphismId> identities_;
  ObjectId initial_ = kNoObject;
  ObjectId terminal_ = kNoObject;

  std::vector<std::vector<MorphismId>> out_;
  std::vector<std::vector<MorphismId>> in_;
  std::unordered_map<std::uint64_t, std::vector<MorphismId>> hom_;
  // composite of g with f is comp_[comp_offset_[g] + position_in_[f]], where
  // position_in_[f] indexes f within in_[target(f)].
  std::vector<MorphismId> comp_;
  std::vector<std::size_t> comp_offset_;
  std::vector<std::size_t> position_in_;
};

using CategoryPtr = std::shared_ptr<const Category>;

inline CategoryPtr share(Category c) {
  return std::make_shared<const Category>(std::move(c));
}

/// All pairs (f, g) with g o f == m, f applied first; identities included.
std::vector<std::pair<MorphismId, MorphismId>> factorizations(
    const Category& c, MorphismId m);

/// Pairs (f, g) with g o f == m where neither factor is an identity.
std::vector<std::pair<MorphismId, MorphismId>> proper_factorizations(
    const Category& c, MorphismId m);

/// Non-identity and not a composite of two non-identities.
bool is_nondecomposable(const Category& c, MorphismId m);

/// Product of the signs along a composable path (first-applied first).
/// Throws SignError on an unsigned morphism.
Sign chain_sign(const Category& c, std::span<const MorphismId> path);

/// Dual category. Ranks become rank(initial) + rank(terminal) - rank, so the
/// grading still increases along morphisms and the bounds swap roles.
CategoryPtr opposite(const Category& c);

/// Full subcategory on the given objects; `initial`/`terminal` must be among
/// them.
CategoryPtr full_subcategory(const Category& c, std::span<const ObjectId> keep,
                             ObjectId initial, ObjectId terminal);

/// x <= y iff some morphism x -> y exists.
class InducedPoset {
 public:
  explicit InducedPoset(const Category& c);
  std::size_t size() const { return n_; }
  bool leq(ObjectId x, ObjectId y) const { return leq_[x * n_ + y]; }
  bool less(ObjectId x, ObjectId y) const { return x != y && leq(x, y); }
  /// Covering pairs (x, y): x < y with nothing strictly between.
  std::vector<std::pair<ObjectId, ObjectId>> covers() const;

 private:
  std::size_t n_ = 0;
  std::vector<bool> leq_;
};

InducedPoset induced_poset(const Category& c);

/// Hasse multigraph: one edge per nondecomposable morphism.
struct HasseDiagram {
  std::size_t node_count = 0;
  std::vector<MorphismId> edges;
  std::size_t multiplicity(const Category& c, ObjectId x, ObjectId y) const;
};

HasseDiagram hasse(const Category& c);

}  // namespace incidence
