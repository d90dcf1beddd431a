#include "incidence/category.hpp"

#include <algorithm>
#include <limits>

namespace incidence {

namespace {

std::uint64_t pair_key(ObjectId x, ObjectId y) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
         static_cast<std::uint32_t>(y);
}

const std::vector<MorphismId> kEmpty;

}  // namespace

Category Category::from_raw(RawCategory raw) {
  Category c;
  const auto n_obj = static_cast<ObjectId>(raw.objects.size());
  const auto n_mor = static_cast<MorphismId>(raw.morphisms.size());
  auto obj_ok = [&](ObjectId x) { return x >= 0 && x < n_obj; };
  auto mor_ok = [&](MorphismId m) { return m >= 0 && m < n_mor; };

  if (!obj_ok(raw.initial) || !obj_ok(raw.terminal)) {
    throw PreconditionError("initial/terminal object id out of range");
  }
  if (raw.identities.size() != raw.objects.size()) {
    throw PreconditionError("need exactly one identity per object");
  }
  for (const auto& m : raw.morphisms) {
    if (!obj_ok(m.source) || !obj_ok(m.target)) {
      throw PreconditionError("morphism '" + m.name + "' has bad endpoints");
    }
  }
  for (ObjectId x = 0; x < n_obj; ++x) {
    const auto id = raw.identities[x];
    if (!mor_ok(id) || raw.morphisms[id].source != x ||
        raw.morphisms[id].target != x) {
      throw PreconditionError("identity of '" + raw.objects[x].name +
                              "' is not an endomorphism of it");
    }
  }

  c.objects_ = std::move(raw.objects);
  c.morphisms_ = std::move(raw.morphisms);
  c.identities_ = std::move(raw.identities);
  c.initial_ = raw.initial;
  c.terminal_ = raw.terminal;

  c.out_.assign(n_obj, {});
  c.in_.assign(n_obj, {});
  for (MorphismId m = 0; m < n_mor; ++m) {
    const auto& info = c.morphisms_[m];
    c.out_[info.source].push_back(m);
    c.in_[info.target].push_back(m);
    c.hom_[pair_key(info.source, info.target)].push_back(m);
  }
  c.position_in_.assign(n_mor, 0);
  for (ObjectId x = 0; x < n_obj; ++x) {
    for (std::size_t i = 0; i < c.in_[x].size(); ++i) {
      c.position_in_[c.in_[x][i]] = i;
    }
  }
  c.comp_offset_.assign(n_mor, 0);
  std::size_t total = 0;
  for (MorphismId g = 0; g < n_mor; ++g) {
    c.comp_offset_[g] = total;
    total += c.in_[c.morphisms_[g].source].size();
  }
  c.comp_.assign(total, kNoMorphism);

  auto set = [&](MorphismId g, MorphismId f, MorphismId h) {
    if (!mor_ok(g) || !mor_ok(f) || !mor_ok(h)) {
      throw PreconditionError("composition entry references unknown morphism");
    }
    const auto& gi = c.morphisms_[g];
    const auto& fi = c.morphisms_[f];
    const auto& hi = c.morphisms_[h];
    if (gi.source != fi.target || hi.source != fi.source ||
        hi.target != gi.target) {
      throw PreconditionError("composite " + gi.name + " o " + fi.name +
                              " has wrong endpoints");
    }
    auto& slot = c.comp_[c.comp_offset_[g] + c.position_in_[f]];
    if (slot != kNoMorphism && slot != h) {
      throw PreconditionError("composite " + gi.name + " o " + fi.name +
                              " defined twice");
    }
    slot = h;
  };
  for (MorphismId m = 0; m < n_mor; ++m) {
    const auto& info = c.morphisms_[m];
    set(m, c.identities_[info.source], m);
    set(c.identities_[info.target], m, m);
  }
  for (const auto& [g, f, h] : raw.compositions) set(g, f, h);
  return c;
}

RawCategory Category::to_raw() const {
  RawCategory raw;
  raw.objects = objects_;
  raw.morphisms = morphisms_;
  raw.identities = identities_;
  raw.initial = initial_;
  raw.terminal = terminal_;
  for (MorphismId g = 0; g < static_cast<MorphismId>(morphisms_.size()); ++g) {
    if (is_identity(g)) continue;
    for (MorphismId f : in_[source(g)]) {
      if (is_identity(f)) continue;
      if (auto h = try_compose(g, f)) raw.compositions.emplace_back(g, f, *h);
    }
  }
  return raw;
}

int Category::rank_difference(MorphismId m) const {
  const auto& info = morphisms_.at(m);
  return objects_[info.target].rank - objects_[info.source].rank;
}

std::span<const MorphismId> Category::hom(ObjectId x, ObjectId y) const {
  const auto it = hom_.find(pair_key(x, y));
  if (it == hom_.end()) return kEmpty;
  return it->second;
}

std::optional<MorphismId> Category::try_compose(MorphismId g,
                                                MorphismId f) const {
  if (morphisms_.at(g).source != morphisms_.at(f).target) return std::nullopt;
  const auto h = comp_[comp_offset_[g] + position_in_[f]];
  if (h == kNoMorphism) return std::nullopt;
  return h;
}

MorphismId Category::compose(MorphismId g, MorphismId f) const {
  if (source(g) != target(f)) {
    throw PreconditionError("cannot compose " + name(g) + " after " + name(f) +
                            ": endpoints do not match");
  }
  if (auto h = try_compose(g, f)) return *h;
  throw PreconditionError("composite " + name(g) + " o " + name(f) +
                          " is missing");
}

MorphismId Category::compose_path(std::span<const MorphismId> path) const {
  if (path.empty()) throw PreconditionError("empty morphism path");
  MorphismId acc = path.front();
  for (std::size_t i = 1; i < path.size(); ++i) acc = compose(path[i], acc);
  return acc;
}

MorphismId Category::initial_morphism(ObjectId x) const {
  const auto h = hom(initial_, x);
  if (h.size() != 1) {
    throw PreconditionError("initial morphism of '" + object_name(x) +
                            "' is not unique");
  }
  return h.front();
}

MorphismId Category::terminal_morphism(ObjectId x) const {
  const auto h = hom(x, terminal_);
  if (h.size() != 1) {
    throw PreconditionError("terminal morphism of '" + object_name(x) +
                            "' is not unique");
  }
  return h.front();
}

std::optional<ObjectId> Category::find_object(std::string_view name) const {
  for (ObjectId x = 0; x < static_cast<ObjectId>(objects_.size()); ++x) {
    if (objects_[x].name == name) return x;
  }
  return std::nullopt;
}

ObjectId Category::object_id(std::string_view name) const {
  if (auto x = find_object(name)) return *x;
  throw UnknownNameError("unknown object '" + std::string(name) + "'");
}

std::optional<MorphismId> Category::find_morphism(std::string_view name) const {
  for (MorphismId m = 0; m < static_cast<MorphismId>(morphisms_.size()); ++m) {
    if (morphisms_[m].name == name) return m;
  }
  return std::nullopt;
}

MorphismId Category::morphism_id(std::string_view name) const {
  if (auto m = find_morphism(name)) return *m;
  throw UnknownNameError("unknown morphism '" + std::string(name) + "'");
}

int Category::max_rank() const {
  int r = std::numeric_limits<int>::min();
  for (const auto& o : objects_) r = std::max(r, o.rank);
  return r;
}

int Category::min_rank() const {
  int r = std::numeric_limits<int>::max();
  for (const auto& o : objects_) r = std::min(r, o.rank);
  return r;
}

std::vector<std::pair<MorphismId, MorphismId>> factorizations(
    const Category& c, MorphismId m) {
  std::vector<std::pair<MorphismId, MorphismId>> out;
  const auto src = c.source(m);
  const auto dst = c.target(m);
  for (MorphismId f : c.out(src)) {
    for (MorphismId g : c.hom(c.target(f), dst)) {
      if (c.try_compose(g, f) == m) out.emplace_back(f, g);
    }
  }
  return out;
}

std::vector<std::pair<MorphismId, MorphismId>> proper_factorizations(
    const Category& c, MorphismId m) {
  auto all = factorizations(c, m);
  std::erase_if(all, [&](const auto& p) {
    return c.is_identity(p.first) || c.is_identity(p.second);
  });
  return all;
}

bool is_nondecomposable(const Category& c, MorphismId m) {
  if (c.is_identity(m)) return false;
  const auto src = c.source(m);
  const auto dst = c.target(m);
  for (MorphismId f : c.out(src)) {
    if (c.is_identity(f) || c.target(f) == dst) continue;
    for (MorphismId g : c.hom(c.target(f), dst)) {
      if (c.try_compose(g, f) == m) return false;
    }
  }
  return true;
}

Sign chain_sign(const Category& c, std::span<const MorphismId> path) {
  if (path.empty()) throw PreconditionError("empty morphism path");
  Sign acc = Sign::plus();
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i > 0 && c.source(path[i]) != c.target(path[i - 1])) {
      throw PreconditionError("path is not composable at " + c.name(path[i]));
    }
    const auto s = c.sign(path[i]);
    if (!s) throw SignError("morphism '" + c.name(path[i]) + "' has no sign");
    acc = acc * *s;
  }
  return acc;
}

CategoryPtr opposite(const Category& c) {
  RawCategory raw = c.to_raw();
  const int pivot = c.rank(c.initial()) + c.rank(c.terminal());
  for (auto& o : raw.objects) o.rank = pivot - o.rank;
  for (auto& m : raw.morphisms) {
    std::swap(m.source, m.target);
    std::reverse(m.path.begin(), m.path.end());
  }
  for (auto& [g, f, h] : raw.compositions) std::swap(g, f);
  std::swap(raw.initial, raw.terminal);
  return share(Category::from_raw(std::move(raw)));
}

CategoryPtr full_subcategory(const Category& c, std::span<const ObjectId> keep,
                             ObjectId initial, ObjectId terminal) {
  std::vector<ObjectId> obj_map(c.object_count(), kNoObject);
  RawCategory raw;
  for (ObjectId x : keep) {
    if (obj_map[x] != kNoObject) continue;
    obj_map[x] = static_cast<ObjectId>(raw.objects.size());
    raw.objects.push_back(c.object(x));
  }
  if (obj_map.at(initial) == kNoObject || obj_map.at(terminal) == kNoObject) {
    throw PreconditionError("bounds must be kept by the subcategory");
  }
  std::vector<MorphismId> mor_map(c.morphism_count(), kNoMorphism);
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    if (obj_map[c.source(m)] == kNoObject || obj_map[c.target(m)] == kNoObject) {
      continue;
    }
    mor_map[m] = static_cast<MorphismId>(raw.morphisms.size());
    auto info = c.morphism(m);
    info.source = obj_map[info.source];
    info.target = obj_map[info.target];
    raw.morphisms.push_back(std::move(info));
  }
  raw.identities.resize(raw.objects.size());
  for (ObjectId x : keep) raw.identities[obj_map[x]] = mor_map[c.identity(x)];
  for (MorphismId g = 0; g < static_cast<MorphismId>(c.morphism_count()); ++g) {
    if (mor_map[g] == kNoMorphism || c.is_identity(g)) continue;
    for (MorphismId f : c.in(c.source(g))) {
      if (mor_map[f] == kNoMorphism || c.is_identity(f)) continue;
      if (auto h = c.try_compose(g, f)) {
        raw.compositions.emplace_back(mor_map[g], mor_map[f], mor_map[*h]);
      }
    }
  }
  raw.initial = obj_map[initial];
  raw.terminal = obj_map[terminal];
  return share(Category::from_raw(std::move(raw)));
}

InducedPoset::InducedPoset(const Category& c) : n_(c.object_count()) {
  leq_.assign(n_ * n_, false);
  for (const auto& m : c.morphisms()) leq_[m.source * n_ + m.target] = true;
}

std::vector<std::pair<ObjectId, ObjectId>> InducedPoset::covers() const {
  std::vector<std::pair<ObjectId, ObjectId>> out;
  for (std::size_t x = 0; x < n_; ++x) {
    for (std::size_t y = 0; y < n_; ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < n_ && cover; ++z) {
        if (less(x, z) && less(z, y)) cover = false;
      }
      if (cover) out.emplace_back(x, y);
    }
  }
  return out;
}

InducedPoset induced_poset(const Category& c) { return InducedPoset(c); }

std::size_t HasseDiagram::multiplicity(const Category& c, ObjectId x,
                                       ObjectId y) const {
  return static_cast<std::size_t>(std::count_if(
      edges.begin(), edges.end(),
      [&](MorphismId m) { return c.source(m) == x && c.target(m) == y; }));
}

HasseDiagram hasse(const Category& c) {
  HasseDiagram h;
  h.node_count = c.object_count();
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    if (is_nondecomposable(c, m)) h.edges.push_back(m);
  }
  return h;
}

}  // namespace incidence
