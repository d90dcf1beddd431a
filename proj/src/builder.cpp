#include "incidence/builder.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace incidence {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct Arrow {
  std::string name;
  ObjectId source;
  ObjectId target;
  OptSign sign;
};

using Path = std::vector<int>;  // arrow indices, first-applied first

bool shortlex_less(const Path& a, const Path& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

struct Resolved {
  std::vector<ObjectInfo> objects;
  std::vector<Arrow> arrows;
  ObjectId null_id = kNoObject;
  ObjectId universe_id = kNoObject;
};

Resolved resolve(const Presentation& p) {
  Resolved r;
  std::map<std::string, ObjectId, std::less<>> by_name;
  std::optional<ObjectDecl> null_decl;
  std::optional<ObjectDecl> universe_decl;
  std::vector<ObjectDecl> proper;
  std::set<std::string> seen;
  for (const auto& o : p.objects) {
    if (o.name.empty()) throw PresentationError("empty object name");
    if (!seen.insert(o.name).second) {
      throw PresentationError("duplicate object '" + o.name + "'");
    }
    if (o.name == kNullName) {
      null_decl = o;
    } else if (o.name == kUniverseName) {
      universe_decl = o;
    } else {
      proper.push_back(o);
    }
  }
  if (!p.auto_bound && (!null_decl || !universe_decl)) {
    throw PresentationError(
        "option no_auto_bound requires explicit 'null' and 'universe' objects");
  }
  int max_proper = -1;
  for (const auto& o : proper) max_proper = std::max(max_proper, o.rank);

  r.objects.push_back({std::string(kNullName), null_decl ? null_decl->rank : -1,
                       null_decl ? null_decl->sign : std::nullopt});
  for (const auto& o : proper) r.objects.push_back({o.name, o.rank, o.sign});
  r.objects.push_back({std::string(kUniverseName),
                       universe_decl ? universe_decl->rank : max_proper + 1,
                       universe_decl ? universe_decl->sign : std::nullopt});
  for (ObjectId x = 0; x < static_cast<ObjectId>(r.objects.size()); ++x) {
    by_name.emplace(r.objects[x].name, x);
  }
  r.null_id = 0;
  r.universe_id = static_cast<ObjectId>(r.objects.size()) - 1;

  auto lookup = [&](const std::string& name) {
    const auto it = by_name.find(name);
    if (it == by_name.end()) {
      throw UnknownNameError("arrow endpoint '" + name + "' is not an object");
    }
    return it->second;
  };

  std::set<std::string> arrow_names;
  for (const auto& a : p.arrows) {
    if (a.name.empty() || a.name.find('.') != std::string::npos) {
      throw PresentationError("invalid arrow name '" + a.name + "'");
    }
    if (!arrow_names.insert(a.name).second) {
      throw PresentationError("duplicate arrow '" + a.name + "'");
    }
    const auto s = lookup(a.source);
    const auto t = lookup(a.target);
    if (r.objects[s].rank >= r.objects[t].rank) {
      throw PresentationError("arrow '" + a.name + "' does not increase rank (" +
                              std::to_string(r.objects[s].rank) + " -> " +
                              std::to_string(r.objects[t].rank) + ")");
    }
    r.arrows.push_back({a.name, s, t, a.sign});
  }

  if (p.auto_bound) {
    const auto n = r.objects.size();
    std::vector<bool> has_in(n, false), has_out(n, false);
    for (const auto& a : r.arrows) {
      has_out[a.source] = true;
      has_in[a.target] = true;
    }
    auto add = [&](std::string name, ObjectId s, ObjectId t, OptSign sign) {
      if (!arrow_names.insert(name).second) {
        throw PresentationError("arrow name '" + name +
                                "' collides with a generated bounding arrow");
      }
      r.arrows.push_back({std::move(name), s, t, sign});
    };
    const bool any_proper = n > 2;
    for (ObjectId x = 1; x + 1 < static_cast<ObjectId>(n); ++x) {
      if (!has_in[x]) {
        add("i_" + r.objects[x].name, r.null_id, x, r.objects[x].sign);
      }
    }
    for (ObjectId x = 1; x + 1 < static_cast<ObjectId>(n); ++x) {
      if (!has_out[x]) add("t_" + r.objects[x].name, x, r.universe_id, {});
    }
    if (!any_proper && !has_out[r.null_id]) {
      add("i_" + std::string(kUniverseName), r.null_id, r.universe_id, {});
    }
  }
  return r;
}

}  // namespace

CategoryPtr build_category(const Presentation& p, BuildLimits limits) {
  const Resolved r = resolve(p);
  const auto n_obj = static_cast<ObjectId>(r.objects.size());
  const auto n_arrows = static_cast<int>(r.arrows.size());

  std::vector<std::vector<int>> arrows_out(n_obj);
  for (int a = 0; a < n_arrows; ++a) arrows_out[r.arrows[a].source].push_back(a);

  // Enumerate every non-empty path; ranks strictly increase so this ends.
  std::vector<Path> paths;
  std::vector<ObjectId> path_src, path_dst;
  std::map<Path, std::size_t> path_index;
  for (ObjectId x = 0; x < n_obj; ++x) {
    std::vector<Path> stack;
    for (int a : arrows_out[x]) stack.push_back({a});
    while (!stack.empty()) {
      Path cur = std::move(stack.back());
      stack.pop_back();
      const auto end = r.arrows[cur.back()].target;
      for (int a : arrows_out[end]) {
        Path next = cur;
        next.push_back(a);
        stack.push_back(std::move(next));
      }
      path_index.emplace(cur, paths.size());
      path_src.push_back(x);
      path_dst.push_back(end);
      paths.push_back(std::move(cur));
      if (paths.size() > limits.max_paths) {
        throw PresentationError("presentation has more than " +
                                std::to_string(limits.max_paths) + " paths");
      }
    }
  }
  const std::size_t n_paths = paths.size();

  std::map<std::string, int, std::less<>> arrow_by_name;
  for (int a = 0; a < n_arrows; ++a) arrow_by_name.emplace(r.arrows[a].name, a);

  auto resolve_path = [&](const PathDecl& decl) {
    Path out;
    for (const auto& step : decl) {
      const auto it = arrow_by_name.find(step);
      if (it == arrow_by_name.end()) {
        throw UnknownNameError("relation uses unknown arrow '" + step + "'");
      }
      if (!out.empty() && r.arrows[out.back()].target != r.arrows[it->second].source) {
        throw PresentationError("relation path '" + join_path(decl) +
                                "' is not composable at '" + step + "'");
      }
      out.push_back(it->second);
    }
    return out;
  };

  UnionFind uf(n_paths);
  for (const auto& rel : p.relations) {
    const auto left = resolve_path(rel.left);
    const auto right = resolve_path(rel.right);
    const auto li = path_index.at(left);
    const auto ri = path_index.at(right);
    if (path_src[li] != path_src[ri] || path_dst[li] != path_dst[ri]) {
      throw PresentationError("relation '" + join_path(rel.left) + " = " +
                              join_path(rel.right) +
                              "' equates paths with different endpoints");
    }
    uf.unite(li, ri);
  }

  auto unite_parallel = [&](auto&& selects) {
    std::map<std::pair<ObjectId, ObjectId>, std::size_t> first;
    for (std::size_t i = 0; i < n_paths; ++i) {
      if (!selects(i)) continue;
      const auto key = std::make_pair(path_src[i], path_dst[i]);
      const auto [it, inserted] = first.emplace(key, i);
      if (!inserted) uf.unite(it->second, i);
    }
  };
  if (p.posetal) unite_parallel([](std::size_t) { return true; });
  if (p.auto_bound) {
    unite_parallel([&](std::size_t i) { return path_src[i] == r.null_id; });
    unite_parallel([&](std::size_t i) { return path_dst[i] == r.universe_id; });
  }

  // Whiskering closure: u ~ v implies u.a ~ v.a and a.u ~ a.v.
  std::vector<std::vector<std::pair<int, std::size_t>>> right_ext(n_paths);
  std::vector<std::vector<std::pair<int, std::size_t>>> left_ext(n_paths);
  for (std::size_t i = 0; i < n_paths; ++i) {
    const auto& path = paths[i];
    if (path.size() < 2) continue;
    Path prefix(path.begin(), path.end() - 1);
    Path suffix(path.begin() + 1, path.end());
    right_ext[path_index.at(prefix)].emplace_back(path.back(), i);
    left_ext[path_index.at(suffix)].emplace_back(path.front(), i);
  }
  for (bool changed = true; changed;) {
    changed = false;
    std::unordered_map<std::uint64_t, std::size_t> seen;
    seen.reserve(n_paths * 2);
    for (std::size_t i = 0; i < n_paths; ++i) {
      const auto cls = uf.find(i);
      for (int dir = 0; dir < 2; ++dir) {
        for (const auto& [a, ext] : dir == 0 ? right_ext[i] : left_ext[i]) {
          const std::uint64_t key =
              (static_cast<std::uint64_t>(cls) << 21 |
               static_cast<std::uint64_t>(a)) << 1 | dir;
          const auto [it, inserted] = seen.emplace(key, ext);
          if (!inserted && uf.unite(it->second, ext)) changed = true;
        }
      }
    }
  }

  // Classes become morphisms, represented by their shortlex-least path.
  std::map<std::size_t, std::size_t> class_rep;
  for (std::size_t i = 0; i < n_paths; ++i) {
    const auto cls = uf.find(i);
    const auto [it, inserted] = class_rep.emplace(cls, i);
    if (!inserted && shortlex_less(paths[i], paths[it->second])) it->second = i;
  }

  struct Entry {
    ObjectId source;
    ObjectId target;
    Path rep;
    std::size_t cls;  // n_paths for identities
  };
  std::vector<Entry> entries;
  for (ObjectId x = 0; x < n_obj; ++x) entries.push_back({x, x, {}, n_paths});
  for (const auto& [cls, rep] : class_rep) {
    entries.push_back({path_src[rep], path_dst[rep], paths[rep], cls});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return shortlex_less(a.rep, b.rep);
  });

  RawCategory raw;
  raw.objects = r.objects;
  raw.identities.assign(n_obj, kNoMorphism);
  raw.initial = r.null_id;
  raw.terminal = r.universe_id;
  std::unordered_map<std::size_t, MorphismId> class_to_morphism;
  for (const auto& e : entries) {
    const auto id = static_cast<MorphismId>(raw.morphisms.size());
    MorphismInfo info;
    info.source = e.source;
    info.target = e.target;
    if (e.cls == n_paths) {
      info.name = "id_" + r.objects[e.source].name;
      raw.identities[e.source] = id;
    } else {
      for (int a : e.rep) info.path.push_back(r.arrows[a].name);
      info.name = join_path(info.path);
      class_to_morphism.emplace(e.cls, id);
    }
    raw.morphisms.push_back(std::move(info));
  }

  // Signs come from the single-arrow paths of each class.
  for (int a = 0; a < n_arrows; ++a) {
    if (!r.arrows[a].sign) continue;
    const auto m = class_to_morphism.at(uf.find(path_index.at(Path{a})));
    auto& slot = raw.morphisms[m].sign;
    if (slot && *slot != *r.arrows[a].sign) {
      throw PresentationError("conflicting signs on equated arrows in '" +
                              raw.morphisms[m].name + "' (arrow '" +
                              r.arrows[a].name + "')");
    }
    slot = r.arrows[a].sign;
  }
  // A declared point sign fixes the sign of its initial morphism(s).
  for (ObjectId x = 0; x < n_obj; ++x) {
    const auto& declared = r.objects[x].sign;
    if (!declared || x == r.null_id) continue;
    for (auto& m : raw.morphisms) {
      if (m.source != r.null_id || m.target != x) continue;
      if (m.sign && *m.sign != *declared) {
        throw PresentationError("initial morphism of '" + r.objects[x].name +
                                "' conflicts with the declared point sign");
      }
      m.sign = declared;
    }
  }

  const auto n_mor = static_cast<MorphismId>(raw.morphisms.size());
  std::vector<std::vector<MorphismId>> by_target(n_obj);
  for (MorphismId f = 0; f < n_mor; ++f) {
    if (!raw.morphisms[f].path.empty()) {
      by_target[raw.morphisms[f].target].push_back(f);
    }
  }
  for (MorphismId g = 0; g < n_mor; ++g) {
    const auto& gi = raw.morphisms[g];
    if (gi.path.empty()) continue;
    for (MorphismId f : by_target[gi.source]) {
      const auto& fi = raw.morphisms[f];
      Path joined;
      for (const auto& name : fi.path) joined.push_back(arrow_by_name.at(name));
      for (const auto& name : gi.path) joined.push_back(arrow_by_name.at(name));
      const auto h = class_to_morphism.at(uf.find(path_index.at(joined)));
      raw.compositions.emplace_back(g, f, h);
    }
  }
  return share(Category::from_raw(std::move(raw)));
}

}  // namespace incidence
