#pragma once

// Brute-force reference computations used to confirm library results. They
// deliberately avoid the library's own algorithms (path quotienting,
// factorization lists, chain refinement, cluster search) and work from first
// principles on small inputs.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "incidence/category.hpp"
#include "incidence/presentation.hpp"

namespace oracle {

using incidence::Category;
using incidence::MorphismId;
using incidence::ObjectId;

/// Quotient of the free category on a presentation, computed by enumerating
/// every path and merging classes until the relation is a congruence.
struct Quotient {
  std::vector<std::string> objects;
  /// hom[(source, target)] = number of classes of non-empty paths.
  std::map<std::pair<std::string, std::string>, int> hom;
  int morphism_count = 0;  // identities included
};

inline Quotient quotient(const incidence::Presentation& p) {
  struct Arrow {
    int source;
    int target;
  };
  std::vector<std::string> names;
  std::map<std::string, int> id;
  auto add_object = [&](const std::string& n) {
    if (!id.count(n)) {
      id[n] = static_cast<int>(names.size());
      names.push_back(n);
    }
  };
  if (p.auto_bound) add_object("null");
  for (const auto& o : p.objects) add_object(o.name);
  if (p.auto_bound) add_object("universe");
  std::vector<Arrow> arrows;
  std::map<std::string, int> arrow_id;
  for (const auto& a : p.arrows) {
    arrow_id[a.name] = static_cast<int>(arrows.size());
    arrows.push_back({id.at(a.source), id.at(a.target)});
  }
  if (p.auto_bound) {
    const int null_id = id.at("null");
    const int universe_id = id.at("universe");
    std::vector<bool> has_in(names.size()), has_out(names.size());
    for (const auto& a : arrows) {
      has_out[a.source] = true;
      has_in[a.target] = true;
    }
    bool proper = false;
    for (int x = 0; x < static_cast<int>(names.size()); ++x) {
      if (x == null_id || x == universe_id) continue;
      proper = true;
      if (!has_in[x]) arrows.push_back({null_id, x});
      if (!has_out[x]) arrows.push_back({x, universe_id});
    }
    if (!proper) arrows.push_back({null_id, universe_id});
  }

  // every non-empty path, by breadth-first extension
  std::vector<std::vector<int>> paths;
  std::map<std::vector<int>, int> index;
  for (int a = 0; a < static_cast<int>(arrows.size()); ++a) {
    index[{a}] = static_cast<int>(paths.size());
    paths.push_back({a});
  }
  for (std::size_t k = 0; k < paths.size(); ++k) {
    for (int a = 0; a < static_cast<int>(arrows.size()); ++a) {
      if (arrows[a].source != arrows[paths[k].back()].target) continue;
      auto longer = paths[k];
      longer.push_back(a);
      index[longer] = static_cast<int>(paths.size());
      paths.push_back(std::move(longer));
    }
  }
  auto src = [&](int k) { return arrows[paths[k].front()].source; };
  auto dst = [&](int k) { return arrows[paths[k].back()].target; };

  std::vector<int> parent(paths.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[std::max(a, b)] = std::min(a, b);
    return true;
  };
  auto resolve = [&](const incidence::PathDecl& path) {
    std::vector<int> ids;
    for (const auto& n : path) ids.push_back(arrow_id.at(n));
    return index.at(ids);
  };
  for (const auto& r : p.relations) unite(resolve(r.left), resolve(r.right));
  const int n = static_cast<int>(paths.size());
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (src(a) != src(b) || dst(a) != dst(b)) continue;
      const bool bound = p.auto_bound && (names[src(a)] == "null" ||
                                          names[dst(a)] == "universe");
      if (p.posetal || bound) unite(a, b);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int k = 0; k < n; ++k) {
      const int rep = find(k);
      if (rep == k) continue;
      for (int a = 0; a < static_cast<int>(arrows.size()); ++a) {
        if (arrows[a].source == dst(k)) {
          auto x = paths[k];
          auto y = paths[rep];
          x.push_back(a);
          y.push_back(a);
          changed |= unite(index.at(x), index.at(y));
        }
        if (arrows[a].target == src(k)) {
          std::vector<int> x{a};
          std::vector<int> y{a};
          x.insert(x.end(), paths[k].begin(), paths[k].end());
          y.insert(y.end(), paths[rep].begin(), paths[rep].end());
          changed |= unite(index.at(x), index.at(y));
        }
      }
    }
  }
  Quotient q;
  q.objects = names;
  std::set<int> roots;
  for (int k = 0; k < n; ++k) {
    if (roots.insert(find(k)).second) ++q.hom[{names[src(k)], names[dst(k)]}];
  }
  q.morphism_count = static_cast<int>(roots.size() + names.size());
  return q;
}

/// Number of pairs (f, g) of non-identity morphisms with g o f == m, by a
/// scan over all morphism pairs.
inline int count_proper_factorizations(const Category& c, MorphismId m) {
  int count = 0;
  const auto total = static_cast<MorphismId>(c.morphism_count());
  for (MorphismId f = 0; f < total; ++f) {
    if (c.is_identity(f) || c.source(f) != c.source(m)) continue;
    for (MorphismId g = 0; g < total; ++g) {
      if (c.is_identity(g) || c.target(g) != c.target(m)) continue;
      if (c.source(g) != c.target(f)) continue;
      if (c.try_compose(g, f) == m) ++count;
    }
  }
  return count;
}

/// Non-degenerate chains of the initial -> terminal morphism by length:
/// result[n] = sequences of n + 1 composable non-identities from the initial
/// to the terminal object.
inline std::vector<int> chain_counts(const Category& c, int max_level) {
  std::vector<int> counts(max_level + 1, 0);
  std::function<void(ObjectId, int)> walk = [&](ObjectId at, int used) {
    if (at == c.terminal() && used > 0) ++counts[used - 1];
    if (used > max_level) return;
    for (MorphismId m : c.out(at)) {
      if (!c.is_identity(m)) walk(c.target(m), used + 1);
    }
  };
  walk(c.initial(), 0);
  return counts;
}

/// Proper objects grouped by connectivity through non-identity morphisms
/// between proper objects (breadth-first search).
inline int proper_components(const Category& c) {
  std::vector<int> seen(c.object_count(), 0);
  int parts = 0;
  for (ObjectId start = 0; start < static_cast<ObjectId>(c.object_count()); ++start) {
    if (!c.is_proper(start) || seen[start]) continue;
    ++parts;
    std::vector<ObjectId> queue{start};
    seen[start] = 1;
    while (!queue.empty()) {
      const auto x = queue.back();
      queue.pop_back();
      for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
        if (c.is_identity(m)) continue;
        ObjectId other = incidence::kNoObject;
        if (c.source(m) == x) other = c.target(m);
        if (c.target(m) == x) other = c.source(m);
        if (other == incidence::kNoObject || !c.is_proper(other) || seen[other]) {
          continue;
        }
        seen[other] = 1;
        queue.push_back(other);
      }
    }
  }
  return parts;
}

/// A cell of a cubical complex: per axis a closed interval [lo, hi] with
/// hi - lo in {0, 1}, parsed from names like "c0_1_0-1".
struct Box {
  std::array<int, 3> lo{};
  std::array<int, 3> hi{};

  bool inside(const Box& other) const {
    for (int a = 0; a < 3; ++a) {
      if (lo[a] < other.lo[a] || hi[a] > other.hi[a]) return false;
    }
    return true;
  }
};

inline std::optional<Box> parse_box(const std::string& name) {
  if (name.empty() || name[0] != 'c') return std::nullopt;
  Box b;
  std::size_t at = 1;
  for (int a = 0; a < 3; ++a) {
    std::size_t used = 0;
    b.lo[a] = std::stoi(name.substr(at), &used);
    at += used;
    b.hi[a] = b.lo[a];
    if (at < name.size() && name[at] == '-') {
      b.hi[a] = std::stoi(name.substr(at + 1), &used);
      at += used + 1;
    }
    if (a < 2) ++at;  // '_'
  }
  return b;
}

/// Cells of the unit cubes with lower corners `corners`, from coordinates.
inline std::vector<Box> cube_cells(const std::vector<std::array<int, 3>>& corners) {
  std::vector<Box> cells;
  auto same = [](const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; };
  for (const auto& corner : corners) {
    for (int code = 0; code < 27; ++code) {
      Box b;
      int rest = code;
      for (int a = 0; a < 3; ++a, rest /= 3) {
        const int kind = rest % 3;
        b.lo[a] = corner[a] + (kind == 1);
        b.hi[a] = corner[a] + (kind >= 1);
      }
      if (std::none_of(cells.begin(), cells.end(),
                       [&](const Box& o) { return same(o, b); })) {
        cells.push_back(b);
      }
    }
  }
  return cells;
}

/// Chains x_1 < ... < x_k of cells under containment, counted by length k.
inline std::vector<int> order_complex_counts(const std::vector<Box>& cells, int max_len) {
  const int n = static_cast<int>(cells.size());
  auto less = [&](int a, int b) {
    return a != b && cells[a].inside(cells[b]) &&
           !(cells[a].lo == cells[b].lo && cells[a].hi == cells[b].hi);
  };
  std::vector<int> counts(max_len + 1, 0);
  std::vector<std::vector<long>> ending(max_len + 1, std::vector<long>(n, 0));
  for (int x = 0; x < n; ++x) ending[1][x] = 1;
  for (int len = 2; len <= max_len; ++len) {
    for (int y = 0; y < n; ++y) {
      for (int x = 0; x < n; ++x) {
        if (less(x, y)) ending[len][y] += ending[len - 1][x];
      }
    }
  }
  for (int len = 1; len <= max_len; ++len) {
    for (int x = 0; x < n; ++x) counts[len] += static_cast<int>(ending[len][x]);
  }
  return counts;
}

/// Order isomorphism of two finite posets given as leq matrices, by trying
/// every bijection (only for small posets).
inline bool order_isomorphic(const std::vector<std::vector<bool>>& a,
                             const std::vector<std::vector<bool>>& b) {
  const int n = static_cast<int>(a.size());
  if (n != static_cast<int>(b.size())) return false;
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      for (int y = 0; y < n && ok; ++y) ok = a[x][y] == b[perm[x]][perm[y]];
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline std::vector<std::vector<bool>> leq_matrix(const Category& c) {
  const auto n = c.object_count();
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    leq[c.source(m)][c.target(m)] = true;
  }
  return leq;
}

/// Isomorphism by exhaustive search: object bijections fixing the bounds,
/// then per-hom-set bijections, checked against every composite. Only for
/// small categories.
inline bool brute_isomorphic(const Category& a, const Category& b) {
  const int n = static_cast<int>(a.object_count());
  if (n != static_cast<int>(b.object_count()) ||
      a.morphism_count() != b.morphism_count()) {
    return false;
  }
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[a.initial()] != b.initial() || perm[a.terminal()] != b.terminal()) continue;
    bool sizes = true;
    for (int x = 0; x < n && sizes; ++x) {
      for (int y = 0; y < n && sizes; ++y) {
        sizes = a.hom(x, y).size() == b.hom(perm[x], perm[y]).size();
      }
    }
    if (!sizes) continue;
    // hom sets with more than one morphism get every bijection
    std::vector<std::pair<int, int>> multi;
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        if (a.hom(x, y).size() > 1) multi.emplace_back(x, y);
      }
    }
    std::vector<std::vector<int>> choice(multi.size());
    for (std::size_t k = 0; k < multi.size(); ++k) {
      choice[k].resize(a.hom(multi[k].first, multi[k].second).size());
      std::iota(choice[k].begin(), choice[k].end(), 0);
    }
    std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
      if (k == multi.size()) {
        std::vector<MorphismId> map(a.morphism_count());
        for (MorphismId m = 0; m < static_cast<MorphismId>(a.morphism_count()); ++m) {
          const auto x = a.source(m);
          const auto y = a.target(m);
          const auto src_hom = a.hom(x, y);
          const auto pos = std::find(src_hom.begin(), src_hom.end(), m) - src_hom.begin();
          std::size_t slot = static_cast<std::size_t>(pos);
          for (std::size_t j = 0; j < multi.size(); ++j) {
            if (multi[j] == std::pair<int, int>(x, y)) slot = choice[j][pos];
          }
          map[m] = b.hom(perm[x], perm[y])[slot];
        }
        for (MorphismId g = 0; g < static_cast<MorphismId>(a.morphism_count()); ++g) {
          for (MorphismId f : a.in(a.source(g))) {
            const auto gf = a.try_compose(g, f);
            if (!gf || b.try_compose(map[g], map[f]) != map[*gf]) return false;
          }
        }
        return true;
      }
      std::sort(choice[k].begin(), choice[k].end());
      do {
        if (search(k + 1)) return true;
      } while (std::next_permutation(choice[k].begin(), choice[k].end()));
      return false;
    };
    if (search(0)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace oracle
