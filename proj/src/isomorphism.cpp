#include "incidence/isomorphism.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace incidence {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  return h;
}

struct Neighbour {
  ObjectId other;
  std::uint64_t hom_size;
  std::uint64_t hasse_mult;
};

struct Prepared {
  const Category* c = nullptr;
  std::vector<bool> hasse;
  std::vector<int> depth;
  std::vector<std::uint64_t> color;
  std::vector<std::vector<Neighbour>> preds;
  std::vector<std::vector<Neighbour>> succs;
  /// Per object: Hasse edges grouped by source, groups ordered by source id.
  std::vector<std::vector<std::pair<ObjectId, std::vector<MorphismId>>>> hasse_in;
  /// Per morphism: (g, h) with h nondecomposable and h o g == m.
  std::vector<std::vector<std::pair<MorphismId, MorphismId>>> decomps;
};

Prepared prepare(const Category& c) {
  Prepared p;
  p.c = &c;
  const auto n = static_cast<ObjectId>(c.object_count());
  const auto m_count = static_cast<MorphismId>(c.morphism_count());
  p.hasse.assign(m_count, false);
  for (MorphismId m = 0; m < m_count; ++m) p.hasse[m] = is_nondecomposable(c, m);

  // Longest Hasse path from any source-free object (Kahn order).
  std::vector<int> indeg(n, 0);
  std::vector<std::vector<ObjectId>> hasse_out(n);
  for (MorphismId m = 0; m < m_count; ++m) {
    if (!p.hasse[m]) continue;
    ++indeg[c.target(m)];
    hasse_out[c.source(m)].push_back(c.target(m));
  }
  p.depth.assign(n, 0);
  std::vector<int> height(n, 0);
  std::vector<ObjectId> topo;
  std::vector<ObjectId> ready;
  for (ObjectId x = 0; x < n; ++x) {
    if (indeg[x] == 0) ready.push_back(x);
  }
  while (!ready.empty()) {
    const auto x = ready.back();
    ready.pop_back();
    topo.push_back(x);
    for (ObjectId y : hasse_out[x]) {
      p.depth[y] = std::max(p.depth[y], p.depth[x] + 1);
      if (--indeg[y] == 0) ready.push_back(y);
    }
  }
  for (ObjectId x = 0; x < n; ++x) {
    if (indeg[x] > 0) p.depth[x] = n + 1;  // cyclic leftovers
  }
  for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
    for (ObjectId y : hasse_out[*it]) {
      height[*it] = std::max(height[*it], height[y] + 1);
    }
  }

  std::map<std::pair<ObjectId, ObjectId>, std::pair<std::uint64_t, std::uint64_t>>
      pair_stats;
  for (MorphismId m = 0; m < m_count; ++m) {
    if (c.is_identity(m)) continue;
    auto& s = pair_stats[{c.source(m), c.target(m)}];
    ++s.first;
    if (p.hasse[m]) ++s.second;
  }
  p.preds.assign(n, {});
  p.succs.assign(n, {});
  for (const auto& [key, s] : pair_stats) {
    p.succs[key.first].push_back({key.second, s.first, s.second});
    p.preds[key.second].push_back({key.first, s.first, s.second});
  }

  p.color.assign(n, 0);
  for (ObjectId x = 0; x < n; ++x) {
    std::uint64_t in_total = 0, out_total = 0, hin = 0, hout = 0;
    for (const auto& nb : p.preds[x]) {
      in_total += nb.hom_size;
      hin += nb.hasse_mult;
    }
    for (const auto& nb : p.succs[x]) {
      out_total += nb.hom_size;
      hout += nb.hasse_mult;
    }
    std::uint64_t h = mix(0, x == c.initial() ? 1 : 0);
    h = mix(h, x == c.terminal() ? 1 : 0);
    h = mix(h, static_cast<std::uint64_t>(p.depth[x]));
    h = mix(h, static_cast<std::uint64_t>(height[x]));
    h = mix(h, in_total);
    h = mix(h, out_total);
    h = mix(h, hin);
    h = mix(h, hout);
    p.color[x] = h;
  }
  auto distinct = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin();
  };
  auto classes = distinct(p.color);
  for (ObjectId round = 0; round < n; ++round) {
    std::vector<std::uint64_t> next(n);
    for (ObjectId x = 0; x < n; ++x) {
      std::vector<std::uint64_t> in_sig, out_sig;
      for (const auto& nb : p.preds[x]) {
        in_sig.push_back(mix(mix(p.color[nb.other], nb.hom_size), nb.hasse_mult));
      }
      for (const auto& nb : p.succs[x]) {
        out_sig.push_back(mix(mix(p.color[nb.other], nb.hom_size), nb.hasse_mult));
      }
      std::sort(in_sig.begin(), in_sig.end());
      std::sort(out_sig.begin(), out_sig.end());
      std::uint64_t h = mix(p.color[x], 0x51);
      for (auto v : in_sig) h = mix(h, v);
      h = mix(h, 0x52);
      for (auto v : out_sig) h = mix(h, v);
      next[x] = h;
    }
    p.color = std::move(next);
    const auto now = distinct(p.color);
    if (now == classes) break;
    classes = now;
  }

  p.hasse_in.assign(n, {});
  for (ObjectId x = 0; x < n; ++x) {
    std::map<ObjectId, std::vector<MorphismId>> groups;
    for (MorphismId m : c.in(x)) {
      if (p.hasse[m]) groups[c.source(m)].push_back(m);
    }
    for (auto& [src, edges] : groups) p.hasse_in[x].emplace_back(src, edges);
  }

  p.decomps.assign(m_count, {});
  for (MorphismId m = 0; m < m_count; ++m) {
    if (c.is_identity(m)) continue;
    for (MorphismId h : c.in(c.target(m))) {
      if (!p.hasse[h]) continue;
      for (MorphismId g : c.hom(c.source(m), c.source(h))) {
        if (c.try_compose(h, g) == m) p.decomps[m].emplace_back(g, h);
      }
    }
  }
  return p;
}

class Search {
 public:
  Search(const Prepared& a, const Prepared& b) : a_(a), b_(b) {
    const auto n = a.c->object_count();
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
    std::stable_sort(order_.begin(), order_.end(), [&](ObjectId x, ObjectId y) {
      return a.depth[x] < a.depth[y];
    });
    omap_.assign(n, kNoObject);
    b_obj_used_.assign(n, false);
    mmap_.assign(a.c->morphism_count(), kNoMorphism);
    b_mor_used_.assign(b.c->morphism_count(), false);
  }

  bool run() { return assign_object(0); }

  const std::vector<ObjectId>& object_map() const { return omap_; }
  const std::vector<MorphismId>& morphism_map() const { return mmap_; }

 private:
  bool assign_object(std::size_t k) {
    if (k == order_.size()) return true;
    const auto x = order_[k];
    const auto& ca = *a_.c;
    const auto& cb = *b_.c;
    for (ObjectId y = 0; y < static_cast<ObjectId>(cb.object_count()); ++y) {
      if (b_obj_used_[y] || b_.color[y] != a_.color[x]) continue;
      if (a_.hasse_in[x].size() != b_.hasse_in[y].size()) continue;
      omap_[x] = y;
      b_obj_used_[y] = true;
      bind(ca.identity(x), cb.identity(y));
      if (assign_group(k, 0)) return true;
      unbind(ca.identity(x));
      b_obj_used_[y] = false;
      omap_[x] = kNoObject;
    }
    return false;
  }

  bool assign_group(std::size_t k, std::size_t gi) {
    const auto x = order_[k];
    const auto y = omap_[x];
    const auto& groups = a_.hasse_in[x];
    if (gi == groups.size()) return derive_and_recurse(k);
    const auto& [src, edges_a] = groups[gi];
    const auto bsrc = omap_[src];
    std::vector<MorphismId> edges_b;
    for (const auto& [s, e] : b_.hasse_in[y]) {
      if (s == bsrc) edges_b = e;
    }
    if (edges_b.size() != edges_a.size()) return false;
    std::sort(edges_b.begin(), edges_b.end());
    do {
      bool ok = true;
      std::size_t bound = 0;
      for (; bound < edges_a.size(); ++bound) {
        if (b_mor_used_[edges_b[bound]]) {
          ok = false;
          break;
        }
        bind(edges_a[bound], edges_b[bound]);
      }
      if (ok && assign_group(k, gi + 1)) return true;
      for (std::size_t i = 0; i < bound; ++i) unbind(edges_a[i]);
    } while (std::next_permutation(edges_b.begin(), edges_b.end()));
    return false;
  }

  bool derive_and_recurse(std::size_t k) {
    const auto x = order_[k];
    const auto y = omap_[x];
    const auto& ca = *a_.c;
    const auto& cb = *b_.c;
    std::vector<MorphismId> derived;
    bool ok = true;
    for (MorphismId m : ca.in(x)) {
      if (ca.is_identity(m) || a_.hasse[m]) continue;
      const auto& ds = a_.decomps[m];
      if (ds.empty()) {
        ok = false;
        break;
      }
      const auto img = image_of(ds.front());
      if (!img || b_mor_used_[*img]) {
        ok = false;
        break;
      }
      bind(m, *img);
      derived.push_back(m);
    }
    if (ok) {
      for (MorphismId m : ca.in(x)) {
        if (ca.is_identity(m)) continue;
        for (const auto& d : a_.decomps[m]) {
          if (image_of(d) != mmap_[m]) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
    }
    if (ok) {
      for (const auto& nb : a_.preds[x]) {
        if (cb.hom(omap_[nb.other], y).size() != nb.hom_size) {
          ok = false;
          break;
        }
      }
    }
    if (ok && assign_object(k + 1)) return true;
    for (MorphismId m : derived) unbind(m);
    return false;
  }

  std::optional<MorphismId> image_of(std::pair<MorphismId, MorphismId> d) const {
    const auto g = mmap_[d.first];
    const auto h = mmap_[d.second];
    if (g == kNoMorphism || h == kNoMorphism) return std::nullopt;
    return b_.c->try_compose(h, g);
  }

  void bind(MorphismId m, MorphismId img) {
    mmap_[m] = img;
    b_mor_used_[img] = true;
  }
  void unbind(MorphismId m) {
    b_mor_used_[mmap_[m]] = false;
    mmap_[m] = kNoMorphism;
  }

  const Prepared& a_;
  const Prepared& b_;
  std::vector<ObjectId> order_;
  std::vector<ObjectId> omap_;
  std::vector<bool> b_obj_used_;
  std::vector<MorphismId> mmap_;
  std::vector<bool> b_mor_used_;
};

}  // namespace

std::optional<Isomorphism> is_isomorphic(const CategoryPtr& a,
                                         const CategoryPtr& b) {
  if (a->object_count() != b->object_count() ||
      a->morphism_count() != b->morphism_count()) {
    return std::nullopt;
  }
  const auto pa = prepare(*a);
  const auto pb = prepare(*b);
  auto ca = pa.color;
  auto cb = pb.color;
  std::sort(ca.begin(), ca.end());
  std::sort(cb.begin(), cb.end());
  if (ca != cb) return std::nullopt;

  Search search(pa, pb);
  if (!search.run()) return std::nullopt;

  Isomorphism iso{{a, b, search.object_map(), search.morphism_map()},
                  {b, a, std::vector<ObjectId>(b->object_count()),
                   std::vector<MorphismId>(b->morphism_count())}};
  for (std::size_t x = 0; x < iso.forward.object_map.size(); ++x) {
    iso.backward.object_map[iso.forward.object_map[x]] = static_cast<ObjectId>(x);
  }
  for (std::size_t m = 0; m < iso.forward.morphism_map.size(); ++m) {
    iso.backward.morphism_map[iso.forward.morphism_map[m]] =
        static_cast<MorphismId>(m);
  }
  if (!is_functor(iso.forward) || !is_functor(iso.backward)) return std::nullopt;
  return iso;
}

}  // namespace incidence
