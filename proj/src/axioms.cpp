#include "incidence/axioms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "incidence/constructions.hpp"
#include "incidence/isomorphism.hpp"

namespace incidence {

namespace {

using MorphismRange = std::vector<MorphismId>;

MorphismId morphism_limit(const Category& c) {
  return static_cast<MorphismId>(c.morphism_count());
}

ObjectId object_limit(const Category& c) {
  return static_cast<ObjectId>(c.object_count());
}

ValidationReport check_irreflexivity(const Category& c) {
  auto r = make_report("irreflexivity");
  for (MorphismId m = 0; m < morphism_limit(c); ++m) {
    if (!c.is_identity(m) && c.source(m) == c.target(m)) {
      r.fail(describe_morphism(c, m), "non-identity endomorphism");
    }
  }
  return r;
}

ValidationReport check_asymmetry(const Category& c) {
  auto r = make_report("asymmetry");
  for (ObjectId x = 0; x < object_limit(c); ++x) {
    for (ObjectId y = x + 1; y < object_limit(c); ++y) {
      const auto there = c.hom(x, y);
      const auto back = c.hom(y, x);
      if (!there.empty() && !back.empty()) {
        r.fail(describe_morphism(c, there.front()),
               "opposite morphism " + describe_morphism(c, back.front()));
      }
    }
  }
  return r;
}

ValidationReport check_transitivity(const Category& c) {
  auto r = make_report("transitivity");
  for (MorphismId g = 0; g < morphism_limit(c); ++g) {
    for (MorphismId f : c.in(c.source(g))) {
      if (!c.try_compose(g, f)) {
        r.fail(describe_morphism(c, f),
               "no composite with " + describe_morphism(c, g));
      }
    }
  }
  return r;
}

ValidationReport check_associativity(const Category& c) {
  auto r = make_report("associativity");
  for (MorphismId g = 0; g < morphism_limit(c); ++g) {
    if (c.is_identity(g)) continue;
    for (MorphismId f : c.in(c.source(g))) {
      if (c.is_identity(f)) continue;
      const auto gf = c.try_compose(g, f);
      if (!gf) continue;
      for (MorphismId h : c.out(c.target(g))) {
        if (c.is_identity(h)) continue;
        const auto hg = c.try_compose(h, g);
        if (!hg) continue;
        const auto left = c.try_compose(*hg, f);
        const auto right = c.try_compose(h, *gf);
        if (left != right) {
          r.fail(describe_morphism(c, g),
                 "(h o g) o f differs from h o (g o f) with f = " + c.name(f) +
                     ", h = " + c.name(h));
        }
      }
    }
  }
  return r;
}

ValidationReport check_bound(const Category& c, bool initial) {
  auto r = make_report(initial ? "initial" : "terminal");
  const ObjectId bound = initial ? c.initial() : c.terminal();
  if (bound < 0 || bound >= object_limit(c)) {
    r.fail("(none)", "no designated bound");
    return r;
  }
  for (ObjectId x = 0; x < object_limit(c); ++x) {
    const auto count = initial ? c.hom(bound, x).size() : c.hom(x, bound).size();
    if (count != 1) {
      r.fail(c.object_name(x), std::to_string(count) + " morphisms " +
                                   (initial ? "from " : "to ") +
                                   c.object_name(bound));
    }
  }
  return r;
}

bool in_scope(const Category& c, MorphismId m, DiamondScope scope) {
  if (scope == DiamondScope::all) return true;
  return c.source(m) != c.initial() && c.target(m) != c.terminal();
}

ValidationReport diamond_like(const Category& c, std::string property,
                              std::optional<DiamondScope> exact,
                              SignCheck signs) {
  auto r = make_report(std::move(property));
  for (MorphismId m = 0; m < morphism_limit(c); ++m) {
    if (c.rank_difference(m) != 2) continue;
    const auto facts = proper_factorizations(c, m);
    const bool need_two = exact && in_scope(c, m, *exact);
    if (facts.size() > 2 || (need_two && facts.size() != 2)) {
      r.fail(describe_morphism(c, m),
             std::to_string(facts.size()) + " maximal chains, expected " +
                 (need_two ? "exactly 2" : "at most 2"));
      continue;
    }
    if (signs == SignCheck::off || facts.size() != 2) continue;
    const auto& [f0, g0] = facts[0];
    const auto& [f1, g1] = facts[1];
    if (!c.sign(f0) || !c.sign(g0) || !c.sign(f1) || !c.sign(g1)) {
      r.notes.push_back("unsigned: " + describe_morphism(c, m));
      continue;
    }
    const Sign first = *c.sign(f0) * *c.sign(g0);
    const Sign second = *c.sign(f1) * *c.sign(g1);
    if (first == second) {
      r.fail(describe_morphism(c, m),
             "sign rule: chains " + c.name(f0) + "," + c.name(g0) + " and " +
                 c.name(f1) + "," + c.name(g1) + " both have product " +
                 first.symbol());
    }
  }
  return r;
}

CategoryPtr shared_copy(const Category& c) { return share(Category(c)); }

/// Memo of strongly-initial-unsplittable verdicts keyed up to isomorphism.
class SiuMemo {
 public:
  std::optional<bool> find(const CategoryPtr& c) const {
    const auto it = buckets_.find(key(*c));
    if (it == buckets_.end()) return std::nullopt;
    for (const auto& [known, verdict] : it->second) {
      if (is_isomorphic(known, c)) return verdict;
    }
    return std::nullopt;
  }

  void store(const CategoryPtr& c, bool verdict) {
    buckets_[key(*c)].emplace_back(c, verdict);
  }

 private:
  static std::vector<int> key(const Category& c) {
    std::vector<int> k{static_cast<int>(c.object_count()),
                       static_cast<int>(c.morphism_count())};
    std::vector<int> out_degrees;
    for (ObjectId x = 0; x < object_limit(c); ++x) {
      out_degrees.push_back(static_cast<int>(c.out(x).size()));
    }
    std::sort(out_degrees.begin(), out_degrees.end());
    k.insert(k.end(), out_degrees.begin(), out_degrees.end());
    return k;
  }

  std::map<std::vector<int>, std::vector<std::pair<CategoryPtr, bool>>>
      buckets_;
};

bool initial_section_fault(const CategoryPtr& c, MorphismId m,
                           std::string& detail) {
  const auto section = section_category(c, m);
  const auto parts = linked_clusters(*section);
  if (parts.size() < 2) return false;
  detail = "section splits into " + std::to_string(parts.size()) + " clusters";
  return true;
}

bool siu(const CategoryPtr& c, SiuMemo& memo, ValidationReport* report);

bool non_initial_section_fault(const CategoryPtr& c, MorphismId m,
                               SiuMemo& memo, std::string& detail) {
  const auto section = section_category(c, m);
  const auto parts = split(*section);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (!siu(parts[k], memo, nullptr)) {
      detail = "part " + std::to_string(k + 1) + " of " +
               std::to_string(parts.size()) +
               " of its section is not strongly initial unsplittable";
      return true;
    }
  }
  return false;
}

bool siu(const CategoryPtr& c, SiuMemo& memo, ValidationReport* report) {
  if (!report) {
    if (const auto known = memo.find(c)) return *known;
  }
  bool ok = true;
  const Category& cat = *c;
  for (MorphismId m = 0; m < morphism_limit(cat); ++m) {
    if (cat.rank_difference(m) <= 2) continue;
    std::string detail;
    const bool fault = cat.source(m) == cat.initial()
                           ? initial_section_fault(c, m, detail)
                           : non_initial_section_fault(c, m, memo, detail);
    if (!fault) continue;
    ok = false;
    if (!report) break;
    report->fail(describe_morphism(cat, m), detail);
  }
  memo.store(c, ok);
  return ok;
}

}  // namespace

std::string describe_morphism(const Category& c, MorphismId m) {
  return c.name(m) + " (" + c.object_name(c.source(m)) + " -> " +
         c.object_name(c.target(m)) + ")";
}

ValidationReport validate_bounded_acyclic(const Category& c) {
  auto r = make_report("bounded_acyclic");
  r.add(check_irreflexivity(c));
  r.add(check_asymmetry(c));
  r.add(check_transitivity(c));
  r.add(check_associativity(c));
  r.add(check_bound(c, true));
  r.add(check_bound(c, false));
  return r;
}

ValidationReport check_graded(const Category& c) {
  auto r = make_report("graded");
  for (MorphismId m = 0; m < morphism_limit(c); ++m) {
    if (!c.is_identity(m) && c.rank_difference(m) <= 0) {
      r.fail(describe_morphism(c, m), "rank does not increase");
    }
  }
  return r;
}

namespace {

std::optional<ObjectId> unsigned_point(const Category& c) {
  const int point_rank = c.rank(c.initial()) + 1;
  for (ObjectId x = 0; x < object_limit(c); ++x) {
    if (!c.is_proper(x) || c.rank(x) != point_rank) continue;
    const auto from_null = c.hom(c.initial(), x);
    if (from_null.size() != 1 || !c.sign(from_null.front())) return x;
  }
  return std::nullopt;
}

}  // namespace

bool signs_available(const Category& c) {
  if (unsigned_point(c)) return false;
  const auto& ms = c.morphisms();
  return std::any_of(ms.begin(), ms.end(),
                     [](const MorphismInfo& m) { return m.sign.has_value(); });
}

void require_signed_points(const Category& c) {
  if (const auto x = unsigned_point(c)) {
    throw SignError("point " + c.object_name(*x) + " has no sign");
  }
}

ValidationReport check_semi_diamond(const Category& c, SignCheck signs) {
  return diamond_like(c, "semi_diamond", std::nullopt, signs);
}

ValidationReport check_diamond(const Category& c, DiamondScope scope,
                               SignCheck signs) {
  return diamond_like(c, "diamond", scope, signs);
}

ValidationReport check_strongly_decomposable(const Category& c) {
  auto r = make_report("strongly_decomposable");
  // 0 unknown, 1 decomposable, 2 not; morphisms are visited by increasing
  // rank difference so factors are settled first.
  std::vector<char> state(c.morphism_count(), 0);
  std::vector<MorphismId> order(c.morphism_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](MorphismId a, MorphismId b) {
    return c.rank_difference(a) < c.rank_difference(b);
  });
  for (MorphismId m : order) {
    if (c.is_identity(m)) continue;
    bool ok = c.rank_difference(m) == 1;
    if (!ok) {
      for (const auto& [f, g] : proper_factorizations(c, m)) {
        if (state[f] == 1 && state[g] == 1) {
          ok = true;
          break;
        }
      }
    }
    state[m] = ok ? 1 : 2;
  }
  for (MorphismId m = 0; m < morphism_limit(c); ++m) {
    if (state[m] == 2 && c.target(m) != c.terminal()) {
      r.fail(describe_morphism(c, m), "not a composite of 1-rank morphisms");
    }
  }
  return r;
}

std::vector<std::vector<ObjectId>> linked_clusters(const Category& c) {
  std::vector<ObjectId> parent(c.object_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](ObjectId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (MorphismId e : hasse(c).edges) {
    const auto s = c.source(e);
    const auto t = c.target(e);
    if (!c.is_proper(s) || !c.is_proper(t)) continue;
    const auto a = find(s);
    const auto b = find(t);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<ObjectId, std::vector<ObjectId>> parts;
  for (ObjectId x = 0; x < object_limit(c); ++x) {
    if (c.is_proper(x)) parts[find(x)].push_back(x);
  }
  std::vector<std::vector<ObjectId>> result;
  for (auto& [root, members] : parts) result.push_back(std::move(members));
  std::sort(result.begin(), result.end());
  return result;
}

Splittability is_splittable(const Category& c) {
  Splittability s;
  s.clusters = linked_clusters(c);
  s.splittable = s.clusters.size() >= 2;
  return s;
}

std::vector<CategoryPtr> split(const Category& c) {
  const auto clusters = linked_clusters(c);
  if (clusters.size() < 2) return {shared_copy(c)};
  std::vector<CategoryPtr> parts;
  for (const auto& cluster : clusters) {
    std::vector<ObjectId> keep{c.initial()};
    keep.insert(keep.end(), cluster.begin(), cluster.end());
    keep.push_back(c.terminal());
    parts.push_back(full_subcategory(c, keep, c.initial(), c.terminal()));
  }
  return parts;
}

ValidationReport check_strongly_unsplittable(const Category& c) {
  auto r = make_report("strongly_unsplittable");
  const auto cp = shared_copy(c);
  for (MorphismId m = 0; m < morphism_limit(c); ++m) {
    if (c.rank_difference(m) <= 2) continue;
    const auto parts = linked_clusters(*section_category(cp, m));
    if (parts.size() >= 2) {
      r.fail(describe_morphism(c, m), "section splits into " +
                                          std::to_string(parts.size()) +
                                          " clusters");
    }
  }
  return r;
}

ValidationReport check_strongly_initial_unsplittable(const Category& c) {
  auto r = make_report("strongly_initial_unsplittable");
  SiuMemo memo;
  siu(shared_copy(c), memo, &r);
  return r;
}

ValidationReport check_cw(const Category& c) {
  auto r = make_report("cw");
  const auto signs = signs_available(c) ? SignCheck::on : SignCheck::off;
  r.add(check_diamond(c, DiamondScope::proper_only, signs));
  r.add(check_strongly_decomposable(c));
  r.add(check_strongly_initial_unsplittable(c));
  return r;
}

}  // namespace incidence
