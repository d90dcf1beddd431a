#include "incidence/constructions.hpp"

#include <map>
#include <tuple>

namespace incidence {

namespace {

std::uint64_t key2(std::int32_t a, std::int32_t b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

OptSign inherited_sign(const Category& host, MorphismId m) {
  if (host.rank_difference(m) == 1) return host.sign(m);
  return std::nullopt;
}

void index_marked(MarkedCategory& mc) {
  const auto& cat = *mc.category;
  for (ObjectId x = 0; x < static_cast<ObjectId>(mc.objects.size()); ++x) {
    mc.mark_index.emplace(mc.objects[x].mark, x);
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(cat.morphism_count()); ++m) {
    mc.morphism_index.emplace(key2(cat.source(m), mc.underlying[m]), m);
  }
}

}  // namespace

std::optional<ObjectId> MarkedCategory::object_by_mark(MorphismId mark) const {
  const auto it = mark_index.find(mark);
  if (it == mark_index.end()) return std::nullopt;
  return it->second;
}

std::optional<MorphismId> MarkedCategory::morphism_from(
    ObjectId source, MorphismId underlying_morphism) const {
  const auto it = morphism_index.find(key2(source, underlying_morphism));
  if (it == morphism_index.end()) return std::nullopt;
  return it->second;
}

MarkedCategory upper_category(const CategoryPtr& cp, ObjectId m,
                              bool normalize) {
  const Category& c = *cp;
  if (m < 0 || m >= static_cast<ObjectId>(c.object_count())) {
    throw UnknownNameError("unknown object id " + std::to_string(m));
  }
  MarkedCategory mc;
  mc.host = cp;
  mc.shift.offset = normalize ? -(c.rank(m) + 1) : 0;

  RawCategory raw;
  std::vector<ObjectId> obj_of_mark(c.morphism_count(), kNoObject);
  for (MorphismId sm : c.out(m)) {
    const auto s = c.target(sm);
    obj_of_mark[sm] = static_cast<ObjectId>(raw.objects.size());
    raw.objects.push_back(
        {c.object_name(s) + "|" + c.name(sm), c.rank(s) + mc.shift.offset, {}});
    mc.objects.push_back({s, sm, kNoMorphism});
  }
  raw.identities.assign(raw.objects.size(), kNoMorphism);

  // Morphism phi_ts|phi_sm for every object (s, phi_sm) and phi_ts out of s.
  std::unordered_map<std::uint64_t, MorphismId> by_pair;
  for (ObjectId x = 0; x < static_cast<ObjectId>(mc.objects.size()); ++x) {
    const auto [s, sm, unused] = mc.objects[x];
    for (MorphismId ts : c.out(s)) {
      const auto tm = c.compose(ts, sm);
      const auto id = static_cast<MorphismId>(raw.morphisms.size());
      MorphismInfo info;
      info.source = x;
      info.target = obj_of_mark[tm];
      info.name = c.name(ts) + "|" + c.name(sm);
      info.sign = inherited_sign(c, ts);
      raw.morphisms.push_back(std::move(info));
      mc.underlying.push_back(ts);
      by_pair.emplace(key2(ts, sm), id);
      if (c.is_identity(ts)) raw.identities[x] = id;
    }
  }
  for (MorphismId id = 0; id < static_cast<MorphismId>(raw.morphisms.size()); ++id) {
    const auto ts = mc.underlying[id];
    if (c.is_identity(ts)) continue;
    const auto sm = mc.objects[raw.morphisms[id].source].mark;
    const auto tm = c.compose(ts, sm);
    for (MorphismId pt : c.out(c.target(ts))) {
      if (c.is_identity(pt)) continue;
      const auto second = by_pair.at(key2(pt, tm));
      const auto composite = by_pair.at(key2(c.compose(pt, ts), sm));
      raw.compositions.emplace_back(second, id, composite);
    }
  }
  raw.initial = obj_of_mark[c.identity(m)];
  raw.terminal = obj_of_mark[c.terminal_morphism(m)];
  mc.category = share(Category::from_raw(std::move(raw)));

  Functor down{mc.category, cp, {}, mc.underlying};
  for (const auto& o : mc.objects) down.object_map.push_back(o.base);
  mc.downward = std::move(down);
  index_marked(mc);
  return mc;
}

MarkedCategory lower_category(const CategoryPtr& cp, ObjectId m) {
  const Category& c = *cp;
  if (m < 0 || m >= static_cast<ObjectId>(c.object_count())) {
    throw UnknownNameError("unknown object id " + std::to_string(m));
  }
  MarkedCategory mc;
  mc.host = cp;

  RawCategory raw;
  std::vector<ObjectId> obj_of_mark(c.morphism_count(), kNoObject);
  for (MorphismId mt : c.in(m)) {
    const auto t = c.source(mt);
    obj_of_mark[mt] = static_cast<ObjectId>(raw.objects.size());
    raw.objects.push_back({c.object_name(t) + "|" + c.name(mt), c.rank(t), {}});
    mc.objects.push_back({t, mt, kNoMorphism});
  }
  raw.identities.assign(raw.objects.size(), kNoMorphism);

  // <phi_mt|phi_ts : <phi_mt o phi_ts|F_s -> <phi_mt|F_t, indexed by target.
  std::unordered_map<std::uint64_t, MorphismId> by_pair;
  for (ObjectId x = 0; x < static_cast<ObjectId>(mc.objects.size()); ++x) {
    const auto t = mc.objects[x].base;
    const auto mt = mc.objects[x].mark;
    for (MorphismId ts : c.in(t)) {
      const auto ms = c.compose(mt, ts);
      const auto id = static_cast<MorphismId>(raw.morphisms.size());
      MorphismInfo info;
      info.source = obj_of_mark[ms];
      info.target = x;
      info.name = c.name(ts) + "|" + c.name(mt);
      info.sign = inherited_sign(c, ts);
      raw.morphisms.push_back(std::move(info));
      mc.underlying.push_back(ts);
      by_pair.emplace(key2(mt, ts), id);
      if (c.is_identity(ts)) raw.identities[x] = id;
    }
  }
  // <phi_mp|phi_pt o <phi_mt|phi_ts = <phi_mp|phi_pt o phi_ts.
  for (MorphismId id = 0; id < static_cast<MorphismId>(raw.morphisms.size()); ++id) {
    const auto ts = mc.underlying[id];
    if (c.is_identity(ts)) continue;
    const auto mt = mc.objects[raw.morphisms[id].target].mark;
    const auto t = c.target(ts);
    for (MorphismId pt : c.out(t)) {
      if (c.is_identity(pt)) continue;
      for (MorphismId mp : c.hom(c.target(pt), m)) {
        if (c.try_compose(mp, pt) != mt) continue;
        const auto second = by_pair.at(key2(mp, pt));
        const auto composite = by_pair.at(key2(mp, c.compose(pt, ts)));
        raw.compositions.emplace_back(second, id, composite);
      }
    }
  }
  raw.initial = obj_of_mark[c.initial_morphism(m)];
  raw.terminal = obj_of_mark[c.identity(m)];
  mc.category = share(Category::from_raw(std::move(raw)));

  Functor down{mc.category, cp, {}, mc.underlying};
  for (const auto& o : mc.objects) down.object_map.push_back(o.base);
  mc.downward = std::move(down);
  const auto& cat = *mc.category;
  for (ObjectId x = 0; x < static_cast<ObjectId>(mc.objects.size()); ++x) {
    mc.mark_index.emplace(mc.objects[x].mark, x);
  }
  for (MorphismId id = 0; id < static_cast<MorphismId>(cat.morphism_count()); ++id) {
    mc.morphism_index.emplace(key2(cat.source(id), mc.underlying[id]), id);
  }
  return mc;
}

MarkedCategory build_section(const CategoryPtr& cp, MorphismId phi0,
                             bool normalize) {
  const Category& c = *cp;
  if (phi0 < 0 || phi0 >= static_cast<MorphismId>(c.morphism_count())) {
    throw UnknownNameError("unknown morphism id " + std::to_string(phi0));
  }
  MarkedCategory mc;
  mc.host = cp;
  const auto src = c.source(phi0);
  const auto dst = c.target(phi0);
  mc.shift.offset = normalize ? -(c.rank(src) + 1) : 0;

  RawCategory raw;
  std::map<std::pair<MorphismId, MorphismId>, ObjectId> obj_of;  // (first, second)
  for (MorphismId first : c.out(src)) {
    for (MorphismId second : c.hom(c.target(first), dst)) {
      if (c.try_compose(second, first) != phi0) continue;
      const auto z = c.target(first);
      obj_of.emplace(std::make_pair(first, second),
                     static_cast<ObjectId>(raw.objects.size()));
      raw.objects.push_back({c.object_name(z) + "|" + c.name(first) + "," +
                                 c.name(second),
                             c.rank(z) + mc.shift.offset,
                             {}});
      mc.objects.push_back({z, first, second});
    }
  }
  raw.identities.assign(raw.objects.size(), kNoMorphism);

  // Triple (outer, middle, inner) runs from (outer o middle, inner) to
  // (outer, middle o inner).
  std::map<std::tuple<MorphismId, MorphismId, MorphismId>, MorphismId> mor_of;
  std::vector<std::tuple<MorphismId, MorphismId, MorphismId>> triples;
  std::vector<std::vector<MorphismId>> out_of(raw.objects.size());
  for (ObjectId x = 0; x < static_cast<ObjectId>(mc.objects.size()); ++x) {
    const auto inner = mc.objects[x].mark;
    const auto rest = mc.objects[x].second_mark;
    for (MorphismId middle : c.out(c.target(inner))) {
      for (MorphismId outer : c.hom(c.target(middle), dst)) {
        if (c.try_compose(outer, middle) != rest) continue;
        const auto id = static_cast<MorphismId>(raw.morphisms.size());
        MorphismInfo info;
        info.source = x;
        info.target = obj_of.at({c.compose(middle, inner), outer});
        info.name = c.name(middle) + "|" + c.name(inner) + "," + c.name(outer);
        info.sign = inherited_sign(c, middle);
        raw.morphisms.push_back(std::move(info));
        mc.underlying.push_back(middle);
        triples.emplace_back(outer, middle, inner);
        mor_of.emplace(triples.back(), id);
        out_of[x].push_back(id);
        if (c.is_identity(middle)) raw.identities[x] = id;
      }
    }
  }
  for (MorphismId t1 = 0; t1 < static_cast<MorphismId>(triples.size()); ++t1) {
    const auto [outer1, middle1, inner1] = triples[t1];
    if (c.is_identity(middle1)) continue;
    for (MorphismId t2 : out_of[raw.morphisms[t1].target]) {
      const auto [outer2, middle2, inner2] = triples[t2];
      if (c.is_identity(middle2)) continue;
      const auto composite =
          mor_of.at({outer2, c.compose(middle2, middle1), inner1});
      raw.compositions.emplace_back(t2, t1, composite);
    }
  }
  raw.initial = obj_of.at({c.identity(src), phi0});
  raw.terminal = obj_of.at({phi0, c.identity(dst)});
  mc.category = share(Category::from_raw(std::move(raw)));
  const auto& cat = *mc.category;
  for (MorphismId id = 0; id < static_cast<MorphismId>(cat.morphism_count()); ++id) {
    mc.morphism_index.emplace(key2(cat.source(id), mc.underlying[id]), id);
  }
  return mc;
}

CategoryPtr section_category(const CategoryPtr& c, MorphismId phi0,
                             bool normalize) {
  return build_section(c, phi0, normalize).category;
}

Functor reduced_downward_functor(const MarkedCategory& upper_m,
                                 const MarkedCategory& upper_n,
                                 MorphismId phi_mn) {
  const Category& host = *upper_m.host;
  if (phi_mn < 0 || phi_mn >= static_cast<MorphismId>(host.morphism_count())) {
    throw UnknownNameError("unknown morphism id " + std::to_string(phi_mn));
  }
  const auto& from = *upper_m.category;
  Functor f{upper_m.category, upper_n.category, {}, {}};
  for (const auto& o : upper_m.objects) {
    const auto img = upper_n.object_by_mark(host.compose(o.mark, phi_mn));
    if (!img) throw PreconditionError("reduced downward functor: anchors differ");
    f.object_map.push_back(*img);
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(from.morphism_count()); ++m) {
    const auto img =
        upper_n.morphism_from(f.object_map[from.source(m)], upper_m.underlying[m]);
    if (!img) throw PreconditionError("reduced downward functor: missing image");
    f.morphism_map.push_back(*img);
  }
  return f;
}

Functor reduced_downward_functor(const CategoryPtr& c, MorphismId phi_mn) {
  if (phi_mn < 0 || phi_mn >= static_cast<MorphismId>(c->morphism_count())) {
    throw UnknownNameError("unknown morphism id " + std::to_string(phi_mn));
  }
  const auto upper_m = upper_category(c, c->target(phi_mn));
  const auto upper_n = upper_category(c, c->source(phi_mn));
  return reduced_downward_functor(upper_m, upper_n, phi_mn);
}

MarkedCategory iterated_upper(const CategoryPtr& c, ObjectId m,
                              ObjectId marked) {
  const auto first = upper_category(c, m);
  if (marked < 0 ||
      marked >= static_cast<ObjectId>(first.category->object_count())) {
    throw UnknownNameError("unknown marked object id " + std::to_string(marked));
  }
  return upper_category(first.category, marked);
}

ValidationReport check_local_embedding(const Functor& mu) {
  require_functor(mu);
  const auto& a = *mu.source;
  const auto& b = *mu.target;
  auto report = make_report("local_embedding");
  for (MorphismId phi = 0; phi < static_cast<MorphismId>(a.morphism_count()); ++phi) {
    std::map<std::pair<MorphismId, MorphismId>, int> lifts;
    for (const auto& [first, second] : factorizations(a, phi)) {
      ++lifts[{mu.on_morphism(first), mu.on_morphism(second)}];
    }
    for (const auto& fact : factorizations(b, mu.on_morphism(phi))) {
      const auto it = lifts.find(fact);
      const int count = it == lifts.end() ? 0 : it->second;
      if (count != 1) {
        report.fail(a.name(phi), "factorization (" + b.name(fact.first) + ", " +
                                     b.name(fact.second) + ") of the image lifts " +
                                     std::to_string(count) + " times");
      }
    }
  }
  return report;
}

UpperCategoryFamily category_of_upper_categories(const CategoryPtr& cp) {
  const Category& c = *cp;
  UpperCategoryFamily fam;
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    fam.uppers.push_back(upper_category(cp, x));
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    fam.functors.push_back(reduced_downward_functor(
        fam.uppers[c.target(m)], fam.uppers[c.source(m)], m));
  }

  RawCategory raw;
  const int pivot = c.rank(c.initial()) + c.rank(c.terminal());
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    raw.objects.push_back({"upper(" + c.object_name(x) + ")", pivot - c.rank(x), {}});
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    MorphismInfo info;
    info.source = c.target(m);
    info.target = c.source(m);
    info.name = "down(" + c.name(m) + ")";
    info.sign = c.sign(m);
    raw.morphisms.push_back(std::move(info));
  }
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    if (!(fam.functors[c.identity(x)] == identity_functor(fam.uppers[x].category))) {
      throw Error("downward functor of an identity is not the identity");
    }
    raw.identities.push_back(c.identity(x));
  }
  // Which reduced functor a composite is: read off where it sends the initial
  // object F_m|id of its source upper category.
  for (MorphismId f = 0; f < static_cast<MorphismId>(c.morphism_count()); ++f) {
    if (c.is_identity(f)) continue;
    // functor f: upper(target f) -> upper(source f); follow with g for every
    // g : source(g) -> target(g) with target(g) == source(f).
    for (MorphismId g : c.in(c.source(f))) {
      if (c.is_identity(g)) continue;
      const auto composite = compose(fam.functors[g], fam.functors[f]);
      const auto& upper_src = fam.uppers[c.target(f)];
      const auto& upper_dst = fam.uppers[c.source(g)];
      const auto init_img =
          composite.on_object(upper_src.category->initial());
      const auto which = upper_dst.objects.at(init_img).mark;
      if (!(fam.functors[which] == composite)) {
        throw Error("composite of downward functors is not a downward functor");
      }
      raw.compositions.emplace_back(g, f, which);
    }
  }
  raw.initial = c.terminal();
  raw.terminal = c.initial();
  fam.category = share(Category::from_raw(std::move(raw)));
  fam.opposite = opposite(c);

  fam.to_opposite = Functor{fam.category, fam.opposite, {}, {}};
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    fam.to_opposite.object_map.push_back(x);
  }
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    fam.to_opposite.morphism_map.push_back(m);
  }
  require_functor(fam.to_opposite);
  return fam;
}

}  // namespace incidence
