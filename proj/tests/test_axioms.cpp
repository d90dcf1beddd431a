#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "incidence/axioms.hpp"
#include "incidence/constructions.hpp"
#include "incidence/isomorphism.hpp"
#include "oracles.hpp"

using namespace incidence;
using testing_support::build_fixture;
using testing_support::build_text;

namespace {

bool witness_mentions(const ValidationReport& r, const std::string& ends) {
  return std::any_of(r.witnesses.begin(), r.witnesses.end(), [&](const Witness& w) {
    return w.item.find("(" + ends + ")") != std::string::npos;
  });
}

std::size_t sign_rule_violations(const ValidationReport& r) {
  return static_cast<std::size_t>(
      std::count_if(r.witnesses.begin(), r.witnesses.end(), [](const Witness& w) {
        return w.detail.find("sign rule") != std::string::npos;
      }));
}

// Sections of rank difference > 2 that must be unsplittable: all of them for
// strong unsplittability, initial ones plus those away from the universe for
// the initial variant.
bool closed_form_unsplittable(const CategoryPtr& c, bool initial_only) {
  for (MorphismId f = 0; f < static_cast<MorphismId>(c->morphism_count()); ++f) {
    if (c->rank_difference(f) <= 2) continue;
    const bool from_null = c->source(f) == c->initial();
    if (initial_only && !from_null && c->target(f) == c->terminal()) continue;
    const auto section = section_category(c, f);
    if (oracle::proper_components(*section) > 1) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("catalog fixtures satisfy the base axioms") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    CHECK(validate_bounded_acyclic(*c).passed());
    CHECK(check_graded(*c).passed());
    CHECK(check_semi_diamond(*c, SignCheck::on).passed());
  }
}

TEST_CASE("validators are deterministic") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    CHECK(to_json(check_cw(*c)) == to_json(check_cw(*c)));
    CHECK(to_json(check_diamond(*c)) == to_json(check_diamond(*c)));
  }
}

TEST_CASE("diamond implies semi-diamond") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    for (auto scope : {DiamondScope::all, DiamondScope::proper_only}) {
      if (check_diamond(*c, scope, SignCheck::off).passed()) {
        CHECK(check_semi_diamond(*c, SignCheck::off).passed());
      }
    }
  }
}

TEST_CASE("diamond verdicts match factorization counts") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    bool semi = true;
    bool exact = true;
    for (MorphismId m = 0; m < static_cast<MorphismId>(c->morphism_count()); ++m) {
      if (c->rank_difference(m) != 2) continue;
      const int n = oracle::count_proper_factorizations(*c, m);
      semi = semi && n <= 2;
      const bool in_scope = c->source(m) != c->initial() && c->target(m) != c->terminal();
      if (in_scope) exact = exact && n == 2;
    }
    CHECK(check_semi_diamond(*c, SignCheck::off).passed() == semi);
    CHECK(check_diamond(*c, DiamondScope::proper_only, SignCheck::off).passed() == exact);
  }
}

TEST_CASE("sign rule holds on the oriented fixtures") {
  for (const auto& name : {"segment", "circle_point", "crescent", "torus"}) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    CHECK(check_diamond(*c, DiamondScope::proper_only, SignCheck::on).passed());
  }
}

TEST_CASE("flipping one segment sign gives exactly one sign-rule violation") {
  const auto base = fixture("segment").presentation;
  int flips = 0;
  for (std::size_t i = 0; i < base.objects.size(); ++i) {
    if (!base.objects[i].sign) continue;
    auto p = base;
    p.objects[i].sign = p.objects[i].sign->flipped();
    const auto r = check_diamond(*build_category(p), DiamondScope::all, SignCheck::on);
    CHECK(sign_rule_violations(r) == 1);
    ++flips;
  }
  for (std::size_t i = 0; i < base.arrows.size(); ++i) {
    auto p = base;
    p.arrows[i].sign = p.arrows[i].sign->flipped();
    const auto r = check_diamond(*build_category(p), DiamondScope::proper_only, SignCheck::on);
    CHECK(sign_rule_violations(r) == 1);
    ++flips;
  }
  CHECK(flips == 4);
}

TEST_CASE("unsigned factorizations are noted rather than failed") {
  const auto c = build_text("object A rank 0 sign +\nobject B rank 0 sign +\n"
                            "object L rank 1\narrow l : A -> L\narrow r : B -> L\n");
  const auto r = check_semi_diamond(*c, SignCheck::on);
  CHECK(r.passed());
  CHECK_FALSE(r.notes.empty());
}

TEST_CASE("missing point signs are reported") {
  const auto c = build_text("object A rank 0\nobject L rank 1\narrow l : A -> L sign +\n");
  CHECK_FALSE(signs_available(*c));
  CHECK_THROWS_AS(require_signed_points(*c), SignError);
  CHECK_NOTHROW(require_signed_points(*build_fixture("torus")));
}

TEST_CASE("ray passes semi-diamond but not the full diamond") {
  const auto c = build_fixture("ray");
  CHECK(check_semi_diamond(*c, SignCheck::on).passed());
  CHECK(check_diamond(*c, DiamondScope::proper_only).passed());
  const auto all = check_diamond(*c, DiamondScope::all, SignCheck::off);
  CHECK(all.failed());
  CHECK(witness_mentions(all, "null -> R"));
}

TEST_CASE("three factorizations break the semi-diamond") {
  const auto c = build_text("object A rank 0 sign +\nobject B rank 0 sign +\n"
                            "object C rank 0 sign +\nobject L rank 1\n"
                            "arrow a : A -> L\narrow b : B -> L\narrow c : C -> L\n");
  const auto r = check_semi_diamond(*c, SignCheck::off);
  CHECK(r.failed());
  CHECK(witness_mentions(r, "null -> L"));
}

TEST_CASE("graded check catches a rank mutation") {
  auto raw = build_fixture("segment")->to_raw();
  for (auto& o : raw.objects) {
    if (o.name == "L") o.rank = 0;
  }
  const auto c = Category::from_raw(raw);
  const auto r = check_graded(c);
  CHECK(r.failed());
  CHECK(witness_mentions(r, "A -> L"));
}

TEST_CASE("cone is not strongly decomposable at the apex") {
  const auto c = build_fixture("cone");
  const auto r = check_strongly_decomposable(*c);
  CHECK(r.failed());
  // the vertexless base makes null -> B and null -> S indecomposable too
  CHECK(r.witnesses.size() == 3);
  CHECK(witness_mentions(r, "A -> S"));
  CHECK(witness_mentions(r, "null -> B"));
  CHECK(witness_mentions(r, "null -> S"));
  CHECK(check_cw(*c).failed());
  for (const auto& name : {"segment", "cube", "torus", "annulus", "crescent"}) {
    CAPTURE(name);
    CHECK(check_strongly_decomposable(*build_fixture(name)).passed());
  }
}

TEST_CASE("linked clusters match breadth-first components") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    const auto clusters = linked_clusters(*c);
    CHECK(static_cast<int>(clusters.size()) == oracle::proper_components(*c));
    std::size_t total = 0;
    for (const auto& part : clusters) {
      total += part.size();
      CHECK(std::is_sorted(part.begin(), part.end()));
    }
    CHECK(total + 2 == c->object_count());
  }
}

TEST_CASE("split gives one category per cluster") {
  const auto crescent = build_fixture("crescent");
  const auto up = upper_category(crescent, crescent->object_id("P"));
  const auto s = is_splittable(*up.category);
  CHECK(s.splittable);
  CHECK(s.clusters.size() == 2);
  const auto parts = split(*up.category);
  REQUIRE(parts.size() == 2);
  for (const auto& part : parts) {
    CHECK(validate_bounded_acyclic(*part).passed());
    CHECK_FALSE(is_splittable(*part).splittable);
  }
  CHECK(is_isomorphic(parts[0], parts[1]));
}

TEST_CASE("unsplittable categories split into themselves") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    if (is_splittable(*c).splittable) continue;
    const auto parts = split(*c);
    REQUIRE(parts.size() == 1);
    CHECK(is_isomorphic(parts[0], c));
  }
}

TEST_CASE("two disjoint points are splittable") {
  const auto c = build_text("object A rank 0 sign +\nobject B rank 0 sign +\n");
  CHECK(is_splittable(*c).splittable);
  CHECK(split(*c).size() == 2);
}

TEST_CASE("strong unsplittability agrees with the closed form") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    CHECK(check_strongly_unsplittable(*c).passed() == closed_form_unsplittable(c, false));
    CHECK(check_strongly_initial_unsplittable(*c).passed() ==
          closed_form_unsplittable(c, true));
  }
  for (int k = 3; k <= 6; ++k) {
    const auto c = build_category(ngon_presentation(k));
    CHECK(check_strongly_initial_unsplittable(*c).passed() == closed_form_unsplittable(c, true));
  }
}

TEST_CASE("shared edge separates the two cubes only above the edge") {
  const auto c = build_fixture("two_cubes_shared_edge");
  const auto su = check_strongly_unsplittable(*c);
  CHECK(su.failed());
  CHECK(witness_mentions(su, "c1_1_0-1 -> universe"));
  CHECK(check_strongly_initial_unsplittable(*c).passed());
  CHECK(check_cw(*c).passed());
}

TEST_CASE("annulus fails initial unsplittability at its face") {
  const auto c = build_fixture("annulus");
  const auto r = check_strongly_initial_unsplittable(*c);
  CHECK(r.failed());
  CHECK(witness_mentions(r, "null -> F"));
  CHECK(check_cw(*c).failed());
  CHECK(check_diamond(*c).passed());
}

TEST_CASE("cw fixtures pass check_cw") {
  for (const auto& name : {"signed_point", "segment", "circle_point", "ngon4", "cube",
                           "two_cubes_shared_edge", "sphere_meridian", "torus"}) {
    CAPTURE(name);
    CHECK(check_cw(*build_fixture(name)).passed());
  }
}

TEST_CASE("failing composite reports repeat their parts' witnesses") {
  const auto r = check_cw(*build_fixture("annulus"));
  std::size_t inner = 0;
  for (const auto& part : r.checks) {
    CHECK(part.failed() == !part.witnesses.empty());
    inner += part.witnesses.size();
  }
  CHECK(inner == r.witnesses.size());
}
