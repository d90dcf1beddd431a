#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "incidence/axioms.hpp"
#include "incidence/constructions.hpp"
#include "oracles.hpp"

using namespace incidence;
using testing_support::build_fixture;

namespace {

// Independent recount of a count-valued expectation; nullopt when the
// property has no oracle here.
std::optional<std::string> oracle_value(const CategoryPtr& c, const Presentation& p,
                                        const Expectation& e) {
  const auto& prop = e.property;
  if (prop == "objects") return std::to_string(oracle::quotient(p).objects.size());
  if (prop == "morphisms") return std::to_string(oracle::quotient(p).morphism_count);
  if (prop == "hasse_edges") {
    int n = 0;
    for (MorphismId m = 0; m < static_cast<MorphismId>(c->morphism_count()); ++m) {
      if (!c->is_identity(m) && oracle::count_proper_factorizations(*c, m) == 0) ++n;
    }
    return std::to_string(n);
  }
  if (prop == "upper_proper_objects" || prop == "lower_proper_objects") {
    const auto x = c->object_id(e.argument);
    int n = 0;
    for (ObjectId y = 0; y < static_cast<ObjectId>(c->object_count()); ++y) {
      if (prop == "upper_proper_objects" && y != c->terminal()) n += c->hom(x, y).size();
      if (prop == "lower_proper_objects" && y != c->initial()) n += c->hom(y, x).size();
    }
    return std::to_string(n - 1);
  }
  if (prop == "upper_clusters") {
    return std::to_string(
        oracle::proper_components(*upper_category(c, c->object_id(e.argument)).category));
  }
  if (prop == "nerve_counts" || prop == "euler") {
    const auto counts = oracle::chain_counts(*c, c->rank(c->terminal()) - c->rank(c->initial()));
    std::ostringstream out;
    int chi = 0;
    for (std::size_t n = 1; n < counts.size(); ++n) {
      if (n > 1) out << ',';
      out << counts[n];
      chi += (n % 2 == 1 ? 1 : -1) * counts[n];
    }
    return prop == "euler" ? std::to_string(chi) : out.str();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("catalog order and lookup") {
  const auto& names = fixture_names();
  REQUIRE(names.size() == 12);
  CHECK(names.front() == "signed_point");
  CHECK(names.back() == "cone");
  for (const auto& n : names) CHECK(fixture(n).name == n);
  CHECK(fixture("ngon(5)").name == "ngon5");
  CHECK_THROWS_AS(fixture("dodecahedron"), UnknownNameError);
  CHECK_THROWS_AS(fixture("ngon1"), UnknownNameError);
}

TEST_CASE("every fixture builds and satisfies the base axioms") {
  for (const auto& name : fixture_names()) {
    CAPTURE(name);
    const auto c = build_fixture(name);
    CHECK(validate_bounded_acyclic(*c).passed());
    CHECK(check_graded(*c).passed());
  }
}

TEST_CASE("every expectation holds") {
  for (const auto& name : fixture_names()) {
    for (const auto& o : evaluate(fixture(name))) {
      CAPTURE(name);
      CAPTURE(o.expectation.property);
      CAPTURE(o.expectation.argument);
      CAPTURE(o.actual);
      CHECK(o.ok);
    }
  }
}

TEST_CASE("counted expectations are confirmed by brute-force recounts") {
  int confirmed = 0;
  for (const auto& name : fixture_names()) {
    const auto spec = fixture(name);
    const auto c = build_category(spec.presentation);
    for (const auto& e : spec.expectations) {
      const auto value = oracle_value(c, spec.presentation, e);
      if (!value) continue;
      CAPTURE(name);
      CAPTURE(e.property);
      CAPTURE(e.argument);
      CHECK(*value == e.expected);
      ++confirmed;
    }
  }
  CHECK(confirmed >= 30);
}

TEST_CASE("n-gon family") {
  for (int k = 2; k <= 8; ++k) {
    CAPTURE(k);
    const auto spec = fixture("ngon" + std::to_string(k));
    for (const auto& o : evaluate(spec)) {
      CAPTURE(o.expectation.property);
      CHECK(o.ok);
    }
    const auto c = build_category(spec.presentation);
    const auto q = oracle::quotient(spec.presentation);
    CHECK(static_cast<int>(c->morphism_count()) == q.morphism_count);
  }
}

TEST_CASE("cubical complexes match coordinate cells") {
  const std::vector<std::vector<UnitCube>> shapes{
      {{0, 0, 0}}, {{0, 0, 0}, {1, 0, 0}}, {{0, 0, 0}, {1, 1, 0}}, {{0, 0, 0}, {1, 1, 1}}};
  for (const auto& cubes : shapes) {
    std::vector<std::array<int, 3>> corners;
    for (const auto& u : cubes) corners.push_back({u.x, u.y, u.z});
    const auto c = build_category(cube_complex_presentation(cubes));
    const auto cells = oracle::cube_cells(corners);
    CHECK(c->object_count() == cells.size() + 2);
    CHECK(check_diamond(*c).passed());
    for (ObjectId x = 0; x < static_cast<ObjectId>(c->object_count()); ++x) {
      if (!c->is_proper(x)) continue;
      const auto box = oracle::parse_box(c->object_name(x));
      REQUIRE(box);
      int dim = 0;
      for (int a = 0; a < 3; ++a) dim += box->hi[a] - box->lo[a];
      CHECK(c->rank(x) == dim);
    }
  }
}

TEST_CASE("a vertex-sharing pair of cubes fails strong unsplittability at the vertex") {
  const auto c = build_category(cube_complex_presentation({{0, 0, 0}, {1, 1, 1}}));
  const auto r = check_strongly_unsplittable(*c);
  CHECK(r.failed());
  bool at_vertex = false;
  for (const auto& w : r.witnesses) {
    at_vertex = at_vertex || w.item.find("(c1_1_1 -> universe)") != std::string::npos;
  }
  CHECK(at_vertex);
}

TEST_CASE("bases render") {
  CHECK(to_string(Basis::geometry) == "geometry");
  CHECK(to_string(Basis::enumeration) == "enumeration");
  CHECK(to_string(Basis::construction) == "construction");
}
