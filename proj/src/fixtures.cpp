#include "incidence/fixtures.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "incidence/axioms.hpp"
#include "incidence/builder.hpp"
#include "incidence/constructions.hpp"
#include "incidence/nerve.hpp"

namespace incidence {

namespace {

const Sign kPlus = Sign::plus();
const Sign kMinus = Sign::minus();

Expectation geo(std::string property, std::string argument, std::string expected) {
  return {std::move(property), std::move(argument), std::move(expected),
          Basis::geometry};
}

Expectation counted(std::string property, std::string argument,
                    std::string expected) {
  return {std::move(property), std::move(argument), std::move(expected),
          Basis::enumeration};
}

Expectation built(std::string property, std::string argument,
                  std::string expected) {
  return {std::move(property), std::move(argument), std::move(expected),
          Basis::construction};
}

/// Checks every fixture is expected to pass.
std::vector<Expectation> sound() {
  return {built("check", "bounded_acyclic", "pass"),
          built("check", "graded", "pass"),
          geo("check", "semi_diamond", "pass")};
}

FixtureSpec signed_point() {
  FixtureSpec f{"signed_point", "a single positively oriented point", {}, sound()};
  f.presentation.object("P", 0, kPlus);
  f.expectations.push_back(built("objects", "", "3"));
  f.expectations.push_back(counted("morphisms", "", "6"));
  f.expectations.push_back(counted("nerve_counts", "", "1,0"));
  f.expectations.push_back(geo("euler", "", "1"));
  f.expectations.push_back(geo("check", "cw", "pass"));
  return f;
}

FixtureSpec segment() {
  FixtureSpec f{"segment",
                "segment L from A to B: l is the positive end, r the negative",
                {},
                sound()};
  f.presentation.object("A", 0, kPlus)
      .object("B", 0, kPlus)
      .object("L", 1)
      .arrow("l", "A", "L", kPlus)
      .arrow("r", "B", "L", kMinus);
  auto& e = f.expectations;
  e.push_back(built("objects", "", "5"));
  e.push_back(counted("morphisms", "", "14"));
  e.push_back(counted("hasse_edges", "", "5"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(counted("check", "diamond_all", "fail"));
  e.push_back(counted("witness", "diamond_all", "A -> universe"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("lower_proper_objects", "L", "2"));
  e.push_back(counted("nerve_counts", "", "3,2,0"));
  e.push_back(geo("euler", "", "1"));
  return f;
}

FixtureSpec ray() {
  FixtureSpec f{"ray", "segment with one endpoint only", {}, sound()};
  f.presentation.object("A", 0, kPlus).object("R", 1).arrow("a", "A", "R", kPlus);
  auto& e = f.expectations;
  e.push_back(built("objects", "", "4"));
  e.push_back(counted("morphisms", "", "10"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("check", "diamond_all", "fail"));
  e.push_back(geo("witness", "diamond_all", "null -> R"));
  e.push_back(counted("nerve_counts", "", "2,1,0"));
  return f;
}

FixtureSpec circle_point() {
  FixtureSpec f{"circle_point",
                "circle C covering the point P in two ways (cw +, ccw -)",
                {},
                sound()};
  f.presentation.object("P", 0, kPlus)
      .object("C", 1)
      .arrow("cw", "P", "C", kPlus)
      .arrow("ccw", "P", "C", kMinus);
  auto& e = f.expectations;
  e.push_back(built("objects", "", "4"));
  e.push_back(counted("morphisms", "", "11"));
  e.push_back(geo("hasse_edges", "", "4"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("nerve_counts", "", "2,2,0"));
  e.push_back(geo("euler", "", "0"));
  return f;
}

FixtureSpec crescent() {
  FixtureSpec f{"crescent",
                "face S between an outer circle Cout and an inner circle Cin "
                "tangent at P",
                {},
                sound()};
  f.presentation.object("P", 0, kPlus)
      .object("Cout", 1)
      .object("Cin", 1)
      .object("S", 2)
      .arrow("l", "P", "Cout", kMinus)
      .arrow("r", "P", "Cout", kPlus)
      .arrow("lp", "P", "Cin", kMinus)
      .arrow("rp", "P", "Cin", kPlus)
      .arrow("s", "Cout", "S", kPlus)
      .arrow("sp", "Cin", "S", kMinus)
      .relate("l.s", "lp.sp")
      .relate("r.s", "rp.sp");
  auto& e = f.expectations;
  e.push_back(built("objects", "", "6"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("upper_proper_objects", "P", "6"));
  e.push_back(geo("upper_clusters", "P", "2"));
  e.push_back(counted("check", "strongly_unsplittable", "fail"));
  e.push_back(counted("witness", "strongly_unsplittable", "P -> universe"));
  e.push_back(geo("check", "strongly_initial_unsplittable", "pass"));
  return f;
}

FixtureSpec cube() {
  FixtureSpec f{"cube", "cell complex of the unit cube", {}, sound()};
  f.presentation = cube_complex_presentation({{0, 0, 0}});
  auto& e = f.expectations;
  e.push_back(built("objects", "", "29"));
  e.push_back(counted("morphisms", "", "182"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(counted("check", "diamond_all", "fail"));
  e.push_back(geo("upper_proper_objects", "c0_0_0", "7"));
  e.push_back(geo("upper_clusters", "c0_0_0", "1"));
  e.push_back(geo("check", "strongly_unsplittable", "pass"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("nerve_counts", "", "27,98,120,48,0"));
  e.push_back(geo("euler", "", "1"));
  return f;
}

FixtureSpec two_cubes_shared_edge() {
  FixtureSpec f{"two_cubes_shared_edge",
                "two unit cubes glued along the edge c1_1_0-1 only",
                {},
                sound()};
  f.presentation = cube_complex_presentation({{0, 0, 0}, {1, 1, 0}});
  auto& e = f.expectations;
  e.push_back(built("objects", "", "53"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("check", "strongly_unsplittable", "fail"));
  e.push_back(geo("witness", "strongly_unsplittable", "c1_1_0-1 -> universe"));
  e.push_back(geo("check", "strongly_initial_unsplittable", "pass"));
  e.push_back(geo("upper_clusters", "c1_1_0-1", "2"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(geo("euler", "", "1"));
  return f;
}

FixtureSpec annulus() {
  FixtureSpec f{"annulus",
                "face F bounded by an outer circle Co through p and an inner "
                "circle Ci through q",
                {},
                sound()};
  f.presentation.object("p", 0, kPlus)
      .object("q", 0, kPlus)
      .object("Co", 1)
      .object("Ci", 1)
      .object("F", 2)
      .arrow("ps", "p", "Co", kMinus)
      .arrow("pe", "p", "Co", kPlus)
      .arrow("qs", "q", "Ci", kMinus)
      .arrow("qe", "q", "Ci", kPlus)
      .arrow("o", "Co", "F", kPlus)
      .arrow("i", "Ci", "F", kMinus)
      .relate("ps.o", "pe.o")
      .relate("qs.i", "qe.i");
  auto& e = f.expectations;
  e.push_back(built("objects", "", "7"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("check", "strongly_initial_unsplittable", "fail"));
  e.push_back(geo("witness", "strongly_initial_unsplittable", "null -> F"));
  e.push_back(geo("check", "cw", "fail"));
  e.push_back(geo("lower_proper_objects", "F", "4"));
  // The realization cones F over two disjoint circles, so it is contractible
  // rather than an annulus.
  e.push_back(counted("euler", "", "1"));
  return f;
}

FixtureSpec sphere_meridian() {
  FixtureSpec f{"sphere_meridian",
                "sphere S cut open along a meridian M from pole N to pole So",
                {},
                sound()};
  f.presentation.object("N", 0, kPlus)
      .object("So", 0, kPlus)
      .object("M", 1)
      .object("S", 2)
      .arrow("n", "N", "M", kMinus)
      .arrow("s", "So", "M", kPlus)
      .arrow("mL", "M", "S", kPlus)
      .arrow("mR", "M", "S", kMinus)
      .relate("n.mL", "n.mR")
      .relate("s.mL", "s.mR");
  auto& e = f.expectations;
  e.push_back(built("objects", "", "6"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("lower_proper_objects", "S", "4"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("nerve_counts", "", "4,6,4,0"));
  e.push_back(geo("euler", "", "2"));
  return f;
}

FixtureSpec torus() {
  FixtureSpec f{"torus",
                "torus from one vertex P, loops a and b, and a square face Q",
                {},
                sound()};
  f.presentation.object("P", 0, kPlus)
      .object("a", 1)
      .object("b", 1)
      .object("Q", 2)
      .arrow("a0", "P", "a", kMinus)
      .arrow("a1", "P", "a", kPlus)
      .arrow("b0", "P", "b", kMinus)
      .arrow("b1", "P", "b", kPlus)
      .arrow("abot", "a", "Q", kPlus)
      .arrow("atop", "a", "Q", kMinus)
      .arrow("bleft", "b", "Q", kMinus)
      .arrow("bright", "b", "Q", kPlus)
      .relate("a0.abot", "b0.bleft")
      .relate("a1.abot", "b0.bright")
      .relate("a0.atop", "b1.bleft")
      .relate("a1.atop", "b1.bright");
  auto& e = f.expectations;
  e.push_back(built("objects", "", "6"));
  e.push_back(geo("hasse_edges", "", "10"));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("upper_proper_objects", "P", "8"));
  e.push_back(geo("upper_clusters", "P", "1"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("nerve_counts", "", "4,12,8,0"));
  e.push_back(geo("euler", "", "0"));
  return f;
}

FixtureSpec cone() {
  FixtureSpec f{"cone",
                "cone surface S over a vertexless base circle B; the apex A "
                "lies directly on S",
                {},
                sound()};
  f.presentation.object("A", 0, kPlus)
      .object("B", 1)
      .object("S", 2)
      .arrow("apex", "A", "S")
      .arrow("base", "B", "S", kPlus);
  auto& e = f.expectations;
  e.push_back(built("objects", "", "5"));
  e.push_back(built("check", "strongly_decomposable", "fail"));
  e.push_back(built("witness", "strongly_decomposable", "A -> S"));
  e.push_back(built("check", "cw", "fail"));
  return f;
}

FixtureSpec ngon_fixture(int k) {
  FixtureSpec f{"ngon" + std::to_string(k),
                std::to_string(k) + "-gon: vertices v<i>, edges e<i>, face F",
                ngon_presentation(k),
                sound()};
  auto& e = f.expectations;
  e.push_back(built("objects", "", std::to_string(2 * k + 3)));
  e.push_back(built("hasse_edges", "", std::to_string(4 * k + 1)));
  e.push_back(geo("check", "diamond", "pass"));
  e.push_back(geo("check", "cw", "pass"));
  e.push_back(counted("nerve_counts", "",
                      std::to_string(2 * k + 1) + "," + std::to_string(4 * k) +
                          "," + std::to_string(2 * k) + ",0"));
  e.push_back(geo("euler", "", "1"));
  return f;
}

std::optional<int> ngon_size(std::string_view name) {
  std::string_view digits;
  if (name.starts_with("ngon(") && name.ends_with(")")) {
    digits = name.substr(5, name.size() - 6);
  } else if (name.starts_with("ngon")) {
    digits = name.substr(4);
  } else {
    return std::nullopt;
  }
  if (digits.empty() || digits.size() > 3 ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char ch) { return ch >= '0' && ch <= '9'; })) {
    return std::nullopt;
  }
  const int k = std::stoi(std::string(digits));
  if (k < 2) return std::nullopt;
  return k;
}

}  // namespace

std::string to_string(Basis b) {
  switch (b) {
    case Basis::geometry:
      return "geometry";
    case Basis::enumeration:
      return "enumeration";
    case Basis::construction:
      return "construction";
  }
  return "unknown";
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{
      "signed_point", "segment",  "ray",
      "ngon4",        "circle_point", "crescent",
      "cube",         "two_cubes_shared_edge", "annulus",
      "sphere_meridian", "torus",  "cone"};
  return names;
}

FixtureSpec fixture(std::string_view name) {
  static const std::map<std::string, std::function<FixtureSpec()>, std::less<>>
      catalog{{"signed_point", signed_point},
              {"segment", segment},
              {"ray", ray},
              {"circle_point", circle_point},
              {"crescent", crescent},
              {"cube", cube},
              {"two_cubes_shared_edge", two_cubes_shared_edge},
              {"annulus", annulus},
              {"sphere_meridian", sphere_meridian},
              {"torus", torus},
              {"cone", cone}};
  if (const auto it = catalog.find(name); it != catalog.end()) return it->second();
  if (const auto k = ngon_size(name)) return ngon_fixture(*k);
  throw UnknownNameError("unknown fixture '" + std::string(name) + "'");
}

Presentation ngon_presentation(int k) {
  if (k < 2) throw PreconditionError("an n-gon needs at least 2 vertices");
  Presentation p;
  p.posetal = true;
  for (int i = 0; i < k; ++i) p.object("v" + std::to_string(i), 0, kPlus);
  for (int i = 0; i < k; ++i) p.object("e" + std::to_string(i), 1);
  p.object("F", 2);
  for (int i = 0; i < k; ++i) {
    const auto e = "e" + std::to_string(i);
    const auto lo = "v" + std::to_string(i);
    const auto hi = "v" + std::to_string((i + 1) % k);
    p.arrow(lo + "_" + e, lo, e, kMinus);
    p.arrow(hi + "_" + e, hi, e, kPlus);
    p.arrow(e + "_F", e, "F", kPlus);
  }
  return p;
}

namespace {

/// Per axis: lower coordinate and whether the cell spans [lo, lo + 1].
struct Cell3 {
  std::array<int, 3> lo{};
  std::array<bool, 3> open{};

  int rank() const { return open[0] + open[1] + open[2]; }
  auto operator<=>(const Cell3&) const = default;

  std::string name() const {
    std::string out = "c";
    for (int a = 0; a < 3; ++a) {
      if (a > 0) out += '_';
      out += std::to_string(lo[a]);
      if (open[a]) out += "-" + std::to_string(lo[a] + 1);
    }
    return out;
  }
};

}  // namespace

Presentation cube_complex_presentation(const std::vector<UnitCube>& cubes) {
  std::set<Cell3> cells;
  for (const auto& c : cubes) {
    const std::array<int, 3> corner{c.x, c.y, c.z};
    for (int code = 0; code < 27; ++code) {
      Cell3 cell;
      int rest = code;
      for (int a = 0; a < 3; ++a, rest /= 3) {
        // 0: lower point, 1: upper point, 2: the interval
        const int kind = rest % 3;
        cell.lo[a] = corner[a] + (kind == 1 ? 1 : 0);
        cell.open[a] = kind == 2;
      }
      cells.insert(cell);
    }
  }
  std::vector<Cell3> ordered(cells.begin(), cells.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const Cell3& a, const Cell3& b) { return a.rank() < b.rank(); });

  Presentation p;
  p.posetal = true;
  for (const auto& cell : ordered) {
    p.object(cell.name(), cell.rank(),
             cell.rank() == 0 ? OptSign(kPlus) : OptSign());
  }
  for (const auto& cell : ordered) {
    int t = 0;
    for (int a = 0; a < 3; ++a) {
      if (!cell.open[a]) continue;
      const Sign upper = t % 2 == 0 ? kPlus : kMinus;
      ++t;
      for (int side = 0; side < 2; ++side) {
        Cell3 face = cell;
        face.open[a] = false;
        face.lo[a] = cell.lo[a] + side;
        p.arrow(face.name() + "_" + cell.name(), face.name(), cell.name(),
                side == 1 ? upper : -upper);
      }
    }
  }
  return p;
}

namespace {

ValidationReport run_check(const Category& c, const std::string& name) {
  if (name == "bounded_acyclic") return validate_bounded_acyclic(c);
  if (name == "graded") return check_graded(c);
  if (name == "semi_diamond") return check_semi_diamond(c, SignCheck::on);
  if (name == "diamond") {
    return check_diamond(c, DiamondScope::proper_only, SignCheck::on);
  }
  if (name == "diamond_all") return check_diamond(c, DiamondScope::all, SignCheck::on);
  if (name == "strongly_decomposable") return check_strongly_decomposable(c);
  if (name == "strongly_unsplittable") return check_strongly_unsplittable(c);
  if (name == "strongly_initial_unsplittable") {
    return check_strongly_initial_unsplittable(c);
  }
  if (name == "cw") return check_cw(c);
  throw UnknownNameError("unknown check '" + name + "'");
}

/// "(src -> dst)" suffix of a describe_morphism rendering.
std::string endpoints(const std::string& item) {
  const auto open = item.rfind(" (");
  if (open == std::string::npos || item.back() != ')') return item;
  return item.substr(open + 2, item.size() - open - 3);
}

}  // namespace

std::string measure(const CategoryPtr& cp, const Expectation& e) {
  const Category& c = *cp;
  const auto& p = e.property;
  if (p == "objects") return std::to_string(c.object_count());
  if (p == "morphisms") return std::to_string(c.morphism_count());
  if (p == "hasse_edges") return std::to_string(hasse(c).edges.size());
  if (p == "check") return to_string(run_check(c, e.argument).verdict);
  if (p == "witness") {
    std::string out;
    for (const auto& w : run_check(c, e.argument).witnesses) {
      if (!out.empty()) out += ", ";
      out += endpoints(w.item);
    }
    return out;
  }
  if (p == "upper_proper_objects" || p == "upper_clusters") {
    const auto up = upper_category(cp, c.object_id(e.argument));
    if (p == "upper_clusters") {
      return std::to_string(linked_clusters(*up.category).size());
    }
    return std::to_string(up.category->object_count() - 2);
  }
  if (p == "lower_proper_objects") {
    const auto low = lower_category(cp, c.object_id(e.argument));
    return std::to_string(low.category->object_count() - 2);
  }
  if (p == "nerve_counts" || p == "euler") {
    const auto nv = nerve_of(cp);
    if (p == "euler") return std::to_string(euler_characteristic(realize(nv)));
    std::string out;
    for (int k = 1; k <= nv.max_level(); ++k) {
      if (k > 1) out += ',';
      out += std::to_string(nv.nondegenerate_count(k));
    }
    return out;
  }
  throw UnknownNameError("unknown expectation property '" + p + "'");
}

std::vector<ExpectationOutcome> evaluate(const FixtureSpec& spec) {
  const auto c = build_category(spec.presentation);
  std::vector<ExpectationOutcome> out;
  for (const auto& e : spec.expectations) {
    ExpectationOutcome o{e, measure(c, e), false};
    if (e.property == "witness") {
      std::istringstream items(o.actual);
      std::string item;
      while (std::getline(items, item, ',')) {
        if (item.starts_with(' ')) item.erase(0, 1);
        if (item == e.expected) o.ok = true;
      }
    } else {
      o.ok = o.actual == e.expected;
    }
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace incidence
