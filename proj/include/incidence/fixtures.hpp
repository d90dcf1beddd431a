#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "incidence/category.hpp"
#include "incidence/presentation.hpp"

namespace incidence {

/// Where an expected value comes from.
enum class Basis {
  /// Read off the geometric example the fixture models.
  geometry,
  /// Counted by exhaustive enumeration on the built category.
  enumeration,
  /// Forced by how the fixture is assembled.
  construction,
};

std::string to_string(Basis b);

/// A machine-checkable claim about a fixture.
///
/// property / argument / expected:
///   objects, morphisms, hasse_edges           -            count
///   check                 validator name      pass | fail
///   witness               validator name      "<source> -> <target>"
///   upper_proper_objects  object name         count
///   upper_clusters        object name         count
///   lower_proper_objects  object name         count
///   nerve_counts          -                   "n1,n2,..." non-degenerate
///   euler                 -                   integer
///
/// Validator names: bounded_acyclic, graded, semi_diamond, diamond (proper
/// only), diamond_all, strongly_decomposable, strongly_unsplittable,
/// strongly_initial_unsplittable, cw.
struct Expectation {
  std::string property;
  std::string argument;
  std::string expected;
  Basis basis = Basis::geometry;
};

struct FixtureSpec {
  std::string name;
  std::string description;
  Presentation presentation;
  std::vector<Expectation> expectations;
};

/// Catalog names in a fixed order.
const std::vector<std::string>& fixture_names();

/// Catalog entry by name. Besides the catalog, "ngon<k>" builds a k-gon for
/// any k >= 2. Throws UnknownNameError.
FixtureSpec fixture(std::string_view name);

/// k vertices, k edges, one face; posetal.
Presentation ngon_presentation(int k);

/// A box [lo, lo + 1]^3 given by its lower corner.
struct UnitCube {
  int x = 0;
  int y = 0;
  int z = 0;
};

/// Cell complex of a union of unit cubes with cubical boundary signs; posetal.
/// Cells are named c<x>_<y>_<z> with an interval written "a-b".
Presentation cube_complex_presentation(const std::vector<UnitCube>& cubes);

/// Value of one expectation's property on a built category, rendered as the
/// expected string would be (for witness: all witnesses, comma separated).
std::string measure(const CategoryPtr& c, const Expectation& e);

struct ExpectationOutcome {
  Expectation expectation;
  std::string actual;
  bool ok = false;
};

std::vector<ExpectationOutcome> evaluate(const FixtureSpec& spec);

}  // namespace incidence
