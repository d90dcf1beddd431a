#pragma once

#include <string>

#include "incidence/category.hpp"
#include "incidence/presentation.hpp"

namespace incidence {

/// Presentation that rebuilds a category up to isomorphism, with auto_bound
/// off. Generators are the Hasse edges ('.' in names becomes '_'); relations
/// tie every Hasse path of each morphism to its shortlex-least one. The
/// initial and terminal objects are renamed to the reserved bound names;
/// proper objects keep their names, ranks and declared signs.
Presentation to_presentation(const Category& c);

/// to_presentation rendered in the category text format. Applying it to the
/// rebuilt category gives the same text back.
std::string to_category_text(const Category& c);

/// Graphviz rendering of the Hasse multigraph: one node per object grouped by
/// rank, one edge per nondecomposable morphism labelled with its name and
/// sign.
std::string to_dot(const Category& c);

}  // namespace incidence
