#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "incidence/types.hpp"

namespace incidence {

inline constexpr std::string_view kNullName = "null";
inline constexpr std::string_view kUniverseName = "universe";

struct ObjectDecl {
  std::string name;
  int rank = 0;
  OptSign sign;
};

struct ArrowDecl {
  std::string name;
  std::string source;
  std::string target;
  OptSign sign;
};

/// A path of arrow names, first-applied first ("l.s" means s after l).
using PathDecl = std::vector<std::string>;

struct RelationDecl {
  PathDecl left;
  PathDecl right;
};

/// Finite generators-and-relations description of a bounded acyclic category.
struct Presentation {
  std::vector<ObjectDecl> objects;
  std::vector<ArrowDecl> arrows;
  std::vector<RelationDecl> relations;
  bool auto_bound = true;
  bool posetal = false;

  Presentation& object(std::string name, int rank, OptSign sign = {});
  Presentation& arrow(std::string name, std::string source, std::string target,
                      OptSign sign = {});
  /// Paths written as dotted strings, e.g. relate("l.s", "lp.sp").
  Presentation& relate(std::string_view left, std::string_view right);
};

/// Splits "a.b.c" into {"a", "b", "c"}; empty components are rejected.
PathDecl parse_path(std::string_view dotted);
std::string join_path(const PathDecl& path);

/// Line-oriented category text format.
///
///   object <name> rank <int> [sign +|-]
///   arrow <name> : <src> -> <dst> [sign +|-]
///   equal <p1>.<p2>... = <q1>...
///   option posetal | option no_auto_bound
///   # comment
Presentation parse_presentation(std::istream& in);
Presentation parse_presentation(std::string_view text);

void write_presentation(std::ostream& out, const Presentation& p);
std::string to_text(const Presentation& p);

}  // namespace incidence
