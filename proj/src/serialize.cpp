#include "incidence/serialize.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

namespace incidence {

namespace {

using ArrowPath = std::vector<int>;

bool shortlex_less(const ArrowPath& a, const ArrowPath& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::string object_label(const Category& c, ObjectId x) {
  if (x == c.initial()) return std::string(kNullName);
  if (x == c.terminal()) return std::string(kUniverseName);
  return c.object_name(x);
}

std::string render(const ArrowPath& path, const std::vector<std::string>& names) {
  std::string out;
  for (int a : path) {
    if (!out.empty()) out += '.';
    out += names[a];
  }
  return out;
}

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

Presentation to_presentation(const Category& c) {
  if (c.initial() == c.terminal()) {
    throw PreconditionError(
        "a single-object category has no presentation with distinct bounds");
  }
  Presentation p;
  p.auto_bound = false;
  std::vector<ObjectId> order{c.initial()};
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    if (c.is_proper(x)) order.push_back(x);
  }
  order.push_back(c.terminal());
  for (ObjectId x : order) {
    p.object(object_label(c, x), c.rank(x), c.object(x).sign);
  }

  auto edges = hasse(c).edges;
  std::sort(edges.begin(), edges.end(), [&](MorphismId a, MorphismId b) {
    return std::tuple(c.source(a), c.target(a), a) <
           std::tuple(c.source(b), c.target(b), b);
  });
  std::vector<int> arrow_of(c.morphism_count(), -1);
  std::vector<std::string> names;
  std::set<std::string> used;
  for (MorphismId e : edges) {
    std::string name = c.name(e);
    std::replace(name.begin(), name.end(), '.', '_');
    if (name.empty()) name = "m" + std::to_string(e);
    std::string candidate = name;
    for (int k = 2; used.count(candidate); ++k) {
      candidate = name + "_" + std::to_string(k);
    }
    used.insert(candidate);
    arrow_of[e] = static_cast<int>(names.size());
    names.push_back(candidate);
    p.arrow(candidate, object_label(c, c.source(e)), object_label(c, c.target(e)),
            c.sign(e));
  }

  // Shortlex-least Hasse path of every morphism, settled by rank difference.
  std::vector<MorphismId> by_span(c.morphism_count());
  std::iota(by_span.begin(), by_span.end(), 0);
  std::stable_sort(by_span.begin(), by_span.end(), [&](MorphismId a, MorphismId b) {
    return c.rank_difference(a) < c.rank_difference(b);
  });
  std::vector<std::optional<ArrowPath>> canon(c.morphism_count());
  std::vector<std::vector<std::pair<MorphismId, MorphismId>>> splits(
      c.morphism_count());
  for (MorphismId m : by_span) {
    if (c.is_identity(m)) continue;
    if (arrow_of[m] >= 0) {
      canon[m] = ArrowPath{arrow_of[m]};
      continue;
    }
    for (const auto& [g, h] : proper_factorizations(c, m)) {
      if (arrow_of[h] < 0) continue;
      splits[m].emplace_back(g, h);
      if (!canon[g]) continue;
      auto path = *canon[g];
      path.push_back(arrow_of[h]);
      if (!canon[m] || shortlex_less(path, *canon[m])) canon[m] = std::move(path);
    }
    if (!canon[m]) {
      throw PreconditionError("morphism " + c.name(m) +
                              " is not a composite of Hasse edges");
    }
  }

  std::set<std::string> lines;
  std::vector<std::pair<std::string, std::string>> relations;
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    for (const auto& [g, h] : splits[m]) {
      auto path = *canon[g];
      path.push_back(arrow_of[h]);
      if (path == *canon[m]) continue;
      const auto left = render(*canon[m], names);
      const auto right = render(path, names);
      if (lines.insert(left + " = " + right).second) relations.emplace_back(left, right);
    }
  }
  std::sort(relations.begin(), relations.end(), [](const auto& a, const auto& b) {
    return a.first + " = " + a.second < b.first + " = " + b.second;
  });
  for (const auto& [left, right] : relations) p.relate(left, right);
  return p;
}

std::string to_category_text(const Category& c) { return to_text(to_presentation(c)); }

std::string to_dot(const Category& c) {
  std::ostringstream out;
  out << "digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n";
  std::map<int, std::vector<ObjectId>> by_rank;
  for (ObjectId x = 0; x < static_cast<ObjectId>(c.object_count()); ++x) {
    by_rank[c.rank(x)].push_back(x);
  }
  for (const auto& [rank, objects] : by_rank) {
    out << "  subgraph rank_" << (rank < 0 ? "m" : "") << std::abs(rank)
        << " {\n    rank=same;\n";
    for (ObjectId x : objects) {
      out << "    n" << x << " [label=" << quoted(c.object_name(x))
          << "];\n";
    }
    out << "  }\n";
  }
  for (MorphismId e : hasse(c).edges) {
    std::string label = c.name(e);
    if (const auto s = c.sign(e)) label += std::string(" (") + s->symbol() + ")";
    out << "  n" << c.source(e) << " -> n" << c.target(e)
        << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace incidence
