#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "incidence/category.hpp"
#include "incidence/constructions.hpp"
#include "incidence/report.hpp"

namespace incidence {

/// Composable morphisms, first-applied first. An n-chain has n intermediate
/// objects and n + 1 factors.
struct Chain {
  std::vector<MorphismId> factors;

  int n() const { return static_cast<int>(factors.size()) - 1; }
  bool operator==(const Chain&) const = default;
  auto operator<=>(const Chain&) const = default;
};

/// Composite of the factors (recomputed, never stored).
MorphismId chain_host(const Category& c, const Chain& ch);
bool is_degenerate(const Category& c, const Chain& ch);

/// All n-chains composing to `host`, ordered lexicographically by factor ids.
std::vector<Chain> enumerate_chains(const Category& c, MorphismId host, int n,
                                    bool include_degenerate = false);

/// Face map d_i, 1 <= i <= n: skips the i-th intermediate object counted from
/// the target end by composing the two factors that meet there.
Chain subchain(const Category& c, const Chain& ch, int i);

/// Degeneracy s_i, 1 <= i <= n: inserts the identity of the i-th
/// intermediate object counted from the target end.
Chain degeneracy(const Category& c, const Chain& ch, int i);

/// Levels of chains with materialized face and degeneracy tables.
///
/// Level k holds chains with k + offset intermediate objects; offset is 0 for
/// a full nerve and 1 for a nerve rebuilt by upper_via_nerve. Faces are
/// d_1..d_k and degeneracies s_1..s_k on level k, as indices into the
/// neighbouring level.
struct Nerve {
  CategoryPtr category;
  int offset = 0;
  std::vector<std::vector<Chain>> levels;
  /// faces[k][j][i - 1]: index of d_i(levels[k][j]) in levels[k - 1].
  std::vector<std::vector<std::vector<std::size_t>>> faces;
  /// degeneracies[k][j][i - 1]: index of s_i(levels[k][j]) in levels[k + 1];
  /// empty on the top level.
  std::vector<std::vector<std::vector<std::size_t>>> degeneracies;

  int max_level() const { return static_cast<int>(levels.size()) - 1; }
  std::optional<std::size_t> find(int level, const Chain& ch) const;
  std::size_t nondegenerate_count(int level) const;
};

/// Difference between the ranks of the terminal and the initial object.
int rank_spread(const Category& c);

/// Full nerve of the unique initial -> terminal morphism, levels 0..max_level
/// (default: the rank spread).
Nerve nerve_of(const CategoryPtr& c, std::optional<int> max_level = {});

/// Level k is the set of chains of N_{k+1} sent to F by d_1 applied k times;
/// maps are the restricted d_1..d_k and s_1..s_k. F must lie in level 1 of a
/// full nerve.
Nerve upper_via_nerve(const Nerve& nv, const Chain& f);

/// Checks that (g_1, ..., g_{k+1}) -> (f_0, down(g_1), ..., down(g_{k+1}))
/// is a level-wise bijection from `upper_nerve` (the nerve of `upper`) onto
/// `via`, commuting with every face and degeneracy map. f_0 is the first
/// factor of the level-0 chain of `via`.
ValidationReport check_upper_nerve_match(const Nerve& via,
                                         const MarkedCategory& upper,
                                         const Nerve& upper_nerve);

/// Exhaustive simplicial identities over the materialized index ranges.
ValidationReport check_simplicial_identities(const Nerve& nv);

struct Incidence {
  std::size_t face = 0;
  int sign = 1;
};

struct Cell {
  std::vector<MorphismId> factors;
  std::vector<Incidence> boundary;
};

/// One (n - 1)-simplex per non-degenerate n-chain; cells[n] holds dimension
/// n - 1, so cells[0] is the single null face.
struct OrientedComplex {
  std::vector<std::vector<Cell>> cells;

  /// Number of simplices of dimension d (d >= -1).
  std::size_t count(int d) const;
  int top_dimension() const { return static_cast<int>(cells.size()) - 2; }
};

/// Boundary of a simplex lists d_1..d_n with signs +1, -1, +1, ...
OrientedComplex realize(const Nerve& nv);

ValidationReport boundary_squared_is_zero(const OrientedComplex& oc);

/// Alternating sum of simplex counts over dimensions d >= 0.
int euler_characteristic(const OrientedComplex& oc);

/// {"format":"nerve","version":1,...} with chains as factor-id lists.
std::string to_json(const Nerve& nv);
/// {"format":"oriented-complex","version":1,...}.
std::string to_json(const OrientedComplex& oc, const Category& c);

}  // namespace incidence
