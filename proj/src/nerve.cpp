#include "incidence/nerve.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace incidence {

namespace {

void require_index(const Chain& ch, int i, const char* op) {
  if (i < 1 || i > ch.n()) {
    throw PreconditionError(std::string(op) + " index " + std::to_string(i) +
                            " outside 1.." + std::to_string(ch.n()));
  }
}

/// Splits the last factor of every chain in `level` into two.
std::vector<Chain> refine(const Category& c, const std::vector<Chain>& level,
                          bool include_degenerate) {
  std::vector<Chain> next;
  for (const auto& ch : level) {
    const auto last = ch.factors.back();
    const auto parts = include_degenerate ? factorizations(c, last)
                                          : proper_factorizations(c, last);
    for (const auto& [first, second] : parts) {
      Chain longer;
      longer.factors.assign(ch.factors.begin(), ch.factors.end() - 1);
      longer.factors.push_back(first);
      longer.factors.push_back(second);
      next.push_back(std::move(longer));
    }
  }
  std::sort(next.begin(), next.end());
  return next;
}

using ChainIndex = std::map<std::vector<MorphismId>, std::size_t>;

ChainIndex index_level(const std::vector<Chain>& level) {
  ChainIndex idx;
  for (std::size_t j = 0; j < level.size(); ++j) idx.emplace(level[j].factors, j);
  return idx;
}

/// Fills faces/degeneracies of a nerve whose levels are already set.
void materialize_maps(Nerve& nv) {
  const Category& c = *nv.category;
  std::vector<ChainIndex> idx;
  for (const auto& level : nv.levels) idx.push_back(index_level(level));
  const int top = nv.max_level();
  nv.faces.assign(nv.levels.size(), {});
  nv.degeneracies.assign(nv.levels.size(), {});
  for (int k = 0; k <= top; ++k) {
    for (const auto& ch : nv.levels[k]) {
      std::vector<std::size_t> f;
      std::vector<std::size_t> s;
      for (int i = 1; i <= k; ++i) {
        f.push_back(idx[k - 1].at(subchain(c, ch, i).factors));
        if (k < top) s.push_back(idx[k + 1].at(degeneracy(c, ch, i).factors));
      }
      nv.faces[k].push_back(std::move(f));
      if (k < top) nv.degeneracies[k].push_back(std::move(s));
    }
  }
}

}  // namespace

MorphismId chain_host(const Category& c, const Chain& ch) {
  if (ch.factors.empty()) throw PreconditionError("empty chain");
  return c.compose_path(ch.factors);
}

bool is_degenerate(const Category& c, const Chain& ch) {
  return std::any_of(ch.factors.begin(), ch.factors.end(),
                     [&](MorphismId m) { return c.is_identity(m); });
}

std::vector<Chain> enumerate_chains(const Category& c, MorphismId host, int n,
                                    bool include_degenerate) {
  if (host < 0 || host >= static_cast<MorphismId>(c.morphism_count())) {
    throw UnknownNameError("unknown morphism id " + std::to_string(host));
  }
  if (n < 0) throw PreconditionError("chain level must be non-negative");
  std::vector<Chain> level{Chain{{host}}};
  if (!include_degenerate && n > 0 && c.is_identity(host)) return {};
  for (int k = 0; k < n; ++k) level = refine(c, level, include_degenerate);
  return level;
}

Chain subchain(const Category& c, const Chain& ch, int i) {
  require_index(ch, i, "face");
  const auto n = ch.n();
  const auto lo = static_cast<std::size_t>(n - i);
  Chain out;
  for (std::size_t k = 0; k < ch.factors.size(); ++k) {
    if (k == lo) {
      out.factors.push_back(c.compose(ch.factors[k + 1], ch.factors[k]));
      ++k;
    } else {
      out.factors.push_back(ch.factors[k]);
    }
  }
  return out;
}

Chain degeneracy(const Category& c, const Chain& ch, int i) {
  require_index(ch, i, "degeneracy");
  const auto at = static_cast<std::size_t>(ch.n() + 1 - i);
  Chain out = ch;
  const auto object = c.source(ch.factors[at]);
  out.factors.insert(out.factors.begin() + static_cast<std::ptrdiff_t>(at),
                     c.identity(object));
  return out;
}

std::optional<std::size_t> Nerve::find(int level, const Chain& ch) const {
  if (level < 0 || level > max_level()) return std::nullopt;
  const auto& chains = levels[level];
  const auto it = std::lower_bound(chains.begin(), chains.end(), ch);
  if (it == chains.end() || *it != ch) return std::nullopt;
  return static_cast<std::size_t>(it - chains.begin());
}

std::size_t Nerve::nondegenerate_count(int level) const {
  if (level < 0 || level > max_level()) return 0;
  return static_cast<std::size_t>(
      std::count_if(levels[level].begin(), levels[level].end(),
                    [&](const Chain& ch) { return !is_degenerate(*category, ch); }));
}

int rank_spread(const Category& c) {
  return c.rank(c.terminal()) - c.rank(c.initial());
}

Nerve nerve_of(const CategoryPtr& cp, std::optional<int> max_level) {
  const Category& c = *cp;
  const int top = max_level.value_or(rank_spread(c));
  if (top < 0) throw PreconditionError("max level must be non-negative");
  Nerve nv;
  nv.category = cp;
  const auto host = c.initial_morphism(c.terminal());
  nv.levels.push_back({Chain{{host}}});
  for (int k = 1; k <= top; ++k) {
    nv.levels.push_back(refine(c, nv.levels.back(), true));
  }
  materialize_maps(nv);
  return nv;
}

Nerve upper_via_nerve(const Nerve& nv, const Chain& f) {
  if (nv.offset != 0) throw PreconditionError("expected a full nerve");
  if (f.n() != 1 || !nv.find(1, f)) {
    throw PreconditionError("upper_via_nerve expects a 1-chain of the nerve");
  }
  Nerve up;
  up.category = nv.category;
  up.offset = 1;
  // d_1 applied k times merges every factor after the first, so the preimage
  // is exactly the chains that start with F's first factor.
  for (int k = 0; k + 1 <= nv.max_level(); ++k) {
    std::vector<Chain> level;
    for (const auto& ch : nv.levels[k + 1]) {
      if (ch.factors.front() == f.factors.front()) level.push_back(ch);
    }
    up.levels.push_back(std::move(level));
  }
  materialize_maps(up);
  return up;
}

ValidationReport check_upper_nerve_match(const Nerve& via,
                                         const MarkedCategory& upper,
                                         const Nerve& upper_nerve) {
  auto r = make_report("upper_nerve_match");
  if (via.levels.empty() || via.levels[0].empty()) {
    r.fail("level 0", "nerve has no base chain");
    return r;
  }
  if (via.max_level() != upper_nerve.max_level()) {
    r.fail("levels", "level counts differ: " + std::to_string(via.max_level()) +
                         " vs " + std::to_string(upper_nerve.max_level()));
    return r;
  }
  const auto first = via.levels[0].front().factors.front();
  const int top = via.max_level();
  std::vector<std::vector<std::size_t>> image(top + 1);
  for (int k = 0; k <= top; ++k) {
    const auto& chains = upper_nerve.levels[k];
    if (chains.size() != via.levels[k].size()) {
      r.fail("level " + std::to_string(k),
             std::to_string(chains.size()) + " chains vs " +
                 std::to_string(via.levels[k].size()));
      return r;
    }
    std::vector<bool> hit(chains.size(), false);
    for (std::size_t j = 0; j < chains.size(); ++j) {
      Chain mapped{{first}};
      for (auto g : chains[j].factors) mapped.factors.push_back(upper.underlying[g]);
      const auto at = via.find(k, mapped);
      if (!at || hit[*at]) {
        r.fail("level " + std::to_string(k) + " chain " + std::to_string(j),
               at ? "image hit twice" : "image missing");
        return r;
      }
      hit[*at] = true;
      image[k].push_back(*at);
    }
  }
  for (int k = 0; k <= top; ++k) {
    for (std::size_t j = 0; j < image[k].size(); ++j) {
      for (int i = 1; i <= k; ++i) {
        const auto down = upper_nerve.faces[k][j][i - 1];
        if (image[k - 1][down] != via.faces[k][image[k][j]][i - 1]) {
          r.fail("level " + std::to_string(k) + " chain " + std::to_string(j),
                 "d_" + std::to_string(i) + " does not commute");
        }
        if (k < top) {
          const auto up = upper_nerve.degeneracies[k][j][i - 1];
          if (image[k + 1][up] != via.degeneracies[k][image[k][j]][i - 1]) {
            r.fail("level " + std::to_string(k) + " chain " + std::to_string(j),
                   "s_" + std::to_string(i) + " does not commute");
          }
        }
      }
    }
  }
  return r;
}

ValidationReport check_simplicial_identities(const Nerve& nv) {
  auto r = make_report("simplicial_identities");
  const int top = nv.max_level();
  auto d = [&](int k, std::size_t j, int i) { return nv.faces[k][j][i - 1]; };
  auto s = [&](int k, std::size_t j, int i) { return nv.degeneracies[k][j][i - 1]; };
  auto fail = [&](int k, std::size_t j, const std::string& what) {
    r.fail("level " + std::to_string(k) + " chain " + std::to_string(j), what);
  };
  for (int k = 0; k <= top; ++k) {
    for (std::size_t j = 0; j < nv.levels[k].size(); ++j) {
      for (int jj = 1; jj <= k; ++jj) {
        for (int i = 1; i < jj; ++i) {
          if (d(k - 1, d(k, j, jj), i) != d(k - 1, d(k, j, i), jj - 1)) {
            fail(k, j, "d_i d_j != d_{j-1} d_i");
          }
        }
      }
      if (k == top) continue;
      for (int jj = 1; jj <= k; ++jj) {
        const auto sj = s(k, j, jj);
        for (int i = 1; i <= k + 1; ++i) {
          const auto lhs = d(k + 1, sj, i);
          std::size_t rhs = j;
          if (i < jj) {
            rhs = s(k - 1, d(k, j, i), jj - 1);
          } else if (i > jj + 1) {
            rhs = s(k - 1, d(k, j, i - 1), jj);
          }
          if (lhs != rhs) fail(k, j, "mixed face/degeneracy identity");
        }
        if (k + 1 == top) continue;
        for (int i = 1; i <= jj; ++i) {
          if (s(k + 1, sj, i) != s(k + 1, s(k, j, i), jj + 1)) {
            fail(k, j, "s_i s_j != s_{j+1} s_i");
          }
        }
      }
    }
  }
  return r;
}

std::size_t OrientedComplex::count(int d) const {
  const int level = d + 1;
  if (level < 0 || level >= static_cast<int>(cells.size())) return 0;
  return cells[level].size();
}

OrientedComplex realize(const Nerve& nv) {
  const Category& c = *nv.category;
  OrientedComplex oc;
  // position of each non-degenerate chain of a level among that level's cells
  std::vector<std::vector<std::size_t>> cell_of(nv.levels.size());
  for (int k = 0; k <= nv.max_level(); ++k) {
    std::vector<Cell> level;
    cell_of[k].assign(nv.levels[k].size(), 0);
    for (std::size_t j = 0; j < nv.levels[k].size(); ++j) {
      const auto& ch = nv.levels[k][j];
      if (is_degenerate(c, ch)) continue;
      cell_of[k][j] = level.size();
      Cell cell{ch.factors, {}};
      for (int i = 1; i <= k; ++i) {
        const auto face = nv.faces[k][j][i - 1];
        cell.boundary.push_back({cell_of[k - 1][face], i % 2 == 1 ? 1 : -1});
      }
      level.push_back(std::move(cell));
    }
    if (level.empty() && k > 0) break;
    oc.cells.push_back(std::move(level));
  }
  return oc;
}

ValidationReport boundary_squared_is_zero(const OrientedComplex& oc) {
  auto r = make_report("boundary_squared_zero");
  for (std::size_t k = 2; k < oc.cells.size(); ++k) {
    for (std::size_t j = 0; j < oc.cells[k].size(); ++j) {
      std::map<std::size_t, int> total;
      for (const auto& [face, sign] : oc.cells[k][j].boundary) {
        for (const auto& [inner, inner_sign] : oc.cells[k - 1][face].boundary) {
          total[inner] += sign * inner_sign;
        }
      }
      for (const auto& [inner, coeff] : total) {
        if (coeff != 0) {
          r.fail("dimension " + std::to_string(static_cast<int>(k) - 1) +
                     " simplex " + std::to_string(j),
                 "coefficient " + std::to_string(coeff) + " on face " +
                     std::to_string(inner) + " of dimension " +
                     std::to_string(static_cast<int>(k) - 3));
        }
      }
    }
  }
  return r;
}

int euler_characteristic(const OrientedComplex& oc) {
  int chi = 0;
  for (int d = 0; d <= oc.top_dimension(); ++d) {
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<int>(oc.count(d));
  }
  return chi;
}

namespace {

nlohmann::json morphism_table(const Category& c) {
  auto names = nlohmann::json::array();
  for (MorphismId m = 0; m < static_cast<MorphismId>(c.morphism_count()); ++m) {
    names.push_back(c.name(m));
  }
  return names;
}

}  // namespace

std::string to_json(const Nerve& nv) {
  const Category& c = *nv.category;
  nlohmann::json doc;
  doc["format"] = "nerve";
  doc["version"] = 1;
  doc["offset"] = nv.offset;
  doc["morphisms"] = morphism_table(c);
  doc["levels"] = nlohmann::json::array();
  for (int k = 0; k <= nv.max_level(); ++k) {
    nlohmann::json level;
    level["level"] = k;
    level["chains"] = nlohmann::json::array();
    for (std::size_t j = 0; j < nv.levels[k].size(); ++j) {
      nlohmann::json ch;
      ch["factors"] = nv.levels[k][j].factors;
      ch["degenerate"] = is_degenerate(c, nv.levels[k][j]);
      ch["faces"] = nv.faces[k][j];
      ch["degeneracies"] = k < nv.max_level() ? nlohmann::json(nv.degeneracies[k][j])
                                              : nlohmann::json::array();
      level["chains"].push_back(std::move(ch));
    }
    level["nondegenerate"] = nv.nondegenerate_count(k);
    doc["levels"].push_back(std::move(level));
  }
  return doc.dump(2) + "\n";
}

std::string to_json(const OrientedComplex& oc, const Category& c) {
  nlohmann::json doc;
  doc["format"] = "oriented-complex";
  doc["version"] = 1;
  doc["morphisms"] = morphism_table(c);
  doc["dimensions"] = nlohmann::json::array();
  for (std::size_t k = 0; k < oc.cells.size(); ++k) {
    nlohmann::json dim;
    dim["dimension"] = static_cast<int>(k) - 1;
    dim["simplices"] = nlohmann::json::array();
    for (const auto& cell : oc.cells[k]) {
      nlohmann::json s;
      s["chain"] = cell.factors;
      s["boundary"] = nlohmann::json::array();
      for (const auto& [face, sign] : cell.boundary) {
        s["boundary"].push_back({face, sign});
      }
      dim["simplices"].push_back(std::move(s));
    }
    doc["dimensions"].push_back(std::move(dim));
  }
  doc["euler_characteristic"] = euler_characteristic(oc);
  return doc.dump(2) + "\n";
}

}  // namespace incidence
