#include "incidence/presentation.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace incidence {

Presentation& Presentation::object(std::string name, int rank, OptSign sign) {
  objects.push_back({std::move(name), rank, sign});
  return *this;
}

Presentation& Presentation::arrow(std::string name, std::string source,
                                  std::string target, OptSign sign) {
  arrows.push_back({std::move(name), std::move(source), std::move(target), sign});
  return *this;
}

Presentation& Presentation::relate(std::string_view left,
                                   std::string_view right) {
  relations.push_back({parse_path(left), parse_path(right)});
  return *this;
}

PathDecl parse_path(std::string_view dotted) {
  PathDecl out;
  std::size_t start = 0;
  while (true) {
    const auto dot = dotted.find('.', start);
    const auto piece = dotted.substr(
        start, dot == std::string_view::npos ? std::string_view::npos
                                             : dot - start);
    if (piece.empty()) {
      throw PresentationError("empty component in path '" +
                              std::string(dotted) + "'");
    }
    out.emplace_back(piece);
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return out;
}

std::string join_path(const PathDecl& path) {
  std::string out;
  for (const auto& step : path) {
    if (!out.empty()) out += '.';
    out += step;
  }
  return out;
}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

OptSign parse_sign_clause(const std::vector<std::string>& toks,
                          std::size_t at, int line) {
  if (toks.size() == at) return std::nullopt;
  if (toks.size() != at + 2 || toks[at] != "sign") {
    throw ParseError(line, "expected optional 'sign +|-' at end of line");
  }
  if (toks[at + 1] == "+") return Sign::plus();
  if (toks[at + 1] == "-") return Sign::minus();
  throw ParseError(line, "sign must be '+' or '-', got '" + toks[at + 1] + "'");
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + s + "'");
  }
}

void write_sign(std::ostream& out, const OptSign& s) {
  if (s) out << " sign " << s->symbol();
}

}  // namespace

Presentation parse_presentation(std::istream& in) {
  Presentation p;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const auto& kw = toks[0];
    if (kw == "object") {
      if (toks.size() < 4 || toks[2] != "rank") {
        throw ParseError(line, "expected 'object <name> rank <int>'");
      }
      p.objects.push_back(
          {toks[1], parse_int(toks[3], line), parse_sign_clause(toks, 4, line)});
    } else if (kw == "arrow") {
      if (toks.size() < 6 || toks[2] != ":" || toks[4] != "->") {
        throw ParseError(line, "expected 'arrow <name> : <src> -> <dst>'");
      }
      if (toks[1].find('.') != std::string::npos) {
        throw ParseError(line, "arrow name '" + toks[1] + "' contains '.'");
      }
      p.arrows.push_back(
          {toks[1], toks[3], toks[5], parse_sign_clause(toks, 6, line)});
    } else if (kw == "equal") {
      if (toks.size() != 4 || toks[2] != "=") {
        throw ParseError(line, "expected 'equal <path> = <path>'");
      }
      try {
        p.relations.push_back({parse_path(toks[1]), parse_path(toks[3])});
      } catch (const PresentationError& e) {
        throw ParseError(line, e.what());
      }
    } else if (kw == "option") {
      if (toks.size() != 2) throw ParseError(line, "expected 'option <name>'");
      if (toks[1] == "posetal") {
        p.posetal = true;
      } else if (toks[1] == "no_auto_bound") {
        p.auto_bound = false;
      } else {
        throw ParseError(line, "unknown option '" + toks[1] + "'");
      }
    } else {
      throw ParseError(line, "unknown directive '" + kw + "'");
    }
  }
  return p;
}

Presentation parse_presentation(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_presentation(in);
}

void write_presentation(std::ostream& out, const Presentation& p) {
  if (p.posetal) out << "option posetal\n";
  if (!p.auto_bound) out << "option no_auto_bound\n";
  for (const auto& o : p.objects) {
    out << "object " << o.name << " rank " << o.rank;
    write_sign(out, o.sign);
    out << '\n';
  }
  for (const auto& a : p.arrows) {
    out << "arrow " << a.name << " : " << a.source << " -> " << a.target;
    write_sign(out, a.sign);
    out << '\n';
  }
  for (const auto& r : p.relations) {
    out << "equal " << join_path(r.left) << " = " << join_path(r.right)
        << '\n';
  }
}

std::string to_text(const Presentation& p) {
  std::ostringstream ss;
  write_presentation(ss, p);
  return ss.str();
}

}  // namespace incidence
