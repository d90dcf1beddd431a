#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "incidence/axioms.hpp"
#include "incidence/builder.hpp"
#include "incidence/constructions.hpp"
#include "incidence/fixtures.hpp"
#include "incidence/isomorphism.hpp"
#include "incidence/nerve.hpp"
#include "incidence/serialize.hpp"

namespace incidence::cli {

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open '" + path + "'");
  buf << file.rdbuf();
  if (file.bad()) throw IoError("cannot read '" + path + "'");
  return buf.str();
}

CategoryPtr load(const std::string& path, std::istream& in) {
  return build_category(parse_presentation(read_input(path, in)));
}

/// Writes through a sibling temporary file so readers never see a partial
/// result.
void write_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot write '" + tmp + "'");
    file << text;
    file.flush();
    if (!file) throw IoError("cannot write '" + tmp + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot rename '" + tmp + "' to '" + path + "'");
}

struct Sink {
  std::string path;
  std::ostream& out;

  void emit(const std::string& text) const {
    if (path.empty() || path == "-") {
      out << text;
    } else {
      write_file(path, text);
    }
  }
};

ValidationReport named_check(const Category& c, const std::string& name,
                             DiamondScope scope, SignCheck signs) {
  if (name == "bounded_acyclic") return validate_bounded_acyclic(c);
  if (name == "graded") return check_graded(c);
  if (name == "semi_diamond") return check_semi_diamond(c, signs);
  if (name == "diamond") return check_diamond(c, scope, signs);
  if (name == "strongly_decomposable") return check_strongly_decomposable(c);
  if (name == "strongly_unsplittable") return check_strongly_unsplittable(c);
  if (name == "strongly_initial_unsplittable") {
    return check_strongly_initial_unsplittable(c);
  }
  if (name == "cw") return check_cw(c);
  throw UnknownNameError("unknown check '" + name + "'");
}

std::string render(const ValidationReport& r, const std::string& format) {
  return format == "json" ? to_json(r) : to_text(r);
}

MorphismId pick_morphism(const Category& c, const std::string& name,
                         const std::string& initial_of,
                         const std::string& terminal_of) {
  const int given = !name.empty() + !initial_of.empty() + !terminal_of.empty();
  if (given != 1) {
    throw CLI::ValidationError(
        "give exactly one of --morphism, --initial-of, --terminal-of");
  }
  if (!name.empty()) return c.morphism_id(name);
  if (!initial_of.empty()) return c.initial_morphism(c.object_id(initial_of));
  return c.terminal_morphism(c.object_id(terminal_of));
}

std::string complex_summary(const OrientedComplex& oc) {
  std::ostringstream s;
  for (int d = 0; d <= oc.top_dimension(); ++d) {
    s << "dimension " << d << ": " << oc.count(d) << '\n';
  }
  s << "euler_characteristic: " << euler_characteristic(oc) << '\n';
  s << "boundary_squared_zero: "
    << to_string(boundary_squared_is_zero(oc).verdict) << '\n';
  return s.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite graded bounded acyclic categories: validation, derived "
               "categories, nerves and realizations",
               "incidence"};
  app.require_subcommand(1);

  std::string input;
  std::string second;
  std::string output;
  std::string format = "text";
  std::string object;
  std::string morphism;
  std::string initial_of;
  std::string terminal_of;
  std::string scope = "proper-only";
  std::string split_dir;
  std::string through;
  std::vector<std::string> checks;
  std::optional<int> max_level;
  bool signs = false;
  bool all_checks = false;
  bool no_normalize = false;
  bool list = false;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "category file ('-' for stdin)")->required();
  };
  auto add_output = [&](CLI::App* cmd) {
    cmd->add_option("-o,--output", output, "write the result to this file");
  };
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate = app.add_subcommand("validate", "check axioms and properties");
  add_input(validate);
  add_output(validate);
  add_format(validate);
  validate->add_flag("--signs", signs, "require signed points and check signs");
  validate->add_option("--scope", scope, "diamond scope: all or proper-only")
      ->check(CLI::IsMember({"all", "proper-only"}));
  validate->add_option("--check", checks,
                       "extra check: diamond, strongly_decomposable, "
                       "strongly_unsplittable, strongly_initial_unsplittable, cw");
  validate->add_flag("--all", all_checks, "run every check");

  auto* hasse_cmd = app.add_subcommand("hasse", "Hasse diagram as DOT");
  add_input(hasse_cmd);
  add_output(hasse_cmd);

  auto* upper = app.add_subcommand("upper", "upper category of an object");
  add_input(upper);
  add_output(upper);
  upper->add_option("--object", object, "anchor object")->required();
  upper->add_flag("--no-normalize", no_normalize, "keep host ranks");

  auto* lower = app.add_subcommand("lower", "lower category of an object");
  add_input(lower);
  add_output(lower);
  lower->add_option("--object", object, "anchor object")->required();

  auto* section = app.add_subcommand("section", "section category of a morphism");
  add_input(section);
  add_output(section);
  section->add_option("--morphism", morphism, "morphism name");
  section->add_option("--initial-of", initial_of, "use the initial morphism of");
  section->add_option("--terminal-of", terminal_of, "use the terminal morphism of");
  section->add_flag("--no-normalize", no_normalize, "keep host ranks");

  auto* nerve = app.add_subcommand("nerve", "nerve as a structured document");
  add_input(nerve);
  add_output(nerve);
  nerve->add_option("--max-level", max_level, "highest level (default: rank spread)");
  nerve->add_option("--through", through,
                    "rebuild the upper category of this object from the nerve");

  auto* realize_cmd = app.add_subcommand("realize", "oriented realization of the nerve");
  add_input(realize_cmd);
  add_output(realize_cmd);
  add_format(realize_cmd);

  auto* decompose = app.add_subcommand("decompose", "linked clusters and split parts");
  add_input(decompose);
  add_output(decompose);
  decompose->add_option("--split-dir", split_dir, "write each part to DIR/part<k>.cat");

  auto* cw = app.add_subcommand("check-cw", "CW characterization");
  add_input(cw);
  add_output(cw);
  add_format(cw);

  auto* iso = app.add_subcommand("iso", "isomorphism test (exit 0 iff isomorphic)");
  add_input(iso);
  iso->add_option("other", second, "second category file")->required();
  add_output(iso);

  auto* fixture_cmd = app.add_subcommand("fixture", "emit a catalog fixture");
  fixture_cmd->add_option("name", input, "fixture name (or ngon<k>)");
  fixture_cmd->add_flag("--list", list, "list catalog names");
  add_output(fixture_cmd);

  std::vector<const char*> argv{"incidence"};
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kPass : kUsage;
    }
    const Sink sink{output, out};

    if (validate->parsed()) {
      const auto c = load(input, in);
      if (signs) require_signed_points(*c);
      const auto sign_check = signs ? SignCheck::on : SignCheck::off;
      const auto diamond_scope =
          scope == "all" ? DiamondScope::all : DiamondScope::proper_only;
      std::vector<std::string> names{"bounded_acyclic", "graded", "semi_diamond"};
      if (all_checks) {
        for (const char* n : {"diamond", "strongly_decomposable",
                              "strongly_unsplittable",
                              "strongly_initial_unsplittable"}) {
          names.emplace_back(n);
        }
      }
      for (const auto& n : checks) {
        if (std::find(names.begin(), names.end(), n) == names.end()) {
          names.push_back(n);
        }
      }
      auto report = make_report("validate");
      for (const auto& n : names) {
        report.add(named_check(*c, n, diamond_scope, sign_check));
      }
      sink.emit(render(report, format));
      return report.failed() ? kViolation : kPass;
    }
    if (hasse_cmd->parsed()) {
      sink.emit(to_dot(*load(input, in)));
      return kPass;
    }
    if (upper->parsed()) {
      const auto c = load(input, in);
      sink.emit(to_category_text(
          *upper_category(c, c->object_id(object), !no_normalize).category));
      return kPass;
    }
    if (lower->parsed()) {
      const auto c = load(input, in);
      sink.emit(to_category_text(*lower_category(c, c->object_id(object)).category));
      return kPass;
    }
    if (section->parsed()) {
      const auto c = load(input, in);
      const auto m = pick_morphism(*c, morphism, initial_of, terminal_of);
      sink.emit(to_category_text(*section_category(c, m, !no_normalize)));
      return kPass;
    }
    if (nerve->parsed()) {
      const auto c = load(input, in);
      const auto nv = nerve_of(c, max_level);
      if (through.empty()) {
        sink.emit(to_json(nv));
        return kPass;
      }
      const auto x = c->object_id(through);
      const Chain f{{c->initial_morphism(x), c->terminal_morphism(x)}};
      sink.emit(to_json(upper_via_nerve(nv, f)));
      return kPass;
    }
    if (realize_cmd->parsed()) {
      const auto c = load(input, in);
      const auto oc = realize(nerve_of(c));
      sink.emit(format == "json" ? to_json(oc, *c) : complex_summary(oc));
      return kPass;
    }
    if (decompose->parsed()) {
      const auto c = load(input, in);
      const auto clusters = linked_clusters(*c);
      std::ostringstream text;
      text << "clusters: " << clusters.size() << '\n';
      for (std::size_t k = 0; k < clusters.size(); ++k) {
        text << "cluster " << k + 1 << ':';
        for (ObjectId x : clusters[k]) text << ' ' << c->object_name(x);
        text << '\n';
      }
      if (!split_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(split_dir, ec);
        if (ec) throw IoError("cannot create '" + split_dir + "'");
        const auto parts = split(*c);
        for (std::size_t k = 0; k < parts.size(); ++k) {
          const auto path = (std::filesystem::path(split_dir) /
                             ("part" + std::to_string(k + 1) + ".cat"))
                                .string();
          write_file(path, to_category_text(*parts[k]));
          text << "wrote " << path << '\n';
        }
      }
      sink.emit(text.str());
      return kPass;
    }
    if (cw->parsed()) {
      const auto report = check_cw(*load(input, in));
      sink.emit(render(report, format));
      return report.failed() ? kViolation : kPass;
    }
    if (iso->parsed()) {
      const auto a = load(input, in);
      const auto b = load(second, in);
      const auto found = is_isomorphic(a, b);
      std::ostringstream text;
      if (!found) {
        text << "not isomorphic\n";
      } else {
        text << "isomorphic\n";
        for (ObjectId x = 0; x < static_cast<ObjectId>(a->object_count()); ++x) {
          text << "object " << a->object_name(x) << " -> "
               << b->object_name(found->forward.on_object(x)) << '\n';
        }
      }
      sink.emit(text.str());
      return found ? kPass : kViolation;
    }
    if (fixture_cmd->parsed()) {
      if (list) {
        std::string text;
        for (const auto& n : fixture_names()) text += n + '\n';
        sink.emit(text);
        return kPass;
      }
      if (input.empty()) throw CLI::ValidationError("fixture name required");
      const auto spec = fixture(input);
      sink.emit("# " + spec.name + ": " + spec.description + "\n" +
                to_text(spec.presentation));
      return kPass;
    }
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const PresentationError& e) {
    err << "invalid presentation: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUnknownOrPrecondition;
  }
}

}  // namespace incidence::cli
