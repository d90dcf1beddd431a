#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace incidence {

enum class Verdict { pass, fail, not_applicable };

std::string to_string(Verdict v);

struct Witness {
  /// Rendered name of the offending object or morphism.
  std::string item;
  std::string detail;
};

/// Outcome of one property check. Composite checks keep their parts in
/// `checks` and repeat every failing part's witnesses at the top level, so
/// fail <=> at least one witness holds at every level.
struct ValidationReport {
  std::string property;
  Verdict verdict = Verdict::pass;
  std::vector<Witness> witnesses;
  /// Informational entries (e.g. sign checks skipped on unsigned factors).
  std::vector<std::string> notes;
  std::vector<ValidationReport> checks;

  bool passed() const { return verdict == Verdict::pass; }
  bool failed() const { return verdict == Verdict::fail; }

  /// Records a witness and turns the verdict to fail.
  void fail(std::string item, std::string detail);
  /// Appends a sub-report and folds its verdict and witnesses in.
  void add(ValidationReport part);
};

ValidationReport make_report(std::string property);

void write_text(std::ostream& out, const ValidationReport& r, int indent = 0);
std::string to_text(const ValidationReport& r);
/// Structured document: {"format":"validation-report","version":1,"report":{...}}.
std::string to_json(const ValidationReport& r);

}  // namespace incidence
