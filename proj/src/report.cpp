#include "incidence/report.hpp"

#include <ostream>
#include <sstream>

#include "json.hpp"

namespace incidence {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::not_applicable:
      return "not-applicable";
  }
  return "unknown";
}

void ValidationReport::fail(std::string item, std::string detail) {
  verdict = Verdict::fail;
  witnesses.push_back({std::move(item), std::move(detail)});
}

void ValidationReport::add(ValidationReport part) {
  if (part.failed()) {
    verdict = Verdict::fail;
    for (const auto& w : part.witnesses) {
      witnesses.push_back({w.item, part.property + ": " + w.detail});
    }
  }
  checks.push_back(std::move(part));
}

ValidationReport make_report(std::string property) {
  ValidationReport r;
  r.property = std::move(property);
  return r;
}

void write_text(std::ostream& out, const ValidationReport& r, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  out << pad << r.property << ": " << to_string(r.verdict) << '\n';
  if (r.checks.empty()) {
    for (const auto& w : r.witnesses) {
      out << pad << "  witness " << w.item << " -- " << w.detail << '\n';
    }
  }
  for (const auto& n : r.notes) out << pad << "  note " << n << '\n';
  for (const auto& c : r.checks) write_text(out, c, indent + 1);
}

std::string to_text(const ValidationReport& r) {
  std::ostringstream ss;
  write_text(ss, r);
  return ss.str();
}

namespace {

nlohmann::json report_json(const ValidationReport& r) {
  nlohmann::json j;
  j["property"] = r.property;
  j["verdict"] = to_string(r.verdict);
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : r.witnesses) {
    j["witnesses"].push_back({{"item", w.item}, {"detail", w.detail}});
  }
  j["notes"] = r.notes;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) j["checks"].push_back(report_json(c));
  return j;
}

}  // namespace

std::string to_json(const ValidationReport& r) {
  nlohmann::json doc;
  doc["format"] = "validation-report";
  doc["version"] = 1;
  doc["report"] = report_json(r);
  return doc.dump(2) + "\n";
}

}  // namespace incidence
