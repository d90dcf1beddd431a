#pragma once

#include <string>

#include "incidence/builder.hpp"
#include "incidence/fixtures.hpp"

namespace testing_support {

inline incidence::CategoryPtr build_fixture(const std::string& name) {
  return incidence::build_category(incidence::fixture(name).presentation);
}

inline incidence::CategoryPtr build_text(const std::string& text) {
  return incidence::build_category(incidence::parse_presentation(text));
}

}  // namespace testing_support
