#pragma once

#include <random>

#include "pea/descriptor.hpp"
#include "pea/interval_pea.hpp"

namespace fixtures {

inline pea::MaterializedPEA interval(const char* group, const char* unit, std::size_t budget = 1000) {
  auto g = pea::parse_group(group);
  return pea::materialize(pea::gamma(g, g->parse(unit)), budget);
}

inline pea::MaterializedPEA lex_s3(int k = 3) {
  return interval("lex(Z,finite:S3)", ("(" + std::to_string(k) + ",0)").c_str());
}

inline pea::MaterializedPEA diamond() { return interval("Z^2:product", "(1,1)"); }

inline pea::Id id(const pea::MaterializedPEA& m, const char* name) { return m.table.id(name); }

}  // namespace fixtures
