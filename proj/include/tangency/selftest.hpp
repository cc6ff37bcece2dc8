#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tangency/io.hpp"

namespace tangency {

struct SelftestResult {
  Json json;
  std::vector<std::string> csv;  // header first
  int passed = 0, failed = 0;
};

/// Main paths against the oracles over every family and small field, plus
/// seeded random arrangements and multiplicity pairs. Output depends only
/// on the seed.
SelftestResult run_selftest(std::uint64_t seed, int threads = 0);

}  // namespace tangency
