/// \file verify.hpp
/// Randomized planner-vs-oracle equivalence suites. Each suite generates
/// in-guard instances from a seed, compares planner results against the
/// brute-force oracles exactly, and validates every witness it sees. The
/// first failing instance is kept as a JSON dump for reproduction.
#pragma once

#include <cstdint>
#include <string>

#include "cdplan/model.hpp"

namespace cdplan::verify {

struct Report {
  std::string suite;
  int total = 0;
  int mismatches = 0;
  std::string first_failure;  ///< description plus instance JSON

  bool ok() const { return mismatches == 0; }
};

Report broadcast(int count, std::uint64_t seed, int max_n = 7);
Report multicast(int count, std::uint64_t seed, int max_n = 8, int max_k = 3);
Report streams(int count, std::uint64_t seed, int max_n = 3, int max_m = 8,
               int max_b = 2);
Report reorder(int count, std::uint64_t seed, int max_n = 12);
Report tpt(int count, std::uint64_t seed, int max_n = 8);
Report resource(int count, std::uint64_t seed, int max_n = 6,
                std::int64_t max_cap = 12);
Report bottleneck(int count, std::uint64_t seed, int max_n = 7);

}  // namespace cdplan::verify
