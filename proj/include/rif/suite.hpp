#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace rif {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

inline constexpr int kCriterionCount = 16;

// Runs one acceptance criterion (1..16). Never throws: an exception is a failure with its message.
CriterionResult run_criterion(int id, std::uint64_t seed);

// Runs the listed criteria, or all of them when `ids` is empty.
std::vector<CriterionResult> run_suite(std::span<const int> ids, std::uint64_t seed);

nlohmann::json to_json(const CriterionResult& r);

// Truncated (1,1) mixed-norm growth of kappa, reported as evidence only.
nlohmann::json mixed_norm_evidence();

}  // namespace rif
