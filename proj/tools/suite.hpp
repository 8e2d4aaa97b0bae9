#pragma once

// The acceptance checks, grouped by criterion. Shared by `zetaforge
// verify-all` and the zetaforge_acceptance driver.

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace zetaforge::cli {

using Json = nlohmann::ordered_json;

enum class Tier { QUICK, FULL };

/// Sizes selected by --budget.
struct BudgetTable {
    std::uint64_t mc_samples;         // special-value quadratures
    std::uint64_t qrm_series_samples; // nested-integral QRM series
    unsigned spectrum_N;              // eigenbasis truncation
    unsigned padic_precision;         // working digits of the p-adic context
};

BudgetTable budget_table(Tier t);
const char* tier_name(Tier t);
Tier parse_tier(const std::string& s);

struct Check {
    std::string name;
    bool ok = false;
    Json detail = Json::object();
};

struct Criterion {
    int id = 0;
    std::string title;
    double limit_seconds = 0;  // stated runtime bound at the full budget
    bool ok = false;
    std::vector<Check> checks;
};

/// Runs criteria 1..11 (or the listed subset). Output depends only on the
/// tier and seed.
std::vector<Criterion> run_suite(Tier tier, std::uint64_t seed, const std::vector<int>& ids = {});

Json to_json(const Criterion& c);

}  // namespace zetaforge::cli
