#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsr/reductions.hpp"

namespace fsr {

// Exhaustive assignment enumeration; refuses formulas with > 25 variables.
bool sat_oracle(const Cnf& f);
std::optional<std::vector<bool>> sat_oracle_witness(const Cnf& f);

// Smallest dominating set of size <= k, or nullopt. Refuses graphs with
// > 20 vertices.
std::optional<std::vector<int>> domset_oracle(const Graph& g, int k);

// Independent brute-force counterparts of the design solvers, used to
// cross-check them. They share nothing with the solvers beyond the
// simulator itself.
DesignOutcome design_team_oracle(const TeamDesLSInstance& inst,
                                 long long candidate_cap = 10'000'000);
DesignOutcome design_controllers_oracle(const ContDesLSInstance& inst,
                                        long long candidate_cap = 50'000'000);

struct CrossValidationReport {
    int total = 0;
    int agreements = 0;
    std::vector<std::string> mismatches;

    bool ok() const { return total > 0 && mismatches.empty(); }
    void merge(const CrossValidationReport& other);
};

std::string to_string(const CrossValidationReport& r);

// Each harness reduces every source instance, solves the produced instance,
// and compares the answer with the source-problem oracle.
CrossValidationReport cross_validate_teamenvver(const std::vector<Cnf>& formulas,
                                                int jobs = 1);
CrossValidationReport cross_validate_teamdesls(const std::vector<Cnf>& formulas,
                                               int jobs = 1);
CrossValidationReport cross_validate_contdesls(
    const std::vector<std::pair<Graph, int>>& cases, int max_states, int jobs = 1);

} // namespace fsr
