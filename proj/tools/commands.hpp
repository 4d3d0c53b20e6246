#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "json.hpp"
#include "lattice_file.hpp"

namespace dyadic::cli {

using Json = nlohmann::ordered_json;

enum Exit { exit_ok = 0, exit_mismatch = 1, exit_input = 2, exit_exhausted = 3 };

struct Options {
    std::optional<std::string> field;
    int precision = 0;          // oracle search depth; 0 picks the certifying depth
    bool jordan = false;
    bool oracle = false;
    uint64_t seed = 0;
    long budget = 20000000;     // oracle node budget
    std::optional<std::string> expect;
    bool timing = false;        // wall-clock fields break the round trip, so they are opt-in
};

struct CampaignParams {
    std::string field = "Q2";
    int count = 100;
    int max_rank = 3;
    int vmin = -2, vmax = 4;
    double sublattice_fraction = 0.5;
    int jobs = 1;
    std::optional<std::string> out;  // corpus directory for disagreements
};

struct Outcome {
    Json report;
    int exit_code = exit_ok;
};

Json val_json(Val v);
Json echo(const LatticeInput& in);
Json flags_json(const Options& o);

Outcome cmd_invariants(const LatticeInput& L, const Options& o);
Outcome cmd_decide(const LatticeInput& N, const LatticeInput& M, const Options& o);
Outcome cmd_classify(const LatticeInput& L, const LatticeInput& K, const Options& o);
Outcome cmd_oracle(const LatticeInput& N, const LatticeInput& M, const Options& o);
Outcome cmd_campaign(const CampaignParams& p, const Options& o);
// rerun the command recorded in a report from its echoed inputs and flags
Outcome cmd_replay(const Json& report);

}  // namespace dyadic::cli
