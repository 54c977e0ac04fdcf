#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "soa/chain.hpp"

namespace soa {

enum class Command { factor, lift, verify, oracle, validate };

enum class ExitCode : int {
    ok = 0,
    failure = 1,
    not_stabilised = 2,
    budget_exceeded = 3,
};

struct JobSpec {
    Command command = Command::validate;
    std::string presentation;
    std::string map;
    std::string certificate;
    std::string problem;
    std::string target;
    std::string oracle_kind = "kappa";
    std::optional<ChainMode> mode;
    std::size_t max_stage = 16;
    std::size_t max_carrier = 2; ///< oracle carriers
    std::size_t samples = 0;     ///< 0: every pair of small arrows
    std::uint64_t seed = 0;
    Budget budget;
    std::string out;
    std::string trace;
};

/// Runs one job. Artifacts go to the files named in `job` or to `out`; diagnostics go to `err`.
ExitCode run(const JobSpec& job, std::ostream& out, std::ostream& err);

} // namespace soa
