#pragma once

#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "fourfactor/config.hpp"
#include "fourfactor/pricer.hpp"

namespace ff {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitConfig = 2,
    kExitSolver = 3,
    kExitIo = 4,
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// European/barrier on the 4D grid, Asian on the 5D grid, per cfg.payoff.
Solution solve(const RunConfig& cfg, const SchemeConfig& scheme);

// Probe coordinates that match the payoff (4D or with I).
const std::vector<std::vector<double>>& active_probes(const RunConfig& cfg);

// Each command writes its report to `out` (CSV) and, when cfg.out is set,
// a file: the full field for price/asian-price, the report for the rest.
void cmd_price(const RunConfig& cfg, std::ostream& out);
void cmd_compare(const RunConfig& cfg, const std::vector<SchemeConfig>& schemes, std::ostream& out);
void cmd_convergence(const RunConfig& cfg, const std::vector<SchemeConfig>& schemes, std::ostream& out);
void cmd_mc_check(const RunConfig& cfg, std::ostream& out);
void cmd_slice(const RunConfig& cfg, std::ostream& out);
void cmd_asian_price(const RunConfig& cfg, std::ostream& out);

// Maps the exception in flight to an exit code and prints it to `err`.
int report_failure(std::ostream& err);

} // namespace ff
