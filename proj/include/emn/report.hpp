#ifndef EMN_REPORT_HPP
#define EMN_REPORT_HPP

#include <string>
#include <vector>

#include "emn/rootdata.hpp"

namespace emn {

// Suite orchestration and machine-readable reporting for the command line
// front end. A SuiteConfig selects one of the check suites and the module /
// truncation parameters; run_suite executes it, optionally writes a JSON
// report {config, checks: [...], summary}, and returns the process exit
// status (0 = all pass, 1 = some check failed).

struct SuiteConfig {
    std::string suite = "all";  // cartan|contractions|verify|screenings|coeffs|all
    int m = 2, n = 1;
    std::string weight = "L0";  // L0 | L<i> | aLm:<int>
    int D = 2;                  // creation degree bound
    int B = 1;                  // lattice ball radius
    int W = 2;                  // mode window
    int R = 4;                  // series order for contractions/exp identities
    int rmax = 3;               // level bound for the coefficient layer
    std::string filter = "all";  // comma list of relation ids, or "all"
    int jobs = 1;
    std::string out;  // report path; empty = no file
};

// L0 | L<i> | aLm:<int>; returns false on a malformed token
bool parse_weight(const std::string& token, WeightSpec& spec);

// validate config invariants (m != n, bounds nonnegative, weight parseable,
// known suite); returns an error message or empty string
std::string validate_config(const SuiteConfig& cfg);

int run_suite(const SuiteConfig& cfg);

}  // namespace emn

#endif
