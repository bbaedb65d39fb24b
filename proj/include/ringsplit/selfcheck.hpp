// Built-in invariant self-tests behind the `check` CLI subcommand.
#pragma once

#include <iosfwd>

namespace ringsplit {

// Runs the quick invariant suite, printing one line per check.
// Returns the number of failed checks.
int run_self_checks(std::ostream& out);

}  // namespace ringsplit
