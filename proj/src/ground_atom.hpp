#pragma once

#include "nba/fact.hpp"
#include "scan.hpp"

namespace nba::detail {

// Parses a ground atom at the scanner's position: pred(arg) or
// pred(arg1, arg2). Rejects variables.
GroundFact scan_ground_fact(LineScanner& s);

} // namespace nba::detail
