#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cwmix/model.hpp"

namespace cwmix {

// Parses a comma-separated list of time expressions or ranges into concrete
// step counts.  Expressions combine numbers and the symbols `n` (system
// size) and `t_n` (cutoff center) with optional leading coefficients and
// +/- chains; ranges are `<expr>..<expr>[:step <expr>]`, e.g.
//   "t_n-10n..t_n+10n:step n"      "0,n,2n,4n"      "100..1000:step 50"
// Values round to the nearest step and clamp below at 0; a range's step must
// be positive.  `t_n` is only available for beta < 1 (std::invalid_argument
// otherwise, as for any parse error).
std::vector<std::int64_t> parse_time_grid(const std::string& text, const ModelParams& p);

}  // namespace cwmix
