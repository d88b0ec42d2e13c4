#pragma once

#include <iosfwd>
#include <string>

#include "d2d/sweep.hpp"

namespace d2d {

// JSON forms mirror the config field names; beta_b, beta_d, kappa are given in
// dB and sigma2 in dBm, converted to linear/W at parse time. Unknown keys are
// configuration errors.
SimConfig sim_config_from_json_text(const std::string& text);
SweepSpec sweep_spec_from_json_text(const std::string& text);
SweepSpec load_sweep_spec(const std::string& path);

// One JSON document per line: positions in meters plus every fading gain of
// the trial's channel draw. Debug/replay aid behind the CLI flag.
void dump_topologies_jsonl(const SimConfig& cfg, long count, std::ostream& os);

} // namespace d2d
