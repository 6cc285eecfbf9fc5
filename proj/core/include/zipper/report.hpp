// JSON documents for build, energy and benchmark reports, and the JSON form
// of a FibrilSpec accepted by `zipper build --spec`.

#ifndef ZIPPER_REPORT_HPP_
#define ZIPPER_REPORT_HPP_

#include <string>
#include <string_view>

#include "bench_suite.hpp"
#include "builder.hpp"

namespace zipper {

std::string to_json(const BuildReport& r);
std::string to_json(const EnergyReport& r);
std::string to_json(const BenchmarkReport& r);

/// Overlays the keys present in `text` onto `base`. Unknown keys, wrong
/// types and invalid values throw ConfigError.
///
///   {"model_name": "m2", "sequence": "GAAAAG", "sigma": 5.4, "epsilon": 1,
///    "anchors": ["A.ALA3.CB", ...], "free_atoms": [...], "full_sum": false,
///    "residual_threshold": 0.5, "clash_cutoff": 2.0, "contact_tolerance": 0.02,
///    "rigid_stage": true, "steric_floor": 2.8, "steric_weight": 100,
///    "intra_sheet_step": [0, 9.553, 0], "sheet2_transform": "<12 reals>",
///    "optimizer": {"population_size": 20, "seed": 42, ...}}
FibrilSpec fibril_spec_from_json(std::string_view text, FibrilSpec base = {});

/// Same key set as the "optimizer" object above.
OptimizerConfig optimizer_config_from_json(std::string_view text, OptimizerConfig base = {});

} // namespace zipper

#endif
