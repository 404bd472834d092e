#pragma once

#include <string>

#include "cuprank/pipeline.hpp"
#include "cuprank/simulate.hpp"
#include "cuprank/synthetic.hpp"

namespace cuprank {

/// A complete simulation scenario: the contextual space, the synthetic
/// workload, the training knobs, and the session/click settings.
struct Scenario {
    ContextSchema schema;
    EndorsementVocabulary vocab;
    SyntheticConfig synth;
    TrainOptions train;
    SimOptions sim;
};

/// Parses a scenario config. Schema and vocabulary may be inline
/// ("schema": {...}) or referenced by path ("schema_path": "...") relative
/// to base_dir. Throws ConfigError on structural problems.
Scenario parse_scenario(const std::string& json_text, const std::string& base_dir = ".");

Scenario load_scenario(const std::string& path);

}  // namespace cuprank
