#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>

#include "dualband/config.h"
#include "dualband/sim_engine.h"

namespace dualband {

// Floats use 9 significant digits so reruns are byte-identical.
std::string format_number(double v);

void write_results_csv(std::ostream& os, std::span<const ExperimentRow> rows);
void write_samples_csv(std::ostream& os, std::span<const ExperimentRow> rows);

// Resolved config plus a hash of it; no wall-clock data so identical runs
// produce identical manifests.
nlohmann::json make_manifest(const ConfigFile& cfg);

// Writes the CSVs and the manifest under cfg.output.dir, creating it when
// needed. Returns the CSV path.
std::filesystem::path emit_results(const ConfigFile& cfg,
                                   std::span<const ExperimentRow> rows);

}  // namespace dualband
