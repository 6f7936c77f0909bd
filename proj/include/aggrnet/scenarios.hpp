#pragma once
// Experiment orchestration: built-in scenarios (table1, fig2, fig3-6, fig7)
// and generic Cartesian parameter sweeps, with CSV artifacts.

#include <string>
#include <vector>

#include "aggrnet/config.hpp"

namespace aggrnet {

// Executes the experiment, writing CSVs under spec.out_dir.  Returns the list
// of files written.  Errors propagate as the usual exception types (the CLI
// maps them to exit codes); partially computed rows are flushed first.
std::vector<std::string> run_experiment(const ExperimentSpec& spec,
                                        int threads = 1);

}  // namespace aggrnet
