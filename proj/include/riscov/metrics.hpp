#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riscov/coverage.hpp"
#include "riscov/geometry.hpp"

namespace riscov {

struct SweepEntry {
    double offset = 0.0; // m, uniform panel height offset applied
    std::optional<double> delta_h_bs_ris; // m; absent when no cell sees any panel
    double mean_pl_gain_pct = 0.0;
};

/// Per-offset height-sweep results in the layout of the published table.
struct SweepReport {
    std::string scenario_fingerprint;
    std::vector<SweepEntry> entries;
};

/// Mean over panels of (current - default) height. Throws std::domain_error
/// when the scenario has no panels.
double delta_h_ris(const Scenario& s);

/// chi-weighted mean of (cell antenna height - current panel height) over
/// all cell-panel pairs. Throws std::domain_error on an all-zero chi or a
/// shape mismatch.
double delta_h_bs_ris(const Scenario& s, const VisibilityMatrix& chi);

/// Mean percentage path-loss reduction: 100 * (1 - sum(with)/sum(baseline)),
/// summing points finite in both maps. Maps must share dimensions and world
/// fingerprint; offsets may differ. Throws mismatch_error otherwise.
double mean_pl_gain(const PathLossMap& baseline, const PathLossMap& with_ris);

/// Height sweep: the visibility indicator is computed once over the union
/// of all offsets, the baseline map once (it is panel-independent), then
/// one entry per offset. Offsets must be non-empty and strictly increasing.
SweepReport run_sweep(const Scenario& s, const std::vector<double>& offsets, int threads = 0);

/// Full-precision JSON document.
std::string sweep_report_json(const SweepReport& report);

/// Aligned text table, one row per metric and one column per offset,
/// values to two decimal places.
std::string sweep_report_table(const SweepReport& report);

} // namespace riscov
