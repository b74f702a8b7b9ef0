#pragma once

#include <string>
#include <vector>

#include "optomag/sweep.hpp"

namespace optomag {

/// Heatmap of one value column over a two-axis sweep.
std::string render_heatmap(const SweepResult& result, const std::string& column);

/// One polyline per distinct value of `group_column` (or a single line when
/// empty), plotting y_column against x_column. Rows whose status is not "ok" are skipped.
std::string render_lines(const SweepResult& result, const std::string& x_column,
                         const std::vector<std::string>& y_columns,
                         const std::string& group_column = "");

/// Picks the plot that suits the sweep's command.
std::string render_default_plot(const SweepResult& result);

}  // namespace optomag
