#pragma once

#include <stdexcept>
#include <string>

#include "v2vq/mc.hpp"
#include "v2vq/optimize.hpp"

namespace v2vq {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// One value with 12 significant digits; non-finite values render as
// inf/-inf/nan and parse back identically.
std::string format_sig12(double value);

// CSV body: `#` metadata block (full parameter snapshot, grid, engine,
// seed) followed by the fixed column header and one line per row. Monte
// Carlo results carry the four extra uncertainty columns.
std::string render_csv(const SweepResult& result);

// Same content as the CSV, rows as JSON objects under "rows" and the
// metadata under "metadata". Row numbers are rounded to 12 significant
// digits; non-finite values appear as the strings "inf"/"-inf"/"nan".
std::string render_json(const SweepResult& result);

// Round-trip reader for the CSV format, metadata included, so a result
// file can regenerate itself.
SweepResult read_csv(const std::string& text);
SweepResult read_csv_file(const std::string& path);

void write_file(const std::string& path, const std::string& content);

// Present a single-point simulation as a one-row Monte Carlo sweep so the
// one exporter handles both result shapes.
SweepResult wrap_ensemble(const EnsembleStats& stats, const Config& config,
                          const SimOptions& options);

} // namespace v2vq
