#pragma once
/**
 * @file report.hpp
 * @brief Serialization of cutting-plane run reports.
 *
 * JSON carries the whole record: run header, per-round statistics and the
 * cut ledger (sparse coefficients).  CSV is the per-round table only, one
 * row per round, for spreadsheet-style comparisons across runs.
 */

#include "coniccut/cutloop.hpp"

#include <string>

namespace coniccut {

/// {"instance":..., "normalization":..., ..., "rounds":[...], "cuts":[...]}
/// with stable key order, so equal reports serialize identically.
std::string report_json(const Report& report);

/// Header "round,kstar,landp,density_pct,gap_pct,seconds" plus one row per
/// round; gap_pct is empty when unknown.  Numbers use shortest round-trip
/// formatting, so two identical runs produce byte-identical tables.
std::string report_csv(const Report& report);

}  // namespace coniccut
