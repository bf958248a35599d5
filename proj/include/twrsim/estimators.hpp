#pragma once

#include <string_view>

#include "twrsim/exchange.hpp"
#include "twrsim/time.hpp"

namespace twrsim {

/// Double-sided ToF estimate in A's clock frame. The relative drift between
/// the active devices is taken from the ratio of their summed round and delay
/// durations, which cancels the shared reception errors in the denominator.
/// The mirror form evaluated in B's frame is the same estimate scaled by the
/// measured drift ratio, i.e. the two agree to within the clock-scale factor
/// (tens of ppm). Throws DegenerateRecordError when a denominator is not
/// positive.
TimeSpan ds_twr(const ExchangeRecord& rec);

/// Double-sided TDoA estimate in the listener's clock frame; the listener
/// derives its relative drift to both active devices from its own summed
/// intervals.
TimeSpan ds_tdoa(const ExchangeRecord& rec);

/// Single-sided ToF estimate: drift correction comes from the CFO-derived
/// ratio instead of the second round.
TimeSpan ss_twr_cfo(const ExchangeRecord& rec);

/// Fully CFO-based TDoA estimate.
TimeSpan ss_tdoa_cfo(const ExchangeRecord& rec);

/// Hybrid TDoA: double-sided correction toward A, CFO correction toward B,
/// which drops the need for B's round report.
TimeSpan mixed_tdoa(const ExchangeRecord& rec);

enum class Est { ds_twr, ds_tdoa, ss_twr_cfo, ss_tdoa_cfo, mixed_tdoa };

inline constexpr Est kAllEstimators[] = {Est::ds_twr, Est::ds_tdoa, Est::ss_twr_cfo,
                                         Est::ss_tdoa_cfo, Est::mixed_tdoa};

std::string_view name(Est est);
Est estimator_from_name(std::string_view n);

/// True for estimators whose reference value is the TDoA rather than the ToF.
bool estimates_tdoa(Est est);

TimeSpan evaluate(Est est, const ExchangeRecord& rec);

} // namespace twrsim
