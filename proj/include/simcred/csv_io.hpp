#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "simcred/performance.hpp"
#include "simcred/spectral.hpp"
#include "simcred/time_series.hpp"

namespace simcred {

// All readers require a header row, accept decimal-point numbers with
// optional exponent, and reject NaN/Inf. Failures raise InputError carrying
// "path:line".
//
// Header columns may carry a unit as "name[unit]", e.g. "t[s],pitch[rad]".

// Two columns: t,y.
TimeSeries read_time_series_csv(const std::filesystem::path& path);
void write_time_series_csv(const std::filesystem::path& path, const TimeSeries& series);

// Three columns: t,x,y (excitation then response).
SweepRecord read_sweep_csv(const std::filesystem::path& path);
void write_sweep_csv(const std::filesystem::path& path, const SweepRecord& rec);

// f_rad_s,mag_db,phase_deg,coherence. Phase is unwrapped after loading.
FrequencyResponse read_bode_csv(const std::filesystem::path& path);
void write_bode_csv(const std::filesystem::path& path, const FrequencyResponse& fr);

// name,unit,p_exp,p_sim[,k_p][,eps]; empty optional cells are allowed.
std::vector<PerformanceSample> read_performance_csv(const std::filesystem::path& path);
void write_performance_csv(const std::filesystem::path& path,
                           const std::vector<PerformanceSample>& samples);

// Shortest decimal text that reads back to the same double.
std::string format_number(double value);

}  // namespace simcred
