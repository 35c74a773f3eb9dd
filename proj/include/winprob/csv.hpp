#pragma once

#include <string>

#include "winprob/records.hpp"
#include "winprob/study.hpp"

namespace winprob {

// Shortest round-trip decimal representation, locale-independent.
std::string format_double(double x);

// Write-to-temp-then-rename so readers never see a partial file.
void write_text_atomic(const std::string& path, const std::string& content);

// Dataset CSV schema: header "time,status,arm"; time in months, status 1 =
// event / 0 = censored, arm "active"/"control" (aliases "a"/"c").
Dataset read_dataset_csv(const std::string& path);
std::string dataset_to_csv(const Dataset& data);
void write_dataset_csv(const Dataset& data, const std::string& path);

// Truth table CSV: scenario,effect,wp,rwp,avg_hr,d_rmst,d_mst,d_mu.
struct TruthRow {
    std::string scenario;
    std::string effect;
    TrueEstimands values;
};
std::string truth_table_to_csv(const std::vector<TruthRow>& rows);

// Long-format study metrics: scenario,effect,N,method,metric,value.
std::string metrics_to_csv(const StudyMetrics& metrics);

// Plot-ready power curves: scenario,effect,N,method,rejection_rate.
std::string power_to_csv(const StudyMetrics& metrics);

}  // namespace winprob
