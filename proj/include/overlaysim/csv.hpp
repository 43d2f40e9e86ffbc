#pragma once

#include <map>
#include <string>
#include <vector>

#include "overlaysim/experiment.hpp"

namespace overlaysim {

// Per-run rows. Header matches the metric field names; reals carry 6 decimals.
std::string run_csv_text(const std::vector<MetricsRow>& rows);
void write_run_csv(const std::string& path, const std::vector<MetricsRow>& rows);
std::vector<MetricsRow> parse_run_csv_text(const std::string& text);
std::vector<MetricsRow> read_run_csv(const std::string& path);

std::string aggregate_csv_text(const ProtocolAggregate& agg);
void write_aggregate_csv(const std::string& path, const ProtocolAggregate& agg);

std::string degree_dist_csv_text(const std::map<std::size_t, double>& dist);
void write_degree_dist_csv(const std::string& path, const std::map<std::size_t, double>& dist);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

} // namespace overlaysim
