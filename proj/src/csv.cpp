#include "overlaysim/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "overlaysim/config_file.hpp"

namespace overlaysim {

namespace {

std::string real6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

} // namespace

std::string run_csv_text(const std::vector<MetricsRow>& rows) {
    std::string out =
        "round,main_component_size,main_component_fraction,isolated_count,"
        "avg_n1,avg_n2,active_count,links_total,messages_sent\n";
    for (const MetricsRow& r : rows) {
        out += std::to_string(r.round);
        out += ",";
        out += std::to_string(r.main_component_size);
        out += ",";
        out += real6(r.main_component_fraction);
        out += ",";
        out += std::to_string(r.isolated_count);
        out += ",";
        out += real6(r.avg_n1);
        out += ",";
        out += real6(r.avg_n2);
        out += ",";
        out += std::to_string(r.active_count);
        out += ",";
        out += std::to_string(r.links_total);
        out += ",";
        out += std::to_string(r.messages_sent);
        out += "\n";
    }
    return out;
}

std::vector<MetricsRow> parse_run_csv_text(const std::string& text) {
    std::vector<MetricsRow> rows;
    std::stringstream ss(text);
    std::string line;
    bool header = true;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (header) {
            header = false;
            continue;
        }
        MetricsRow r;
        std::stringstream ls(line);
        std::string field;
        auto next = [&]() -> std::string {
            if (!std::getline(ls, field, ',')) throw IoError("malformed run CSV line: " + line);
            return field;
        };
        r.round = std::stoi(next());
        r.main_component_size = std::stoull(next());
        r.main_component_fraction = std::stod(next());
        r.isolated_count = std::stoull(next());
        r.avg_n1 = std::stod(next());
        r.avg_n2 = std::stod(next());
        r.active_count = std::stoull(next());
        r.links_total = std::stoull(next());
        r.messages_sent = std::stoull(next());
        rows.push_back(r);
    }
    return rows;
}

std::string aggregate_csv_text(const ProtocolAggregate& agg) {
    std::string out =
        "round,samples,divergent_runs,"
        "main_component_size_mean,main_component_size_std,"
        "main_component_fraction_mean,main_component_fraction_std,"
        "isolated_count_mean,isolated_count_std,"
        "avg_n1_mean,avg_n1_std,avg_n2_mean,avg_n2_std,"
        "active_count_mean,active_count_std,"
        "links_total_mean,links_total_std,"
        "messages_sent_mean,messages_sent_std\n";
    for (const AggregateRow& r : agg.rows) {
        out += std::to_string(r.round);
        out += ",";
        out += std::to_string(r.samples);
        out += ",";
        out += std::to_string(r.divergent_runs);
        for (double v : {r.main_component_size_mean, r.main_component_size_std,
                         r.main_component_fraction_mean, r.main_component_fraction_std,
                         r.isolated_count_mean, r.isolated_count_std, r.avg_n1_mean, r.avg_n1_std,
                         r.avg_n2_mean, r.avg_n2_std, r.active_count_mean, r.active_count_std,
                         r.links_total_mean, r.links_total_std, r.messages_sent_mean,
                         r.messages_sent_std}) {
            out += ",";
            out += real6(v);
        }
        out += "\n";
    }
    return out;
}

std::string degree_dist_csv_text(const std::map<std::size_t, double>& dist) {
    std::string out = "degree,probability\n";
    for (const auto& [degree, p] : dist) {
        out += std::to_string(degree);
        out += ",";
        out += real6(p);
        out += "\n";
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_run_csv(const std::string& path, const std::vector<MetricsRow>& rows) {
    write_text_file(path, run_csv_text(rows));
}

std::vector<MetricsRow> read_run_csv(const std::string& path) {
    return parse_run_csv_text(read_text_file(path));
}

void write_aggregate_csv(const std::string& path, const ProtocolAggregate& agg) {
    write_text_file(path, aggregate_csv_text(agg));
}

void write_degree_dist_csv(const std::string& path, const std::map<std::size_t, double>& dist) {
    write_text_file(path, degree_dist_csv_text(dist));
}

} // namespace overlaysim
