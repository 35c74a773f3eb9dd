#include "winprob/csv.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include "winprob/errors.hpp"

namespace winprob {

std::string format_double(double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw NumericalError("format_double: conversion failed");
    return std::string(buf, end);
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open for writing: " + tmp.string());
        out << content;
        if (!out) throw DataError("write failed: " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw DataError("rename failed for " + path + ": " + ec.message());
    }
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& field, std::size_t row) {
    double value = 0.0;
    const std::string t = trim(field);
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw DataError("row " + std::to_string(row) + ": not a number: '" + field + "'");
    return value;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open dataset file: " + path);

    std::string line;
    std::size_t row = 0;
    if (!std::getline(in, line)) throw DataError("empty dataset file: " + path);
    ++row;
    if (trim(line) != "time,status,arm")
        throw DataError("expected header 'time,status,arm' in " + path);

    Dataset data;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != 3)
            throw DataError("row " + std::to_string(row) + ": expected 3 fields");
        SurvivalRecord rec{};
        rec.time = parse_double(fields[0], row);
        if (!(rec.time > 0.0))
            throw DataError("row " + std::to_string(row) + ": time must be positive");
        const std::string status = trim(fields[1]);
        if (status == "1") rec.event = true;
        else if (status == "0") rec.event = false;
        else throw DataError("row " + std::to_string(row) + ": status must be 0 or 1");
        const std::string arm = trim(fields[2]);
        if (arm == "active" || arm == "a") rec.arm = Arm::Active;
        else if (arm == "control" || arm == "c") rec.arm = Arm::Control;
        else throw DataError("row " + std::to_string(row) + ": arm must be active/control");
        data.push_back(rec);
    }
    return data;
}

std::string dataset_to_csv(const Dataset& data) {
    std::string out = "time,status,arm\n";
    for (const auto& r : data) {
        out += format_double(r.time);
        out += r.event ? ",1," : ",0,";
        out += to_string(r.arm);
        out += '\n';
    }
    return out;
}

void write_dataset_csv(const Dataset& data, const std::string& path) {
    write_text_atomic(path, dataset_to_csv(data));
}

std::string truth_table_to_csv(const std::vector<TruthRow>& rows) {
    std::string out = "scenario,effect,wp,rwp,avg_hr,d_rmst,d_mst,d_mu\n";
    for (const auto& r : rows) {
        out += r.scenario + "," + r.effect + "," + format_double(r.values.wp) + "," +
               format_double(r.values.rwp) + "," + format_double(r.values.avg_hr) + "," +
               format_double(r.values.d_rmst) + "," + format_double(r.values.d_mst) + "," +
               format_double(r.values.d_mu) + "\n";
    }
    return out;
}

std::string metrics_to_csv(const StudyMetrics& metrics) {
    std::string out = "scenario,effect,N,method,metric,value\n";
    auto emit = [&out](const StudyCell& cell, const std::string& method, const std::string& metric,
                       double value) {
        out += cell.scenario + "," + cell.effect + "," + std::to_string(cell.sample_size) + "," +
               method + "," + metric + "," + format_double(value) + "\n";
    };
    for (const auto& cell : metrics.cells) {
        for (const auto& [method, rate] : cell.rejection_rate)
            emit(cell, method, "rejection_rate", rate);
        for (const auto& [name, em] : cell.estimators) {
            emit(cell, name, "truth", em.truth);
            emit(cell, name, em.bias_is_absolute ? "abs_bias" : "rel_bias", em.bias);
            emit(cell, name, "rmse", em.rmse);
            emit(cell, name, "ci_coverage_pct", em.coverage_pct);
            emit(cell, name, "ci_width", em.ci_width);
        }
        emit(cell, "all", "replicates", cell.replicates);
        emit(cell, "all", "failures", cell.failures);
    }
    return out;
}

std::string power_to_csv(const StudyMetrics& metrics) {
    std::string out = "scenario,effect,N,method,rejection_rate\n";
    for (const auto& cell : metrics.cells) {
        for (const auto& [method, rate] : cell.rejection_rate) {
            out += cell.scenario + "," + cell.effect + "," + std::to_string(cell.sample_size) +
                   "," + method + "," + format_double(rate) + "\n";
        }
    }
    return out;
}

}  // namespace winprob
