#include "edgekit/io.hpp"

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edgekit {

std::string format_number(double x) { return fmt::format("{}", x); }

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw std::out_of_range("CSV has no column '" + name + "'");
}

std::vector<double> CsvTable::column_values(const std::string& name) const {
    const std::size_t c = column(name);
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.at(c));
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        out.push_back(cell);
    }
    return out;
}

} // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": empty file");
    table.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != table.header.size()) {
            throw std::runtime_error(path.string() + ": row width differs from header");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            std::size_t used = 0;
            const double v = std::stod(c, &used);
            if (used != c.size()) throw std::runtime_error(path.string() + ": bad number '" + c + "'");
            row.push_back(v);
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    auto tmp = path;
    tmp += ".partial";
    try {
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw std::runtime_error("cannot open " + tmp.string());
            out << content;
            out.flush();
            if (!out) throw std::runtime_error("write failed: " + tmp.string());
        }
        std::filesystem::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        std::filesystem::remove(tmp, ec);
        throw;
    }
}

std::string cdf_csv(const CdfEstimate& est) {
    est.check_invariants();
    std::string out = "lambda,survival,stderr\n";
    for (std::size_t i = 0; i < est.lambda_grid.size(); ++i) {
        out += fmt::format("{},{},{}\n", format_number(est.lambda_grid[i]), format_number(est.survival[i]),
                           format_number(est.std_error[i]));
    }
    return out;
}

void write_cdf_csv(const CdfEstimate& est, const std::filesystem::path& path) {
    write_file_atomic(path, cdf_csv(est));
}

CdfEstimate read_cdf_csv(const std::filesystem::path& path) {
    const CsvTable t = read_csv(path);
    CdfEstimate est;
    est.lambda_grid = t.column_values("lambda");
    est.survival = t.column_values("survival");
    est.std_error = t.column_values("stderr");
    est.check_invariants();
    return est;
}

std::string samples_csv(const std::vector<std::vector<double>>& draws, std::size_t k) {
    std::string out;
    for (std::size_t j = 0; j < k; ++j) {
        out += fmt::format("{}value_{}", j == 0 ? "" : ",", j);
    }
    out += '\n';
    for (const auto& row : draws) {
        if (row.size() != k) throw std::invalid_argument("samples_csv: draw has wrong length");
        for (std::size_t j = 0; j < k; ++j) {
            out += j == 0 ? "" : ",";
            out += format_number(row[j]);
        }
        out += '\n';
    }
    return out;
}

void write_samples_csv(const std::vector<std::vector<double>>& draws, std::size_t k,
                       const std::filesystem::path& path) {
    write_file_atomic(path, samples_csv(draws, k));
}

std::filesystem::path manifest_path_for(const std::filesystem::path& output) {
    auto p = output;
    p.replace_extension(".manifest.json");
    return p;
}

void write_manifest(const RunManifest& m, const std::filesystem::path& path) {
    nlohmann::ordered_json j;
    j["command"] = m.command;
    j["master_seed"] = m.master_seed;
    j["generator"] = m.generator;
    j["parameters"] = m.parameters;
    j["threads"] = m.threads;
    j["wall_seconds"] = m.wall_seconds;
    j["version"] = m.version;
    write_file_atomic(path, j.dump(2) + "\n");
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const auto j = nlohmann::json::parse(in);
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.master_seed = j.at("master_seed").get<std::uint64_t>();
    m.generator = j.at("generator").get<std::string>();
    m.parameters = j.at("parameters").get<std::map<std::string, std::string>>();
    m.threads = j.at("threads").get<std::size_t>();
    m.wall_seconds = j.at("wall_seconds").get<double>();
    m.version = j.at("version").get<std::string>();
    return m;
}

} // namespace edgekit
