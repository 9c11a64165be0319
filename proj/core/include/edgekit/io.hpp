#pragma once

#include "edgekit/estimate.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace edgekit {

/// Everything needed to regenerate an output file bit for bit.
struct RunManifest {
    std::string command;
    std::uint64_t master_seed = 0;
    std::string generator;
    std::map<std::string, std::string> parameters;
    std::size_t threads = 1;
    double wall_seconds = 0.0;
    std::string version;
};

/// Numbers in output files: shortest form that round-trips.
std::string format_number(double x);

/// A CSV file with a header row and numeric cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws std::out_of_range if absent.
    std::size_t column(const std::string& name) const;
    std::vector<double> column_values(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

/// Writes `content` to a temporary sibling and renames it into place, so a
/// failed run never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// "lambda,survival,stderr".
std::string cdf_csv(const CdfEstimate& est);
void write_cdf_csv(const CdfEstimate& est, const std::filesystem::path& path);
/// Reads a "lambda,survival,stderr" file. The method is not stored in the
/// CSV and defaults to riccati.
CdfEstimate read_cdf_csv(const std::filesystem::path& path);

/// "value_0,...,value_{k-1}", one row per draw.
std::string samples_csv(const std::vector<std::vector<double>>& draws, std::size_t k);
void write_samples_csv(const std::vector<std::vector<double>>& draws, std::size_t k,
                       const std::filesystem::path& path);

/// Sidecar path: run.csv -> run.manifest.json.
std::filesystem::path manifest_path_for(const std::filesystem::path& output);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

/// Static SVG line plot of a survival curve with +-2 standard-error band.
std::string svg_plot(const CdfEstimate& est, const std::string& title);

} // namespace edgekit
