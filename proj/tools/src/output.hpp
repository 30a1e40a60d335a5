#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "itolab/grid.hpp"
#include "json.hpp"

namespace itolab::cli {

// Shortest round-trip decimal form, '.' separator, no locale.
std::string format_number(double v);

/// Comma-separated rows with a header and LF line endings.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);

    CsvWriter& integer(std::size_t v);
    CsvWriter& number(double v);
    void end_row();
    void close();

private:
    void separator();

    std::filesystem::path path_;
    std::ofstream out_;
    std::string line_;
};

// i,j,x,y,density at cell centers; 1D grids write j = 0 and y = 0.
void write_grid_csv(const std::filesystem::path& path, const ScalarGrid& grid);

// Pretty-printed with a trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& value);

void ensure_directory(const std::filesystem::path& dir);

}  // namespace itolab::cli
