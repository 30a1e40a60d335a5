#include "output.hpp"

#include <charconv>
#include <system_error>

#include "config.hpp"

namespace itolab::cli {

std::string format_number(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    for (auto h : header) {
        separator();
        line_ += h;
    }
    end_row();
}

void CsvWriter::separator() {
    if (!line_.empty()) line_ += ',';
}

CsvWriter& CsvWriter::integer(std::size_t v) {
    separator();
    line_ += std::to_string(v);
    return *this;
}

CsvWriter& CsvWriter::number(double v) {
    separator();
    line_ += format_number(v);
    return *this;
}

void CsvWriter::end_row() {
    line_ += '\n';
    out_ << line_;
    line_.clear();
}

void CsvWriter::close() {
    out_.close();
    if (!out_) {
        throw ConfigError("failed writing '" + path_.string() + "'");
    }
}

void write_grid_csv(const std::filesystem::path& path, const ScalarGrid& grid) {
    CsvWriter csv(path, {"i", "j", "x", "y", "density"});
    const GridSpec& s = grid.spec;
    const std::size_t ny = s.dim() == 2 ? s.cells[1] : 1;
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < s.cells[0]; ++i) {
            csv.integer(i).integer(j).number(s.center(0, i));
            csv.number(s.dim() == 2 ? s.center(1, j) : 0.0).number(grid.at(i, j));
            csv.end_row();
        }
    }
    csv.close();
}

void write_json(const std::filesystem::path& path, const nlohmann::json& value) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ConfigError("cannot write '" + path.string() + "'");
    }
    out << value.dump(2) << '\n';
    if (!out) {
        throw ConfigError("failed writing '" + path.string() + "'");
    }
}

void ensure_directory(const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw ConfigError("cannot create output directory '" + dir.string() + "'");
    }
}

}  // namespace itolab::cli
