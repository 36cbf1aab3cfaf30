#include "report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "errors.hpp"

namespace shockwave {

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

CsvWriter::CsvWriter(std::string path, const std::vector<std::string>& columns)
    : path_(std::move(path)), ncols_(columns.size()) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        body_ += (i ? "," : "") + columns[i];
    }
    body_ += "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != ncols_) {
        throw Error("csv row width mismatch in " + path_);
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        body_ += (i ? "," : "") + cells[i];
    }
    body_ += "\n";
}

void CsvWriter::write() const { write_text_file(path_, body_); }

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::filesystem::create_directories(p.parent_path());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) {
        throw ConfigError("cannot write output file: " + path);
    }
    out << content;
}

}  // namespace shockwave
