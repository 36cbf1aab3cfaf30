// CSV and text-report helpers. Floating point is always written with 17
// significant digits so outputs round-trip and runs are byte-comparable.

#pragma once

#include <string>
#include <vector>

namespace shockwave {

std::string fmt17(double x);

class CsvWriter {
  public:
    CsvWriter(std::string path, const std::vector<std::string>& columns);
    void row(const std::vector<std::string>& cells);
    void write() const;  // creates parent directories
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::string body_;
    std::size_t ncols_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace shockwave
