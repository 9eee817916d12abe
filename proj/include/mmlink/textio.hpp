#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace mmlink {

// Locale-independent numeric formatting, 9 significant digits.
// All CSV output goes through this so identical runs produce identical bytes.
std::string format_number(double value);
std::string format_number(long long value);
std::string format_number(unsigned long long value);

// Minimal RFC-4180-style CSV writer: comma separated, '\n' line endings,
// header written on construction. Cells are written verbatim (no field in
// this project ever needs quoting).
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);

    void write_row(const std::vector<std::string>& cells);

private:
    std::ofstream out_;
    std::size_t n_columns_;
};

}  // namespace mmlink
