#include "mmlink/textio.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mmlink {

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
    return std::string(buf, res.ptr);
}

std::string format_number(long long value)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string format_number(unsigned long long value)
{
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), n_columns_(header.size())
{
    if (!out_) {
        throw std::runtime_error("cannot open output file: " + path.string());
    }
    write_row(header);
}

void CsvWriter::write_row(const std::vector<std::string>& cells)
{
    if (cells.size() != n_columns_) {
        throw std::logic_error("CSV row width does not match header");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i > 0) {
            out_ << ',';
        }
        out_ << cells[i];
    }
    out_ << '\n';
}

}  // namespace mmlink
