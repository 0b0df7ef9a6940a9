#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace avgcase::tool {

// RFC-4180-style writer: comma separated, header row first, fields
// quoted only when they contain a comma, quote, or newline.
class CsvWriter {
public:
    CsvWriter(const std::string& path, std::vector<std::string> columns);

    void row(const std::vector<std::string>& fields);
    std::size_t rows() const { return rows_; }

    static std::string escape(const std::string& field);

private:
    void write_line(const std::vector<std::string>& fields);

    std::ofstream out_;
    std::string path_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

std::string fmt_double(double x, int precision);
std::string fmt_uint(std::uint64_t v);
std::string fmt_bool(bool v);

}  // namespace avgcase::tool
