#include "csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace avgcase::tool {

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> columns)
    : out_(path, std::ios::binary), path_(path), columns_(columns.size()) {
    if (!out_) throw std::runtime_error("cannot open " + path + " for writing");
    if (columns.empty()) throw std::logic_error("CSV needs at least one column");
    write_line(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != columns_)
        throw std::logic_error(path_ + ": row has " +
                               std::to_string(fields.size()) + " fields, header has " +
                               std::to_string(columns_));
    write_line(fields);
    ++rows_;
}

void CsvWriter::write_line(const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ',';
        out_ << escape(fields[i]);
    }
    out_ << "\r\n";
    if (!out_) throw std::runtime_error("write failed: " + path_);
}

std::string CsvWriter::escape(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

std::string fmt_double(double x, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

std::string fmt_uint(std::uint64_t v) { return std::to_string(v); }

std::string fmt_bool(bool v) { return v ? "1" : "0"; }

}  // namespace avgcase::tool
