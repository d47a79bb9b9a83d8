#include "sulph/csv.hpp"

#include <charconv>
#include <cmath>

#include "sulph/error.hpp"

namespace sulph {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, res.ptr};
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    write_header({header.begin(), header.size()});
}

CsvWriter::CsvWriter(const std::filesystem::path& path, std::span<const std::string> header)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
    std::vector<std::string_view> views(header.begin(), header.end());
    write_header(views);
}

CsvWriter::~CsvWriter() {
    if (out_.is_open()) out_.close();
}

void CsvWriter::write_header(std::span<const std::string_view> header) {
    if (!out_) throw Error(ErrorCode::IoError, "cannot open " + path_.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out_ << ',';
        out_ << header[i];
    }
    out_ << '\n';
}

void CsvWriter::row(std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out_ << ',';
        out_ << format_double(values[i]);
    }
    out_ << '\n';
    if (!out_) throw Error(ErrorCode::IoError, "write to " + path_.string() + " failed");
}

void CsvWriter::row(std::string_view label, std::span<const double> values) {
    out_ << label;
    for (double v : values) out_ << ',' << format_double(v);
    out_ << '\n';
    if (!out_) throw Error(ErrorCode::IoError, "write to " + path_.string() + " failed");
}

void CsvWriter::row(std::span<const double> head, std::string_view label, std::span<const double> tail) {
    for (double v : head) out_ << format_double(v) << ',';
    out_ << label;
    for (double v : tail) out_ << ',' << format_double(v);
    out_ << '\n';
    if (!out_) throw Error(ErrorCode::IoError, "write to " + path_.string() + " failed");
}

void CsvWriter::close() {
    out_.close();
    if (out_.fail()) throw Error(ErrorCode::IoError, "closing " + path_.string() + " failed");
}

void write_field_long(const std::filesystem::path& path, std::span<const double> t, std::span<const double> x,
                      const Field2D& field, std::string_view name) {
    if (field.rows() != t.size() || field.cols() != x.size())
        throw Error(ErrorCode::GridMismatch, "field shape does not match its mesh");
    CsvWriter csv(path, {"t", "x", name});
    for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t c = 0; c < x.size(); ++c) csv.row({t[r], x[c], field(r, c)});
    csv.close();
}

}  // namespace sulph
