#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sulph/field.hpp"

namespace sulph {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

/// Comma-separated writer with a fixed header. Throws IoError if the file
/// cannot be opened or written.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, std::initializer_list<std::string_view> header);
    CsvWriter(const std::filesystem::path& path, std::span<const std::string> header);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(std::span<const double> values);
    void row(std::initializer_list<double> values) { row(std::span<const double>(values.begin(), values.size())); }
    /// Leading text cell followed by numbers.
    void row(std::string_view label, std::span<const double> values);
    /// Numbers, then a text cell, then numbers.
    void row(std::span<const double> head, std::string_view label, std::span<const double> tail);
    void close();

private:
    void write_header(std::span<const std::string_view> header);

    std::filesystem::path path_;
    std::ofstream out_;
};

/// Long-format dump (t, x, <name>) of a field on the given mesh.
void write_field_long(const std::filesystem::path& path, std::span<const double> t, std::span<const double> x,
                      const Field2D& field, std::string_view name);

}  // namespace sulph
