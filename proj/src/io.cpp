#include "specdecay/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace specdecay {

std::string format_double(double value) {
    std::array<char, 32> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf.data(), ptr);
}

void CsvWriter::comment(std::string_view text) {
    if (row_open_) throw std::logic_error("CsvWriter: comment inside an open row");
    buf_.append("# ");
    buf_.append(text);
    buf_.push_back('\n');
}

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
    if (row_open_) throw std::logic_error("CsvWriter: header inside an open row");
    bool first = true;
    for (std::string_view col : columns) {
        if (!first) buf_.push_back(',');
        buf_.append(col);
        first = false;
    }
    buf_.push_back('\n');
}

void CsvWriter::separator() {
    if (row_open_) buf_.push_back(',');
    row_open_ = true;
}

void CsvWriter::field(double value) {
    separator();
    buf_.append(format_double(value));
}

void CsvWriter::field(std::int64_t value) {
    separator();
    buf_.append(std::to_string(value));
}

void CsvWriter::field(std::uint64_t value) {
    separator();
    buf_.append(std::to_string(value));
}

void CsvWriter::field(std::string_view value) {
    separator();
    buf_.append(value);
}

void CsvWriter::field(std::optional<double> value) {
    if (value)
        field(*value);
    else
        separator();
}

void CsvWriter::end_row() {
    if (!row_open_) throw std::logic_error("CsvWriter: end_row without fields");
    buf_.push_back('\n');
    row_open_ = false;
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_file: cannot open " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write_text_file: short write to " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_text_file: cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace specdecay
