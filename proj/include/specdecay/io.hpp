#pragma once

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace specdecay {

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double value);

/// Accumulates a CSV document: optional "# ..." preamble, one header row,
/// then data rows built field by field.
class CsvWriter {
public:
    void comment(std::string_view text);
    void header(std::initializer_list<std::string_view> columns);
    void field(double value);
    void field(std::int64_t value);
    void field(std::uint64_t value);
    void field(std::string_view value);
    /// Missing value: an empty cell.
    void field(std::optional<double> value);
    void end_row();
    [[nodiscard]] const std::string& str() const noexcept { return buf_; }

private:
    void separator();

    std::string buf_;
    bool row_open_ = false;
};

void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

} // namespace specdecay
