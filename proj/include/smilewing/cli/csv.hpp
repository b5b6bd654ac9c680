#pragma once

#include <string>
#include <vector>

namespace smilewing::cli {

/// Fixed 17-significant-digit formatting: bit-stable across runs, '.' decimal
/// separator regardless of environment.
std::string fmt17(double v);

/// Minimal CSV writer: '\n' line endings, comment lines prefixed with '#'.
class CsvWriter {
public:
    void comment(const std::string& text);
    void row(const std::vector<std::string>& cells);
    [[nodiscard]] const std::string& text() const { return buffer_; }

    /// Writes the buffer to path (creating parent directories).
    void save(const std::string& path) const;

private:
    std::string buffer_;
};

void write_text_file(const std::string& path, const std::string& content);

} // namespace smilewing::cli
