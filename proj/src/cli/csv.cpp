#include "smilewing/cli/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "smilewing/errors.hpp"

namespace smilewing::cli {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void CsvWriter::comment(const std::string& text) { buffer_ += "# " + text + "\n"; }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += cells[i];
    }
    buffer_ += '\n';
}

void CsvWriter::save(const std::string& path) const { write_text_file(path, buffer_); }

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
        if (ec) throw Error("cannot create directory " + p.parent_path().string());
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error("write failed for " + path);
}

} // namespace smilewing::cli
