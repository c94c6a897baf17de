#include "writers.hpp"

#include <cstdio>
#include <stdexcept>

namespace blochmap::cli {

namespace fs = std::filesystem;

std::string format_real(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_ppm(const fs::path& path, int width, int height, std::span<const Rgb> pixels,
               const std::string& config_line) {
    if (pixels.size() != static_cast<std::size_t>(width) * height) {
        throw std::invalid_argument("write_ppm: pixel buffer does not match resolution");
    }
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("write_ppm: cannot open " + tmp.string());
        out << "P6\n# " << config_line << "\n" << width << " " << height << "\n255\n";
        out.write(reinterpret_cast<const char*>(pixels.data()),
                  static_cast<std::streamsize>(pixels.size() * sizeof(Rgb)));
        if (!out) throw std::runtime_error("write_ppm: short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

CsvWriter::CsvWriter(fs::path path, const std::string& config_line,
                     std::span<const std::string> columns)
    : target_(std::move(path)), tmp_(target_.string() + ".tmp"), out_(tmp_, std::ios::trunc) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + tmp_.string());
    out_ << "# " << config_line << "\n";
    row(columns);
}

CsvWriter::~CsvWriter() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        fs::remove(tmp_, ec); // abandoned writer: drop the partial file
    }
}

void CsvWriter::row(std::span<const std::string> fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out_ << ',';
        out_ << fields[k];
    }
    out_ << '\n';
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

void CsvWriter::commit() {
    out_.flush();
    if (!out_) throw std::runtime_error("CsvWriter: write failed for " + tmp_.string());
    out_.close();
    fs::rename(tmp_, target_);
    committed_ = true;
}

} // namespace blochmap::cli
