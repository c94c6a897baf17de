// writers.hpp — Atomic file output: binary P6 pixmaps and CSV tables with a
// config echo. Files are written to a temporary path and renamed into place so
// partial files are never left behind.
#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "run_config.hpp"

namespace blochmap::cli {

std::string format_real(double x); // 17 significant digits, '.' decimal separator

// P6, 8-bit RGB, one comment line carrying the config echo.
void write_ppm(const std::filesystem::path& path, int width, int height,
               std::span<const Rgb> pixels, const std::string& config_line);

// RFC-4180-style rows with a leading block of '# key=value' comment lines.
class CsvWriter {
  public:
    CsvWriter(std::filesystem::path path, const std::string& config_line,
              std::span<const std::string> columns);
    ~CsvWriter();

    CsvWriter(const CsvWriter&) = delete;
    CsvWriter& operator=(const CsvWriter&) = delete;

    void row(std::span<const std::string> fields);
    void comment(const std::string& text); // '# ...' line, e.g. trailing run stats
    void commit();                         // flush and rename into place

  private:
    std::filesystem::path target_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    bool committed_ = false;
};

} // namespace blochmap::cli
