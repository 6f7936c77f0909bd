#pragma once
// Minimal CSV emission with a provenance header comment block.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "aggrnet/common.hpp"

namespace aggrnet {

class CsvWriter {
 public:
  CsvWriter(const std::string& path,
            const std::map<std::string, std::string>& provenance,
            const std::string& hash, const std::vector<std::string>& columns)
      : out_(path) {
    if (!out_) throw ConfigError("cannot open output file '" + path + "'");
    out_ << "# config_hash=" << hash << "\n";
    for (const auto& [k, v] : provenance) out_ << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
      out_ << columns[i] << (i + 1 < columns.size() ? "," : "\n");
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << cells[i] << (i + 1 < cells.size() ? "," : "\n");
  }

  void flush() { out_.flush(); }

  static std::string num(double v, int precision = 12) {
    std::ostringstream os;
    os.precision(precision);
    os << v;
    return os.str();
  }

 private:
  std::ofstream out_;
};

}  // namespace aggrnet
