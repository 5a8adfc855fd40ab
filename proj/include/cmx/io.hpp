// File and text IO helpers shared by the CLI and the serializers: full
// precision number formatting, signal CSV (cell_id,value) and generic
// delimited output.

#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cmx {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Shortest representation preserving 17 significant digits.
inline std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path + " for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path);
  return os.str();
}

inline void write_text_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("write failure on " + path);
}

/// Quotes a CSV field when it contains a delimiter, quote or newline.
inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// One named scalar per row, e.g. a cochain keyed by canonical cell ids.
using SignalRows = std::vector<std::pair<std::string, double>>;

inline std::string signal_csv_text(const SignalRows& rows) {
  std::string out = "cell_id,value\n";
  for (const auto& [id, v] : rows) {
    out += csv_field(id);
    out += ',';
    out += format_real(v);
    out += '\n';
  }
  return out;
}

/// Parses `cell_id,value` CSV text (header required, row order kept).
inline SignalRows parse_signal_csv(std::string_view text) {
  SignalRows rows;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() : eol + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_no;
    if (line_no == 1) {
      if (line != "cell_id,value")
        throw IoError("signal CSV must start with header 'cell_id,value'");
      continue;
    }
    if (line.empty()) continue;
    std::string id;
    std::string_view num;
    if (line.front() == '"') {
      std::size_t i = 1;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] != '"') {
          id += line[i++];
        } else if (i + 1 < line.size() && line[i + 1] == '"') {
          id += '"';
          i += 2;
        } else {
          closed = true;
          ++i;
          break;
        }
      }
      if (!closed || i >= line.size() || line[i] != ',')
        throw IoError("signal CSV line " + std::to_string(line_no) + ": malformed quoted field");
      num = line.substr(i + 1);
    } else {
      // Cross-cell ids contain a comma in the class segment; the value
      // never does, so an unquoted line splits at the last comma.
      auto comma = line.rfind(',');
      if (comma == std::string_view::npos)
        throw IoError("signal CSV line " + std::to_string(line_no) + ": missing comma");
      id = std::string(line.substr(0, comma));
      num = line.substr(comma + 1);
    }
    double v = 0.0;
    auto [end, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc{} || end != num.data() + num.size())
      throw IoError("signal CSV line " + std::to_string(line_no) + ": bad number '" +
                    std::string(num) + "'");
    rows.emplace_back(std::move(id), v);
  }
  if (line_no == 0) throw IoError("signal CSV is empty");
  return rows;
}

/// Sparse matrix rows for the triplet export format.
struct TripletRow {
  std::string row_id;
  std::string col_id;
  int sign = 0;
};

inline std::string triplet_csv_text(const std::vector<TripletRow>& rows) {
  std::string out = "row_id,col_id,sign\n";
  for (const auto& t : rows) {
    out += csv_field(t.row_id);
    out += ',';
    out += csv_field(t.col_id);
    out += ',';
    out += std::to_string(t.sign);
    out += '\n';
  }
  return out;
}

} // namespace cmx
