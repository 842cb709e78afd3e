#include "hydronudge/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "hydronudge/error.hpp"

namespace hydronudge {

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error("SHA-256 digest failed");
  std::ostringstream out;
  for (unsigned int k = 0; k < len; ++k) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return out.str();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_file(const std::filesystem::path& path) { return sha256_hex(read_text_file(path)); }

OutputDirectory::OutputDirectory(std::filesystem::path root) : root_(std::move(root)) {
  std::error_code ec;
  std::filesystem::create_directories(root_, ec);
  if (ec) throw ValidationError("cannot create output directory '" + root_.string() + "': " + ec.message());
}

std::filesystem::path OutputDirectory::write(const std::string& name, const std::string& contents) {
  const auto path = root_ / name;
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << contents;
  if (!out) throw Error("failed writing '" + path.string() + "'");
  add(name);
  return path;
}

void OutputDirectory::add(const std::string& name) {
  if (std::find(files_.begin(), files_.end(), name) == files_.end()) files_.push_back(name);
}

std::filesystem::path OutputDirectory::write_manifest() const {
  std::vector<std::string> names = files_;
  std::sort(names.begin(), names.end());
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& n : names) {
    const auto path = root_ / n;
    nlohmann::ordered_json entry;
    entry["file"] = n;
    entry["bytes"] = std::filesystem::file_size(path);
    entry["sha256"] = sha256_file(path);
    list.push_back(entry);
  }
  nlohmann::ordered_json manifest;
  manifest["files"] = list;
  const auto path = root_ / "manifest.json";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path.string() + "'");
  return path;
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ValidationError("no column '" + name + "'");
  const auto c = std::size_t(it - header.begin());
  std::vector<double> out;
  for (const auto& r : rows) out.push_back(r.at(c));
  return out;
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      const auto a = cell.find_first_not_of(' '), b = cell.find_last_not_of(' ');
      cells.push_back(a == std::string::npos ? "" : cell.substr(a, b - a + 1));
    }
    if (table.header.empty()) {
      table.header = cells;
      continue;
    }
    if (cells.size() != table.header.size())
      throw ValidationError("line " + std::to_string(lineno) + ": expected " + std::to_string(table.header.size()) +
                            " columns");
    std::vector<double> row;
    for (const auto& c : cells) {
      double x = 0.0;
      const auto r = std::from_chars(c.data(), c.data() + c.size(), x);
      if (r.ec != std::errc() || r.ptr != c.data() + c.size())
        throw ValidationError("line " + std::to_string(lineno) + ": non-numeric cell '" + c + "'");
      row.push_back(x);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw ValidationError("empty CSV");
  return table;
}

}  // namespace hydronudge
