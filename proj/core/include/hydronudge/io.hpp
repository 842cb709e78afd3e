#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hydronudge {

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Writes files into one output directory and lists them, with content
/// hashes, in manifest.json.
class OutputDirectory {
 public:
  explicit OutputDirectory(std::filesystem::path root);

  const std::filesystem::path& root() const { return root_; }
  std::filesystem::path write(const std::string& name, const std::string& contents);
  /// Registers a file written by other means.
  void add(const std::string& name);
  /// Sorted by name; the manifest has no timestamps.
  std::filesystem::path write_manifest() const;
  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path root_;
  std::vector<std::string> files_;
};

std::string read_text_file(const std::filesystem::path& path);

/// Minimal CSV reader: header row plus numeric rows.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const;
};
CsvTable parse_csv(const std::string& text);

}  // namespace hydronudge
