#ifndef CITENET_TOOLS_OUTPUT_HPP
#define CITENET_TOOLS_OUTPUT_HPP

#include <filesystem>
#include <fstream>
#include <string>

namespace citenet::cli {

/// An output file that only appears at its final path once commit() has
/// succeeded. Content goes to a sibling temporary file which is renamed
/// into place; an uncommitted file is removed on destruction.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

 private:
  std::filesystem::path path_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

/// Writes `content` to `path` atomically.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& content);

/// Lowercase hex SHA-256 of a byte string / of a file's content.
std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& path);

}  // namespace citenet::cli

#endif  // CITENET_TOOLS_OUTPUT_HPP
