#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <vector>

#include "emograph/emoji.hpp"

namespace emograph {

/// Streams a one-message-per-line UTF-8 corpus file, yielding the emoji of
/// each line. Memory use is one line at a time. In lenient mode lines with
/// malformed UTF-8 are skipped and counted instead of raising.
class CorpusReader {
 public:
  explicit CorpusReader(const std::filesystem::path& path, bool lenient = false,
                        ExtractOptions options = {});

  /// Next message, or nullopt at end of file. Line numbers are 1-based.
  std::optional<MessageEmojiList> next();

  std::size_t lines_read() const noexcept { return lines_read_; }
  std::size_t skipped_lines() const noexcept { return skipped_lines_; }

 private:
  std::ifstream in_;
  bool lenient_;
  ExtractOptions options_;
  std::size_t lines_read_ = 0;
  std::size_t skipped_lines_ = 0;
};

/// Reads a whole corpus into memory. Convenience wrapper over CorpusReader
/// for small files and tests.
std::vector<MessageEmojiList> read_corpus(const std::filesystem::path& path,
                                          bool lenient = false, ExtractOptions options = {});

/// A message can contribute a co-occurrence edge only when it contains at
/// least two distinct emoji.
bool has_multi_distinct_emoji(const MessageEmojiList& message);

struct FilterStats {
  std::size_t retained = 0;
  std::size_t dropped = 0;
};

/// Keeps exactly the messages with ≥2 distinct emoji, preserving order.
std::vector<MessageEmojiList> filter_multi_emoji(std::span<const MessageEmojiList> messages,
                                                 FilterStats* stats = nullptr);

}  // namespace emograph
