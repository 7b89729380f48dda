#include "emograph/corpus.hpp"

#include <string>
#include <unordered_set>

#include "emograph/errors.hpp"

namespace emograph {

CorpusReader::CorpusReader(const std::filesystem::path& path, bool lenient,
                           ExtractOptions options)
    : in_(path, std::ios::binary), lenient_(lenient), options_(options) {
  if (!in_.is_open()) throw FileNotFound(path.string());
}

std::optional<MessageEmojiList> CorpusReader::next() {
  std::string line;
  while (std::getline(in_, line)) {
    ++lines_read_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      return extract_emoji(line, lines_read_, options_);
    } catch (const InvalidEncoding&) {
      if (!lenient_) throw;
      ++skipped_lines_;
    }
  }
  return std::nullopt;
}

std::vector<MessageEmojiList> read_corpus(const std::filesystem::path& path, bool lenient,
                                          ExtractOptions options) {
  CorpusReader reader(path, lenient, options);
  std::vector<MessageEmojiList> out;
  while (auto message = reader.next()) out.push_back(std::move(*message));
  return out;
}

bool has_multi_distinct_emoji(const MessageEmojiList& message) {
  if (message.tokens.size() < 2) return false;
  std::unordered_set<std::string> distinct;
  for (const EmojiToken& token : message.tokens) {
    distinct.insert(token.serialize());
    if (distinct.size() >= 2) return true;
  }
  return false;
}

std::vector<MessageEmojiList> filter_multi_emoji(std::span<const MessageEmojiList> messages,
                                                 FilterStats* stats) {
  std::vector<MessageEmojiList> out;
  FilterStats local;
  for (const MessageEmojiList& message : messages) {
    if (has_multi_distinct_emoji(message)) {
      out.push_back(message);
      ++local.retained;
    } else {
      ++local.dropped;
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace emograph
