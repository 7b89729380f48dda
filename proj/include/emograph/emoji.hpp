#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace emograph {

/// One emoji occurrence: the full grapheme cluster (base pictograph plus
/// variation selectors, skin-tone modifiers and ZWJ-joined components),
/// or a flag / keycap sequence.
struct EmojiToken {
  std::vector<char32_t> codepoints;

  /// Uppercase hex scalar values joined by "-", e.g. "1F602" or
  /// "1F469-200D-1F469-200D-1F467". Round-trips via parse().
  std::string serialize() const;

  /// Inverse of serialize(). Throws FormatError on malformed input or a
  /// sequence that could not start an emoji token.
  static EmojiToken parse(std::string_view serialized);

  std::string to_utf8() const;

  bool operator==(const EmojiToken&) const = default;
};

/// Emoji extracted from one message, in occurrence order, duplicates kept.
struct MessageEmojiList {
  std::vector<EmojiToken> tokens;
  std::size_t source_line = 0;
};

struct ExtractOptions {
  /// Strip skin-tone modifiers so 👍🏽 and 👍 map to the same token.
  bool collapse_skin_tones = false;
};

/// Scans UTF-8 text and returns every emoji grapheme cluster in occurrence
/// order. Clusters qualify when the first codepoint is Extended_Pictographic,
/// or they form a regional-indicator pair (flag) or keycap sequence. A lone
/// unpaired regional indicator is not a token. Throws InvalidEncoding (with
/// `source_line`) on malformed UTF-8.
MessageEmojiList extract_emoji(std::string_view text, std::size_t source_line = 0,
                               const ExtractOptions& options = {});

}  // namespace emograph
