#include "emograph/emoji.hpp"

#include <algorithm>
#include <cstdio>

#include "emograph/errors.hpp"
#include "emograph/unicode.hpp"

namespace emograph {

namespace u = unicode;

namespace {

// A serialized token must be something extract_emoji could have produced:
// pictograph-initial cluster, regional-indicator sequence, or keycap.
bool plausible_emoji_cluster(const std::vector<char32_t>& cps) {
  if (cps.empty()) return false;
  if (u::is_extended_pictographic(cps.front())) return true;
  if (u::is_regional_indicator(cps.front())) return true;
  if (u::is_keycap_base(cps.front()) &&
      std::find(cps.begin(), cps.end(), u::kCombiningKeycap) != cps.end()) {
    return true;
  }
  return false;
}

}  // namespace

std::string EmojiToken::serialize() const {
  std::string out;
  char buf[16];
  for (std::size_t k = 0; k < codepoints.size(); ++k) {
    if (k > 0) out.push_back('-');
    std::snprintf(buf, sizeof buf, "%X", static_cast<unsigned>(codepoints[k]));
    out += buf;
  }
  return out;
}

EmojiToken EmojiToken::parse(std::string_view serialized) {
  if (serialized.empty()) throw FormatError("empty token serialization");
  EmojiToken token;
  std::size_t pos = 0;
  while (pos <= serialized.size()) {
    const std::size_t dash = std::min(serialized.find('-', pos), serialized.size());
    const std::string_view field = serialized.substr(pos, dash - pos);
    if (field.empty()) throw FormatError("empty codepoint field in token: " + std::string(serialized));
    char32_t cp = 0;
    for (char c : field) {
      unsigned digit;
      if (c >= '0' && c <= '9') digit = static_cast<unsigned>(c - '0');
      else if (c >= 'A' && c <= 'F') digit = static_cast<unsigned>(c - 'A' + 10);
      else if (c >= 'a' && c <= 'f') digit = static_cast<unsigned>(c - 'a' + 10);
      else throw FormatError("non-hex character in token: " + std::string(serialized));
      cp = cp * 16 + digit;
      if (cp > 0x10FFFF) throw FormatError("codepoint out of range in token: " + std::string(serialized));
    }
    if (!u::is_scalar_value(cp)) {
      throw FormatError("invalid scalar value in token: " + std::string(serialized));
    }
    token.codepoints.push_back(cp);
    if (dash == serialized.size()) break;
    pos = dash + 1;
  }
  if (!plausible_emoji_cluster(token.codepoints)) {
    throw FormatError("not an emoji token: " + std::string(serialized));
  }
  return token;
}

std::string EmojiToken::to_utf8() const {
  return u::encode_utf8(codepoints);
}

MessageEmojiList extract_emoji(std::string_view text, std::size_t source_line,
                               const ExtractOptions& options) {
  const std::vector<char32_t> cps = u::decode_utf8(text, source_line);
  MessageEmojiList out;
  out.source_line = source_line;

  const std::size_t n = cps.size();
  std::size_t i = 0;
  while (i < n) {
    const char32_t cp = cps[i];

    // Flags: a pair of regional indicators forms one token; an unpaired
    // regional indicator is plain text.
    if (u::is_regional_indicator(cp)) {
      if (i + 1 < n && u::is_regional_indicator(cps[i + 1])) {
        out.tokens.push_back(EmojiToken{{cp, cps[i + 1]}});
        i += 2;
      } else {
        ++i;
      }
      continue;
    }

    // Keycaps: base, optional VS16, combining keycap.
    if (u::is_keycap_base(cp)) {
      std::size_t j = i + 1;
      if (j < n && cps[j] == u::kVariationSelector16) ++j;
      if (j < n && cps[j] == u::kCombiningKeycap) {
        out.tokens.push_back(EmojiToken{{cps.begin() + static_cast<std::ptrdiff_t>(i),
                                         cps.begin() + static_cast<std::ptrdiff_t>(j + 1)}});
        i = j + 1;
        continue;
      }
      ++i;
      continue;
    }

    if (!u::is_extended_pictographic(cp)) {
      ++i;
      continue;
    }

    // Pictograph-initial cluster: base, extenders, then any number of
    // ZWJ-joined pictographs with their own extenders.
    const std::size_t start = i;
    ++i;
    while (i < n && u::is_emoji_extend(cps[i])) ++i;
    while (i + 1 < n && cps[i] == u::kZeroWidthJoiner &&
           u::is_extended_pictographic(cps[i + 1])) {
      i += 2;
      while (i < n && u::is_emoji_extend(cps[i])) ++i;
    }

    EmojiToken token{{cps.begin() + static_cast<std::ptrdiff_t>(start),
                      cps.begin() + static_cast<std::ptrdiff_t>(i)}};
    if (options.collapse_skin_tones) {
      std::erase_if(token.codepoints, u::is_skin_tone_modifier);
    }
    out.tokens.push_back(std::move(token));
  }
  return out;
}

}  // namespace emograph
