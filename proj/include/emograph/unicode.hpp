#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace emograph::unicode {

inline constexpr char32_t kZeroWidthJoiner = 0x200D;
inline constexpr char32_t kCombiningKeycap = 0x20E3;
inline constexpr char32_t kVariationSelector16 = 0xFE0F;

/// Strict UTF-8 decode. Rejects overlong forms, surrogates, values above
/// U+10FFFF and truncated sequences; throws InvalidEncoding carrying
/// `line` and the byte offset of the bad sequence.
std::vector<char32_t> decode_utf8(std::string_view text, std::size_t line = 0);

std::string encode_utf8(std::span<const char32_t> codepoints);

/// True for a valid Unicode scalar value (≤ U+10FFFF, not a surrogate).
bool is_scalar_value(char32_t cp);

/// Unicode Extended_Pictographic property (UTS #51 data, including the
/// reserved ranges set aside for future emoji).
bool is_extended_pictographic(char32_t cp);

/// Codepoints that extend an emoji cluster without starting one:
/// variation selectors, skin-tone modifiers, the combining keycap and
/// tag characters.
bool is_emoji_extend(char32_t cp);

bool is_regional_indicator(char32_t cp);

bool is_skin_tone_modifier(char32_t cp);

/// '0'-'9', '#' and '*' — the bases of keycap sequences.
bool is_keycap_base(char32_t cp);

}  // namespace emograph::unicode
