#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "emograph/emoji.hpp"
#include "emograph/errors.hpp"
#include "emograph/unicode.hpp"
#include "testutil.hpp"

using namespace emograph;

namespace {

std::vector<std::string> serialized(const MessageEmojiList& message) {
  std::vector<std::string> out;
  for (const auto& token : message.tokens) out.push_back(token.serialize());
  return out;
}

}  // namespace

TEST_CASE("extract_emoji finds emoji in occurrence order, drops text") {
  const auto message = extract_emoji("I got betrayed by \U0001F52A, I want to kill you \U0001F620");
  CHECK(serialized(message) == std::vector<std::string>{"1F52A", "1F620"});
}

TEST_CASE("extract_emoji on empty and emoji-free strings") {
  CHECK(extract_emoji("").tokens.empty());
  CHECK(extract_emoji("plain text, no pictographs 123 #*").tokens.empty());
}

TEST_CASE("modifier and ZWJ sequences stay single tokens") {
  const auto message = extract_emoji("hi \U0001F44D\U0001F3FD there \U0001F469‍\U0001F469‍\U0001F467");
  REQUIRE(message.tokens.size() == 2);
  CHECK(message.tokens[0].serialize() == "1F44D-1F3FD");
  CHECK(message.tokens[1].serialize() == "1F469-200D-1F469-200D-1F467");

  // Matches the reference segmentation oracle on the same string.
  CHECK(serialized(message) ==
        testutil::oracle_emoji_tokens("hi \U0001F44D\U0001F3FD there \U0001F469‍\U0001F469‍\U0001F467"));
}

TEST_CASE("flags pair regional indicators; lone indicators are text") {
  CHECK(serialized(extract_emoji("\U0001F1FA\U0001F1F8!")) ==
        std::vector<std::string>{"1F1FA-1F1F8"});
  // Four indicators pair up into two flags.
  CHECK(serialized(extract_emoji("\U0001F1FA\U0001F1F8\U0001F1EE\U0001F1F3")) ==
        std::vector<std::string>{"1F1FA-1F1F8", "1F1EE-1F1F3"});
  CHECK(extract_emoji("\U0001F1FA plain").tokens.empty());
}

TEST_CASE("keycap sequences with and without VS16") {
  CHECK(serialized(extract_emoji("press 3️⃣ now")) ==
        std::vector<std::string>{"33-FE0F-20E3"});
  CHECK(serialized(extract_emoji("press 3⃣ now")) == std::vector<std::string>{"33-20E3"});
  CHECK(serialized(extract_emoji("#️⃣")) == std::vector<std::string>{"23-FE0F-20E3"});
  // Digit without the combining keycap is plain text.
  CHECK(extract_emoji("3 things").tokens.empty());
}

TEST_CASE("duplicates are preserved in order") {
  const auto message = extract_emoji("\U0001F602 and \U0001F602 again ❤️");
  CHECK(serialized(message) == std::vector<std::string>{"1F602", "1F602", "2764-FE0F"});
}

TEST_CASE("collapse_skin_tones option merges modifier variants") {
  ExtractOptions options;
  options.collapse_skin_tones = true;
  CHECK(serialized(extract_emoji("\U0001F44D\U0001F3FD", 0, options)) ==
        std::vector<std::string>{"1F44D"});
  CHECK(serialized(extract_emoji("\U0001F44D\U0001F3FD", 0, {})) ==
        std::vector<std::string>{"1F44D-1F3FD"});
}

TEST_CASE("invalid UTF-8 raises InvalidEncoding with the line number") {
  const std::string bad_continuation = std::string("ok ") + char(0xE2) + char(0x28) + char(0xA1);
  CHECK_THROWS_AS(extract_emoji(bad_continuation, 7), InvalidEncoding);
  try {
    extract_emoji(bad_continuation, 7);
  } catch (const InvalidEncoding& e) {
    CHECK(e.line() == 7);
    CHECK(e.byte_offset() == 3);
  }

  CHECK_THROWS_AS(extract_emoji(std::string(1, char(0xFF))), InvalidEncoding);
  // Truncated 4-byte sequence.
  CHECK_THROWS_AS(extract_emoji(std::string("\xF0\x9F\x98")), InvalidEncoding);
  // Overlong encoding of NUL.
  CHECK_THROWS_AS(extract_emoji(std::string("\xC0\x80")), InvalidEncoding);
  // UTF-8-encoded surrogate half.
  CHECK_THROWS_AS(extract_emoji(std::string("\xED\xA0\x80")), InvalidEncoding);
  // Above U+10FFFF.
  CHECK_THROWS_AS(extract_emoji(std::string("\xF4\x90\x80\x80")), InvalidEncoding);
}

TEST_CASE("token serialization round-trips") {
  for (const std::string& raw : testutil::emoji_pool()) {
    const auto message = extract_emoji(raw);
    REQUIRE(message.tokens.size() == 1);
    const EmojiToken& token = message.tokens.front();
    const EmojiToken reparsed = EmojiToken::parse(token.serialize());
    CHECK(reparsed == token);
    CHECK(reparsed.serialize() == token.serialize());
    CHECK(token.to_utf8() == raw);
  }
}

TEST_CASE("EmojiToken::parse rejects malformed serializations") {
  CHECK_THROWS_AS(EmojiToken::parse(""), FormatError);
  CHECK_THROWS_AS(EmojiToken::parse("1F602-"), FormatError);
  CHECK_THROWS_AS(EmojiToken::parse("-1F602"), FormatError);
  CHECK_THROWS_AS(EmojiToken::parse("XYZ"), FormatError);
  CHECK_THROWS_AS(EmojiToken::parse("110000"), FormatError);   // beyond U+10FFFF
  CHECK_THROWS_AS(EmojiToken::parse("D800"), FormatError);     // surrogate
  CHECK_THROWS_AS(EmojiToken::parse("61"), FormatError);       // letter 'a', not an emoji
  CHECK_THROWS_AS(EmojiToken::parse("33"), FormatError);       // keycap base without keycap
  CHECK(EmojiToken::parse("1f602").serialize() == "1F602");    // lowercase accepted, canonicalized
}

TEST_CASE("extraction equals the reference segmentation oracle on random text") {
  std::mt19937_64 rng(20240811);
  for (int round = 0; round < 300; ++round) {
    const std::string line = testutil::random_message(rng, 5);
    CAPTURE(line);
    CHECK(serialized(extract_emoji(line)) == testutil::oracle_emoji_tokens(line));
  }
}

TEST_CASE("extracted codepoints form a subsequence of the input") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 200; ++round) {
    const std::string line = testutil::random_message(rng, 4);
    const auto input = unicode::decode_utf8(line);
    const auto message = extract_emoji(line);

    std::vector<char32_t> concatenated;
    for (const auto& token : message.tokens) {
      concatenated.insert(concatenated.end(), token.codepoints.begin(), token.codepoints.end());
    }
    std::size_t pos = 0;
    for (char32_t cp : concatenated) {
      while (pos < input.size() && input[pos] != cp) ++pos;
      REQUIRE(pos < input.size());
      ++pos;
    }
  }
}

TEST_CASE("random byte strings either extract cleanly or raise InvalidEncoding") {
  std::mt19937_64 rng(0xFEED);
  for (int round = 0; round < 2000; ++round) {
    const std::size_t len = rng() % 24;
    std::string bytes(len, '\0');
    for (char& b : bytes) b = static_cast<char>(rng() & 0xFF);
    try {
      const auto message = extract_emoji(bytes, round + 1);
      for (const auto& token : message.tokens) {
        CHECK(EmojiToken::parse(token.serialize()) == token);
      }
    } catch (const InvalidEncoding& e) {
      CHECK(e.line() == static_cast<std::size_t>(round + 1));
      CHECK(e.byte_offset() < bytes.size());
    }
  }
}

TEST_CASE("extraction is deterministic and stable under re-serialization") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const std::string line = testutil::random_message(rng, 4);
    const auto first = extract_emoji(line);
    const auto second = extract_emoji(line);
    REQUIRE(first.tokens == second.tokens);
    for (const auto& token : first.tokens) {
      CHECK(EmojiToken::parse(token.serialize()) == token);
    }
  }
}
