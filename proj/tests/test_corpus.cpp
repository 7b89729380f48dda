#include <doctest.h>

#include <random>
#include <string>

#include "emograph/corpus.hpp"
#include "emograph/errors.hpp"
#include "testutil.hpp"

using namespace emograph;

TEST_CASE("stream_corpus yields one list per line, preserving line numbers") {
  testutil::TempDir dir("corpus");
  const auto path = dir.file("three.txt");
  testutil::write_file(path, "first \U0001F602\nno emoji here\nlast ❤️ \U0001F525\n");

  const auto messages = read_corpus(path);
  REQUIRE(messages.size() == 3);
  CHECK(messages[0].tokens.size() == 1);
  CHECK(messages[0].source_line == 1);
  CHECK(messages[1].tokens.empty());
  CHECK(messages[1].source_line == 2);
  CHECK(messages[2].tokens.size() == 2);
  CHECK(messages[2].source_line == 3);
}

TEST_CASE("empty file yields empty sequence") {
  testutil::TempDir dir("corpus");
  const auto path = dir.file("empty.txt");
  testutil::write_file(path, "");
  CHECK(read_corpus(path).empty());
}

TEST_CASE("CRLF line endings and missing trailing newline") {
  testutil::TempDir dir("corpus");
  const auto path = dir.file("crlf.txt");
  testutil::write_file(path, "\U0001F602 a\r\n\U0001F60D b\r\nlast \U0001F525");
  const auto messages = read_corpus(path);
  REQUIRE(messages.size() == 3);
  CHECK(messages[0].tokens[0].serialize() == "1F602");
  CHECK(messages[2].tokens[0].serialize() == "1F525");
}

TEST_CASE("missing file raises FileNotFound") {
  CHECK_THROWS_AS(CorpusReader("/nonexistent/emograph-test.txt"), FileNotFound);
}

TEST_CASE("strict mode reports the offending line; lenient mode skips and counts") {
  testutil::TempDir dir("corpus");
  const auto path = dir.file("mixed.txt");
  std::string content = "fine \U0001F602\n";
  content += "bad ";
  content += char(0xFF);
  content += "\nalso fine \U0001F60D \U0001F602\n";
  testutil::write_file(path, content);

  SUBCASE("strict") {
    CorpusReader reader(path);
    CHECK(reader.next().has_value());
    try {
      reader.next();
      FAIL("expected InvalidEncoding");
    } catch (const InvalidEncoding& e) {
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("lenient") {
    CorpusReader reader(path, /*lenient=*/true);
    std::size_t count = 0;
    while (reader.next()) ++count;
    CHECK(count == 2);
    CHECK(reader.skipped_lines() == 1);
    CHECK(reader.lines_read() == 3);
  }
}

TEST_CASE("1000-line synthetic corpus matches the per-line oracle") {
  testutil::TempDir dir("corpus");
  const auto path = dir.file("big.txt");
  std::mt19937_64 rng(123);
  std::string content;
  std::vector<std::string> lines;
  for (int i = 0; i < 1000; ++i) {
    lines.push_back(testutil::random_message(rng, 4));
    content += lines.back();
    content += '\n';
  }
  testutil::write_file(path, content);

  const auto messages = read_corpus(path);
  REQUIRE(messages.size() == 1000);
  std::size_t total_tokens = 0, oracle_tokens = 0;
  for (std::size_t i = 0; i < messages.size(); ++i) {
    total_tokens += messages[i].tokens.size();
    oracle_tokens += testutil::oracle_emoji_tokens(lines[i]).size();
  }
  CHECK(total_tokens == oracle_tokens);
}

TEST_CASE("filter_multi_emoji keeps only messages with two distinct emoji") {
  const MessageEmojiList repeated = extract_emoji("\U0001F602 \U0001F602", 1);
  const MessageEmojiList pair = extract_emoji("\U0001F602 ❤️", 2);
  const MessageEmojiList single = extract_emoji("\U0001F602", 3);
  const MessageEmojiList none = extract_emoji("text only", 4);
  const MessageEmojiList triple = extract_emoji("\U0001F602 \U0001F602 \U0001F525", 5);

  CHECK_FALSE(has_multi_distinct_emoji(repeated));
  CHECK(has_multi_distinct_emoji(pair));
  CHECK_FALSE(has_multi_distinct_emoji(single));
  CHECK_FALSE(has_multi_distinct_emoji(none));
  CHECK(has_multi_distinct_emoji(triple));

  const std::vector<MessageEmojiList> all{repeated, pair, single, none, triple};
  FilterStats stats;
  const auto kept = filter_multi_emoji(all, &stats);
  REQUIRE(kept.size() == 2);
  CHECK(stats.retained == 2);
  CHECK(stats.dropped == 3);
  // Order preserved, no mutation.
  CHECK(kept[0].source_line == 2);
  CHECK(kept[1].source_line == 5);
  CHECK(kept[0].tokens == pair.tokens);
}

TEST_CASE("filter count matches a brute-force census on random corpora") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 5; ++round) {
    std::vector<MessageEmojiList> messages;
    for (int i = 0; i < 100; ++i) {
      messages.push_back(extract_emoji(testutil::random_message(rng, 3), i + 1));
    }
    std::size_t expected = 0;
    for (const auto& message : messages) {
      std::set<std::string> distinct;
      for (const auto& token : message.tokens) distinct.insert(token.serialize());
      if (distinct.size() >= 2) ++expected;
    }
    FilterStats stats;
    const auto kept = filter_multi_emoji(messages, &stats);
    CHECK(kept.size() == expected);
    CHECK(stats.retained == expected);
    CHECK(stats.retained + stats.dropped == messages.size());
  }
}
