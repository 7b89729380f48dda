#include "emograph/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "emograph/emoji.hpp"
#include "emograph/errors.hpp"
#include "emograph/query.hpp"
#include "emograph/rng.hpp"

namespace emograph {

namespace {

// Average ranks (1-based); tied values share the mean of their positions.
std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DegenerateInput("constant input to correlation");
  return sxy / std::sqrt(sxx * syy);
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t pos = 0;
  while (true) {
    const std::size_t tab = line.find('\t', pos);
    if (tab == std::string::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

double spearman_rho(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw LengthMismatch("input lengths differ");
  if (xs.size() < 2) throw LengthMismatch("need at least two observations");
  const std::vector<double> rx = average_ranks(xs);
  const std::vector<double> ry = average_ranks(ys);
  return pearson(rx, ry);
}

GoldSimilaritySet load_gold_similarity(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFound(path.string());

  GoldSimilaritySet gold;
  std::set<std::pair<std::string, std::string>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_tabs(line);
    if (fields.size() != 3) throw FormatError("expected 3 tab-separated fields", line_no);
    double score = 0.0;
    if (!parse_double(fields[2], score)) {
      if (line_no == 1) continue;  // header line
      throw FormatError("non-numeric score \"" + fields[2] + "\"", line_no);
    }
    if (!std::isfinite(score)) throw FormatError("non-finite gold score", line_no);
    try {
      EmojiToken::parse(fields[0]);
      EmojiToken::parse(fields[1]);
    } catch (const FormatError& e) {
      throw FormatError(std::string("bad token: ") + e.what(), line_no);
    }
    auto key = fields[0] < fields[1] ? std::pair{fields[0], fields[1]}
                                     : std::pair{fields[1], fields[0]};
    if (!seen.insert(key).second) {
      throw FormatError("duplicate pair (" + fields[0] + ", " + fields[1] + ")", line_no);
    }
    gold.pairs.push_back({fields[0], fields[1], score});
  }
  return gold;
}

SimilarityReport eval_similarity(const EmbeddingSet& embeddings, const GoldSimilaritySet& gold) {
  std::vector<double> model_scores, gold_scores;
  SimilarityReport report;
  for (const GoldPair& pair : gold.pairs) {
    const auto a = embeddings.vocab.find(pair.token_a);
    const auto b = embeddings.vocab.find(pair.token_b);
    if (!a || !b) {
      ++report.n_skipped;
      continue;
    }
    double cos;
    try {
      cos = cosine_similarity(embeddings.vectors.row(*a), embeddings.vectors.row(*b));
    } catch (const ZeroVector&) {
      // A zero embedding row has no direction to compare; treat like OOV.
      ++report.n_skipped;
      continue;
    }
    model_scores.push_back(cos);
    gold_scores.push_back(pair.score);
  }
  if (model_scores.empty()) throw NoOverlap("no gold pair is covered by the vocabulary");
  report.n_used = model_scores.size();
  report.rho = spearman_rho(model_scores, gold_scores);
  return report;
}

const char* sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::Positive: return "positive";
    case Sentiment::Negative: return "negative";
    case Sentiment::Neutral: return "neutral";
  }
  return "?";
}

Sentiment parse_sentiment(std::string_view name) {
  if (name == "positive") return Sentiment::Positive;
  if (name == "negative") return Sentiment::Negative;
  if (name == "neutral") return Sentiment::Neutral;
  throw FormatError("unknown sentiment label \"" + std::string(name) + "\"");
}

LabeledMessageSet load_labeled_messages(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFound(path.string());

  LabeledMessageSet set;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw FormatError("expected \"label<TAB>text\"", line_no);
    Sentiment label;
    try {
      label = parse_sentiment(line.substr(0, tab));
    } catch (const FormatError& e) {
      throw FormatError(e.what(), line_no);
    }
    set.messages.push_back({line.substr(tab + 1), label});
  }
  if (set.messages.empty()) throw FormatError("no labeled messages in " + path.string());
  return set;
}

std::vector<double> message_features(std::string_view text, const EmbeddingSet& embeddings,
                                     const ExtractOptions& options) {
  const MessageEmojiList message = extract_emoji(text, 0, options);
  std::vector<double> features(embeddings.dimension(), 0.0);
  std::size_t found = 0;
  for (const EmojiToken& token : message.tokens) {
    const auto id = embeddings.vocab.find(token.serialize());
    if (!id) continue;
    const auto row = embeddings.vectors.row(*id);
    for (std::size_t k = 0; k < features.size(); ++k) features[k] += row[k];
    ++found;
  }
  if (found > 0) {
    for (double& f : features) f /= static_cast<double>(found);
  }
  return features;
}

std::array<double, kSentimentClasses> ClassifierModel::predict_proba(
    std::span<const double> features) const {
  std::array<double, kSentimentClasses> scores{};
  for (std::size_t c = 0; c < kSentimentClasses; ++c) {
    const auto w = weights.row(c);
    double s = bias[c];
    for (std::size_t k = 0; k < features.size(); ++k) s += w[k] * features[k];
    scores[c] = s;
  }
  const double max_score = *std::max_element(scores.begin(), scores.end());
  double sum = 0.0;
  for (double& s : scores) {
    s = std::exp(s - max_score);
    sum += s;
  }
  for (double& s : scores) s /= sum;
  return scores;
}

Sentiment ClassifierModel::predict(std::span<const double> features) const {
  const auto probs = predict_proba(features);
  std::size_t best = 0;
  for (std::size_t c = 1; c < kSentimentClasses; ++c) {
    if (probs[c] > probs[best]) best = c;
  }
  return static_cast<Sentiment>(best);
}

ClassifierModel train_classifier(const LabeledMessageSet& train, const EmbeddingSet& embeddings,
                                 std::size_t epochs, double learning_rate, std::uint64_t seed,
                                 const ExtractOptions& options) {
  if (train.messages.empty()) throw DegenerateTrainingSet("empty training set");

  const std::size_t d = embeddings.dimension();
  std::vector<std::vector<double>> features;
  std::vector<std::size_t> labels;
  features.reserve(train.messages.size());
  std::array<std::size_t, kSentimentClasses> nonzero_per_class{};
  std::set<std::size_t> classes_present;
  for (const LabeledMessage& msg : train.messages) {
    features.push_back(message_features(msg.text, embeddings, options));
    labels.push_back(static_cast<std::size_t>(msg.label));
    classes_present.insert(labels.back());
    const bool nonzero = std::any_of(features.back().begin(), features.back().end(),
                                     [](double v) { return v != 0.0; });
    if (nonzero) ++nonzero_per_class[labels.back()];
  }
  if (classes_present.size() < 2) {
    throw DegenerateTrainingSet("training set has a single class");
  }
  for (std::size_t c : classes_present) {
    if (nonzero_per_class[c] == 0) {
      throw DegenerateTrainingSet(std::string("class \"") +
                                  sentiment_name(static_cast<Sentiment>(c)) +
                                  "\" has no example with nonzero features");
    }
  }

  ClassifierModel model;
  model.weights = Matrix(kSentimentClasses, d);

  Rng rng(seed);
  std::vector<std::size_t> order(train.messages.size());
  std::iota(order.begin(), order.end(), 0);

  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    // Fisher-Yates with the pinned RNG keeps runs reproducible.
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[rng.next_below(i)]);
    }
    for (std::size_t idx : order) {
      const auto& x = features[idx];
      const auto probs = model.predict_proba(x);
      for (std::size_t c = 0; c < kSentimentClasses; ++c) {
        const double err = probs[c] - (c == labels[idx] ? 1.0 : 0.0);
        auto w = model.weights.row(c);
        for (std::size_t k = 0; k < d; ++k) w[k] -= learning_rate * err * x[k];
        model.bias[c] -= learning_rate * err;
      }
    }
  }
  return model;
}

SentimentReport eval_sentiment(const ClassifierModel& model, const LabeledMessageSet& test,
                               const EmbeddingSet& embeddings, const ExtractOptions& options) {
  if (test.messages.empty()) throw EmptyTestSet();

  SentimentReport report;
  report.total = test.messages.size();
  std::size_t correct = 0;
  for (const LabeledMessage& msg : test.messages) {
    const std::vector<double> x = message_features(msg.text, embeddings, options);
    if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
      ++report.n_featureless;
    }
    const auto truth = static_cast<std::size_t>(msg.label);
    const auto predicted = static_cast<std::size_t>(model.predict(x));
    ++report.confusion[truth][predicted];
    if (truth == predicted) ++correct;
  }
  report.accuracy = static_cast<double>(correct) / static_cast<double>(report.total);

  for (std::size_t c = 0; c < kSentimentClasses; ++c) {
    std::size_t row_sum = 0, col_sum = 0;
    for (std::size_t o = 0; o < kSentimentClasses; ++o) {
      row_sum += report.confusion[c][o];
      col_sum += report.confusion[o][c];
    }
    report.recall[c] =
        row_sum == 0 ? 0.0 : static_cast<double>(report.confusion[c][c]) / static_cast<double>(row_sum);
    report.precision[c] =
        col_sum == 0 ? 0.0 : static_cast<double>(report.confusion[c][c]) / static_cast<double>(col_sum);
  }
  return report;
}

}  // namespace emograph
