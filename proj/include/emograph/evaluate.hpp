#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emograph/embedding.hpp"
#include "emograph/emoji.hpp"

namespace emograph {

/// Spearman's rank correlation with average ranks for ties (rank-transform
/// then Pearson). Throws LengthMismatch on unequal or too-short inputs,
/// DegenerateInput when either side is constant.
double spearman_rho(std::span<const double> xs, std::span<const double> ys);

struct GoldPair {
  std::string token_a;
  std::string token_b;
  double score;
};

/// Gold similarity judgments: unique unordered pairs with finite scores.
struct GoldSimilaritySet {
  std::vector<GoldPair> pairs;
};

/// TSV "token_a<TAB>token_b<TAB>score", hex-serialized tokens, header line
/// optional (detected by a non-numeric third field).
GoldSimilaritySet load_gold_similarity(const std::filesystem::path& path);

struct SimilarityReport {
  double rho = 0.0;
  std::size_t n_used = 0;
  std::size_t n_skipped = 0;
};

/// Cosine score for every gold pair whose tokens are both in vocabulary,
/// then Spearman against the gold scores. Out-of-vocabulary pairs are
/// skipped and counted. Throws NoOverlap when nothing is usable.
SimilarityReport eval_similarity(const EmbeddingSet& embeddings, const GoldSimilaritySet& gold);

enum class Sentiment { Positive, Negative, Neutral };
inline constexpr std::size_t kSentimentClasses = 3;

const char* sentiment_name(Sentiment s);
Sentiment parse_sentiment(std::string_view name);  // throws FormatError

struct LabeledMessage {
  std::string text;
  Sentiment label;
};

struct LabeledMessageSet {
  std::vector<LabeledMessage> messages;
};

/// TSV "label<TAB>text" with labels positive/negative/neutral.
LabeledMessageSet load_labeled_messages(const std::filesystem::path& path);

/// Mean of the embeddings of the in-vocabulary emoji in the message; the
/// zero vector when there are none (the caller counts those separately).
/// `options` must match the extraction options the vocabulary was built
/// with (e.g. skin-tone collapsing).
std::vector<double> message_features(std::string_view text, const EmbeddingSet& embeddings,
                                     const ExtractOptions& options = {});

/// Multinomial logistic regression over the three sentiment classes.
struct ClassifierModel {
  Matrix weights;  // kSentimentClasses × d
  std::array<double, kSentimentClasses> bias{};

  std::array<double, kSentimentClasses> predict_proba(std::span<const double> features) const;
  Sentiment predict(std::span<const double> features) const;
};

/// Softmax cross-entropy SGD with per-epoch reshuffling; deterministic for
/// a fixed seed. Requires at least two classes present, each with at least
/// one example whose features are nonzero (DegenerateTrainingSet otherwise).
ClassifierModel train_classifier(const LabeledMessageSet& train, const EmbeddingSet& embeddings,
                                 std::size_t epochs, double learning_rate, std::uint64_t seed,
                                 const ExtractOptions& options = {});

struct SentimentReport {
  double accuracy = 0.0;
  // confusion[true_class][predicted_class]
  std::array<std::array<std::size_t, kSentimentClasses>, kSentimentClasses> confusion{};
  std::array<double, kSentimentClasses> precision{};
  std::array<double, kSentimentClasses> recall{};
  std::size_t n_featureless = 0;
  std::size_t total = 0;
};

/// Scores every test message, including featureless ones (classified from
/// the zero feature vector). Throws EmptyTestSet.
SentimentReport eval_sentiment(const ClassifierModel& model, const LabeledMessageSet& test,
                               const EmbeddingSet& embeddings,
                               const ExtractOptions& options = {});

}  // namespace emograph
