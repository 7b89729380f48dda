// emograph: build emoji co-occurrence graphs from text corpora, train
// first/second-order proximity embeddings, and query/evaluate them.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "emograph/corpus.hpp"
#include "emograph/embedding.hpp"
#include "emograph/errors.hpp"
#include "emograph/evaluate.hpp"
#include "emograph/graph.hpp"
#include "emograph/manifest.hpp"
#include "emograph/model.hpp"
#include "emograph/query.hpp"
#include "emograph/trainer.hpp"
#include "emograph/version.hpp"

namespace {

using namespace emograph;
using Clock = std::chrono::steady_clock;

std::string format_score(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// Accepts a token either as its hex serialization or as a raw emoji.
std::string resolve_token(const std::string& arg) {
  try {
    return EmojiToken::parse(arg).serialize();
  } catch (const FormatError&) {
    // Fall through to raw-emoji interpretation.
  }
  const MessageEmojiList extracted = extract_emoji(arg);
  if (extracted.tokens.size() != 1) {
    throw UnknownToken(arg + " (expected one emoji or a hex token serialization)");
  }
  return extracted.tokens.front().serialize();
}

void emit_manifest(RunManifest& manifest, Clock::time_point started,
                   const std::optional<std::string>& explicit_path,
                   const std::optional<std::string>& default_path) {
  manifest.duration_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - started).count();
  const std::optional<std::string> path = explicit_path ? explicit_path : default_path;
  if (path) manifest.write(*path);
  std::cerr << manifest.to_text();
}

void print_results(const std::vector<SimilarityResult>& results) {
  for (std::size_t rank = 0; rank < results.size(); ++rank) {
    const EmojiToken token = EmojiToken::parse(results[rank].token);
    std::cout << rank + 1 << '\t' << results[rank].token << '\t' << token.to_utf8() << '\t'
              << format_score(results[rank].score) << '\n';
  }
}

struct CommonOptions {
  std::optional<std::string> manifest_path;
};

int run(int argc, char** argv) {
  CLI::App app{"emoji co-occurrence graph embeddings"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const std::map<std::string, Order> order_names{{"first", Order::First},
                                                 {"second", Order::Second}};
  const std::map<std::string, LrSchedule> schedule_names{
      {"linear-decay", LrSchedule::LinearDecay}, {"constant", LrSchedule::Constant}};
  const std::map<std::string, Optimizer> optimizer_names{{"sgd", Optimizer::Sgd},
                                                         {"rmsprop", Optimizer::RmsProp}};

  CommonOptions common;

  // ---- build-graph ----
  auto* build = app.add_subcommand("build-graph",
                                   "build a co-occurrence graph from a one-message-per-line corpus");
  std::string corpus_path, graph_out;
  bool lenient = false, collapse_skin_tones = false;
  build->add_option("corpus", corpus_path, "corpus file, one message per line")
      ->required()
      ->envname("EMOGRAPH_CORPUS");
  build->add_option("-o,--out", graph_out, "output graph file")
      ->required()
      ->envname("EMOGRAPH_OUT");
  build->add_flag("--lenient", lenient, "skip lines with invalid UTF-8 instead of failing")
      ->envname("EMOGRAPH_LENIENT");
  build->add_flag("--collapse-skin-tones", collapse_skin_tones,
                  "strip skin-tone modifiers so all variants share one node")
      ->envname("EMOGRAPH_COLLAPSE_SKIN_TONES");
  build->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  build->callback([&]() {
    const auto started = Clock::now();
    RunManifest manifest;
    manifest.subcommand = "build-graph";
    manifest.add("lenient", lenient ? "true" : "false");
    manifest.add("collapse_skin_tones", collapse_skin_tones ? "true" : "false");
    manifest.add_input("corpus", corpus_path);

    CorpusReader reader(corpus_path, lenient, ExtractOptions{collapse_skin_tones});
    GraphBuilder builder;
    FilterStats filter;
    while (auto message = reader.next()) {
      if (has_multi_distinct_emoji(*message)) {
        builder.add_message(*message);
        ++filter.retained;
      } else {
        ++filter.dropped;
      }
    }
    const CooccurrenceGraph graph = builder.build();
    save_graph(graph, graph_out);
    manifest.add_output("graph", graph_out);

    std::cout << "lines " << reader.lines_read() << "\n";
    if (lenient) std::cout << "skipped_invalid_lines " << reader.skipped_lines() << "\n";
    std::cout << "messages_retained " << filter.retained << "\n"
              << "messages_dropped " << filter.dropped << "\n"
              << "|V| " << graph.node_count() << "\n"
              << "|E| " << graph.edge_count() << "\n"
              << "W " << graph.total_weight() << "\n";

    std::vector<Edge> heaviest(graph.edges().begin(), graph.edges().end());
    std::sort(heaviest.begin(), heaviest.end(), [&](const Edge& a, const Edge& b) {
      if (a.weight != b.weight) return a.weight > b.weight;
      return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    std::cout << "most frequently co-occurring pairs:\n";
    for (std::size_t k = 0; k < heaviest.size() && k < 5; ++k) {
      const Edge& e = heaviest[k];
      const std::string ta = graph.vocabulary().token(e.i);
      const std::string tb = graph.vocabulary().token(e.j);
      std::cout << "(" << EmojiToken::parse(ta).to_utf8() << ", " << EmojiToken::parse(tb).to_utf8()
                << ")\t" << ta << '\t' << tb << '\t' << e.weight << "\n";
    }
    emit_manifest(manifest, started, common.manifest_path, graph_out + ".manifest");
  });

  // ---- train ----
  auto* train_cmd = app.add_subcommand("train", "train embeddings on a graph file");
  std::string train_graph_path, embeddings_out;
  TrainingConfig config;
  bool exact = false;
  train_cmd->add_option("graph", train_graph_path, "graph file from build-graph")
      ->required()
      ->envname("EMOGRAPH_GRAPH");
  train_cmd->add_option("-o,--out", embeddings_out, "output embedding file")
      ->required()
      ->envname("EMOGRAPH_OUT");
  train_cmd->add_option("--order", config.order, "proximity objective: first or second")
      ->transform(CLI::CheckedTransformer(order_names, CLI::ignore_case))
      ->envname("EMOGRAPH_ORDER");
  train_cmd->add_option("--dim", config.dimension, "embedding dimension")
      ->envname("EMOGRAPH_DIM");
  train_cmd->add_option("--lr", config.initial_learning_rate, "initial learning rate")
      ->envname("EMOGRAPH_LR");
  train_cmd->add_option("--batch-size", config.batch_size, "edges per batch")
      ->envname("EMOGRAPH_BATCH_SIZE");
  train_cmd->add_option("--batches", config.total_batches, "number of batches")
      ->envname("EMOGRAPH_BATCHES");
  train_cmd->add_option("--negatives", config.negatives, "negative samples per edge")
      ->envname("EMOGRAPH_NEGATIVES");
  train_cmd->add_option("--noise-exponent", config.noise_exponent,
                        "noise distribution exponent over degrees")
      ->envname("EMOGRAPH_NOISE_EXPONENT");
  train_cmd->add_option("--seed", config.seed, "RNG seed")->envname("EMOGRAPH_SEED");
  train_cmd->add_option("--lr-schedule", config.lr_schedule, "linear-decay or constant")
      ->transform(CLI::CheckedTransformer(schedule_names, CLI::ignore_case))
      ->envname("EMOGRAPH_LR_SCHEDULE");
  train_cmd->add_option("--optimizer", config.optimizer, "sgd or rmsprop")
      ->transform(CLI::CheckedTransformer(optimizer_names, CLI::ignore_case))
      ->envname("EMOGRAPH_OPTIMIZER");
  train_cmd->add_flag("--exact", exact,
                      "full-gradient descent on the exact objective (small graphs; "
                      "--batches is the iteration count)")
      ->envname("EMOGRAPH_EXACT");
  train_cmd->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  train_cmd->callback([&]() {
    const auto started = Clock::now();
    config.validate();

    RunManifest manifest;
    manifest.subcommand = "train";
    manifest.add("mode", exact ? "exact" : "sampled");
    manifest.add("order", config.order == Order::Second ? "second" : "first");
    manifest.add("dimension", std::to_string(config.dimension));
    manifest.add("learning_rate", format_full(config.initial_learning_rate));
    manifest.add("batch_size", std::to_string(config.batch_size));
    manifest.add("total_batches", std::to_string(config.total_batches));
    manifest.add("negatives", std::to_string(config.negatives));
    manifest.add("noise_exponent", format_full(config.noise_exponent));
    manifest.add("lr_schedule",
                 config.lr_schedule == LrSchedule::Constant ? "constant" : "linear-decay");
    manifest.add("optimizer", config.optimizer == Optimizer::RmsProp ? "rmsprop" : "sgd");
    manifest.add("seed", std::to_string(config.seed));
    manifest.add_input("graph", train_graph_path);

    const CooccurrenceGraph graph = load_graph(train_graph_path);
    TrainStats stats;
    const EmbeddingMatrix embeddings =
        exact ? train_exact(graph, config) : train(graph, config, &stats);
    save_embeddings(embeddings, graph.vocabulary(), embeddings_out);
    manifest.add_output("embeddings", embeddings_out);

    std::cout << "|V| " << graph.node_count() << "\n"
              << "|E| " << graph.edge_count() << "\n";
    if (!exact) std::cout << "skipped_negatives " << stats.skipped_negatives << "\n";
    std::cout << "wrote " << embeddings_out << "\n";
    emit_manifest(manifest, started, common.manifest_path, embeddings_out + ".manifest");
  });

  // ---- similar ----
  auto* similar_cmd = app.add_subcommand("similar", "top-k most similar tokens");
  std::string query_token, query_embeddings;
  std::size_t top_k = 10;
  similar_cmd->add_option("token", query_token, "emoji or hex token serialization")->required();
  similar_cmd->add_option("--embeddings", query_embeddings, "embedding file")
      ->required()
      ->envname("EMOGRAPH_EMBEDDINGS");
  similar_cmd->add_option("-k", top_k, "number of results")->envname("EMOGRAPH_K");
  similar_cmd->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  similar_cmd->callback([&]() {
    const auto started = Clock::now();
    RunManifest manifest;
    manifest.subcommand = "similar";
    manifest.add("token", resolve_token(query_token));
    manifest.add("k", std::to_string(top_k));
    manifest.add_input("embeddings", query_embeddings);

    const EmbeddingSet set = load_embeddings(query_embeddings);
    print_results(top_k_similar(set, resolve_token(query_token), top_k));
    emit_manifest(manifest, started, common.manifest_path, std::nullopt);
  });

  // ---- analogy ----
  auto* analogy_cmd = app.add_subcommand("analogy", "a : b = c : ? by vector arithmetic");
  std::string token_a, token_b, token_c, analogy_embeddings;
  std::size_t analogy_k = 10;
  analogy_cmd->add_option("a", token_a)->required();
  analogy_cmd->add_option("b", token_b)->required();
  analogy_cmd->add_option("c", token_c)->required();
  analogy_cmd->add_option("--embeddings", analogy_embeddings, "embedding file")
      ->required()
      ->envname("EMOGRAPH_EMBEDDINGS");
  analogy_cmd->add_option("-k", analogy_k, "number of results")->envname("EMOGRAPH_K");
  analogy_cmd->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  analogy_cmd->callback([&]() {
    const auto started = Clock::now();
    RunManifest manifest;
    manifest.subcommand = "analogy";
    manifest.add("a", resolve_token(token_a));
    manifest.add("b", resolve_token(token_b));
    manifest.add("c", resolve_token(token_c));
    manifest.add("k", std::to_string(analogy_k));
    manifest.add_input("embeddings", analogy_embeddings);

    const EmbeddingSet set = load_embeddings(analogy_embeddings);
    print_results(analogy(set, resolve_token(token_a), resolve_token(token_b),
                          resolve_token(token_c), analogy_k));
    emit_manifest(manifest, started, common.manifest_path, std::nullopt);
  });

  // ---- eval-sim ----
  auto* evalsim_cmd =
      app.add_subcommand("eval-sim", "Spearman correlation against a gold similarity file");
  std::string sim_embeddings, gold_path;
  std::optional<std::string> sim_report_path;
  evalsim_cmd->add_option("--embeddings", sim_embeddings, "embedding file")
      ->required()
      ->envname("EMOGRAPH_EMBEDDINGS");
  evalsim_cmd->add_option("--gold", gold_path, "gold similarity TSV")
      ->required()
      ->envname("EMOGRAPH_GOLD");
  evalsim_cmd->add_option("--report", sim_report_path, "machine-readable report file")
      ->envname("EMOGRAPH_REPORT");
  evalsim_cmd->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  evalsim_cmd->callback([&]() {
    const auto started = Clock::now();
    RunManifest manifest;
    manifest.subcommand = "eval-sim";
    manifest.add_input("embeddings", sim_embeddings);
    manifest.add_input("gold", gold_path);

    const EmbeddingSet set = load_embeddings(sim_embeddings);
    const GoldSimilaritySet gold = load_gold_similarity(gold_path);
    const SimilarityReport report = eval_similarity(set, gold);

    char rho[16];
    std::snprintf(rho, sizeof rho, "%.3f", report.rho);
    std::cout << "rho " << rho << "\n"
              << "pairs_used " << report.n_used << "\n"
              << "pairs_skipped " << report.n_skipped << "\n";

    const std::string report_path = sim_report_path ? *sim_report_path : gold_path + ".report";
    std::ofstream out(report_path, std::ios::binary);
    if (!out.is_open()) throw IoError("cannot open for writing: " + report_path);
    out << "rho=" << format_full(report.rho) << "\n"
        << "pairs_used=" << report.n_used << "\n"
        << "pairs_skipped=" << report.n_skipped << "\n";
    manifest.add_output("report", report_path);
    emit_manifest(manifest, started, common.manifest_path, report_path + ".manifest");
  });

  // ---- eval-sentiment ----
  auto* evalsent_cmd = app.add_subcommand(
      "eval-sentiment", "3-class sentiment classification with emoji-embedding features");
  std::string sent_embeddings, train_set_path, test_set_path;
  std::optional<std::string> sent_report_path;
  std::size_t epochs = 50;
  double classifier_lr = 0.1;
  std::uint64_t classifier_seed = 42;
  bool sent_collapse_skin_tones = false;
  evalsent_cmd->add_option("--embeddings", sent_embeddings, "embedding file")
      ->required()
      ->envname("EMOGRAPH_EMBEDDINGS");
  evalsent_cmd->add_option("--train", train_set_path, "labeled training TSV (label<TAB>text)")
      ->required()
      ->envname("EMOGRAPH_TRAIN");
  evalsent_cmd->add_option("--test", test_set_path, "labeled test TSV")
      ->required()
      ->envname("EMOGRAPH_TEST");
  evalsent_cmd->add_option("--epochs", epochs, "training epochs")->envname("EMOGRAPH_EPOCHS");
  evalsent_cmd->add_option("--lr", classifier_lr, "classifier learning rate")
      ->envname("EMOGRAPH_LR");
  evalsent_cmd->add_option("--seed", classifier_seed, "RNG seed")->envname("EMOGRAPH_SEED");
  evalsent_cmd
      ->add_flag("--collapse-skin-tones", sent_collapse_skin_tones,
                 "match a vocabulary built with skin-tone collapsing")
      ->envname("EMOGRAPH_COLLAPSE_SKIN_TONES");
  evalsent_cmd->add_option("--report", sent_report_path, "machine-readable report file")
      ->envname("EMOGRAPH_REPORT");
  evalsent_cmd->add_option("--manifest", common.manifest_path, "manifest file path")
      ->envname("EMOGRAPH_MANIFEST");

  evalsent_cmd->callback([&]() {
    const auto started = Clock::now();
    RunManifest manifest;
    manifest.subcommand = "eval-sentiment";
    manifest.add("epochs", std::to_string(epochs));
    manifest.add("learning_rate", format_full(classifier_lr));
    manifest.add("seed", std::to_string(classifier_seed));
    manifest.add("collapse_skin_tones", sent_collapse_skin_tones ? "true" : "false");
    manifest.add_input("embeddings", sent_embeddings);
    manifest.add_input("train", train_set_path);
    manifest.add_input("test", test_set_path);

    const ExtractOptions extract_options{sent_collapse_skin_tones};
    const EmbeddingSet set = load_embeddings(sent_embeddings);
    const LabeledMessageSet train_set = load_labeled_messages(train_set_path);
    const LabeledMessageSet test_set = load_labeled_messages(test_set_path);
    const ClassifierModel model = train_classifier(train_set, set, epochs, classifier_lr,
                                                   classifier_seed, extract_options);
    const SentimentReport report = eval_sentiment(model, test_set, set, extract_options);

    char acc[16];
    std::snprintf(acc, sizeof acc, "%.3f", report.accuracy);
    std::cout << "accuracy " << acc << "\n"
              << "test_messages " << report.total << "\n"
              << "featureless " << report.n_featureless << "\n";
    for (std::size_t c = 0; c < kSentimentClasses; ++c) {
      const auto s = static_cast<Sentiment>(c);
      std::cout << sentiment_name(s) << " precision " << format_score(report.precision[c])
                << " recall " << format_score(report.recall[c]) << "\n";
    }
    std::cout << "confusion rows=true cols=predicted (positive negative neutral):\n";
    for (std::size_t t = 0; t < kSentimentClasses; ++t) {
      std::cout << sentiment_name(static_cast<Sentiment>(t));
      for (std::size_t p = 0; p < kSentimentClasses; ++p) std::cout << '\t' << report.confusion[t][p];
      std::cout << "\n";
    }

    const std::string report_path =
        sent_report_path ? *sent_report_path : test_set_path + ".report";
    std::ofstream out(report_path, std::ios::binary);
    if (!out.is_open()) throw IoError("cannot open for writing: " + report_path);
    out << "accuracy=" << format_full(report.accuracy) << "\n"
        << "test_messages=" << report.total << "\n"
        << "featureless=" << report.n_featureless << "\n";
    for (std::size_t c = 0; c < kSentimentClasses; ++c) {
      const auto s = static_cast<Sentiment>(c);
      out << "precision." << sentiment_name(s) << "=" << format_full(report.precision[c]) << "\n"
          << "recall." << sentiment_name(s) << "=" << format_full(report.recall[c]) << "\n";
    }
    for (std::size_t t = 0; t < kSentimentClasses; ++t) {
      for (std::size_t p = 0; p < kSentimentClasses; ++p) {
        out << "confusion." << sentiment_name(static_cast<Sentiment>(t)) << "."
            << sentiment_name(static_cast<Sentiment>(p)) << "=" << report.confusion[t][p] << "\n";
      }
    }
    manifest.add_output("report", report_path);
    emit_manifest(manifest, started, common.manifest_path, report_path + ".manifest");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const emograph::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
