#include "emograph/embedding.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "emograph/emoji.hpp"
#include "emograph/errors.hpp"

namespace emograph {

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

void save_embeddings(const Matrix& vectors, const Vocabulary& vocab,
                     const std::filesystem::path& path) {
  if (vocab.empty()) throw FormatError("refusing to write embeddings for empty vocabulary");
  if (vectors.rows() != vocab.size()) {
    throw DimensionMismatch("embedding rows do not match vocabulary size");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out.is_open()) throw IoError("cannot open for writing: " + path.string());

  out << vocab.size() << ' ' << vectors.cols() << '\n';
  char buf[32];
  for (NodeId id = 0; id < vocab.size(); ++id) {
    out << vocab.token(id);
    for (double v : vectors.row(id)) {
      std::snprintf(buf, sizeof buf, " %.9g", v);
      out << buf;
    }
    out << '\n';
  }
  if (!out.good()) throw IoError("write failed: " + path.string());
}

void save_embeddings(const EmbeddingMatrix& embeddings, const Vocabulary& vocab,
                     const std::filesystem::path& path) {
  save_embeddings(embeddings.vertex, vocab, path);
}

EmbeddingSet load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw FileNotFound(path.string());

  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  };

  if (!next_line()) throw FormatError("empty embedding file", 0);
  std::istringstream header(line);
  std::size_t n_rows = 0, dim = 0;
  if (!(header >> n_rows >> dim) || n_rows == 0 || dim == 0) {
    throw FormatError("bad embedding header", line_no);
  }

  EmbeddingSet set;
  set.vectors = Matrix(n_rows, dim);
  for (std::size_t r = 0; r < n_rows; ++r) {
    if (!next_line()) {
      throw FormatError("declared " + std::to_string(n_rows) + " rows, found " +
                            std::to_string(r),
                        line_no);
    }
    std::istringstream fields(line);
    std::string token;
    if (!(fields >> token)) throw FormatError("missing token", line_no);
    EmojiToken::parse(token);
    if (set.vocab.add(token) != r) throw FormatError("duplicate token " + token, line_no);
    auto row = set.vectors.row(r);
    for (std::size_t c = 0; c < dim; ++c) {
      std::string value;
      if (!(fields >> value)) throw FormatError("row has fewer than declared columns", line_no);
      char* end = nullptr;
      row[c] = std::strtod(value.c_str(), &end);
      if (end != value.c_str() + value.size() || !std::isfinite(row[c])) {
        throw FormatError("bad float \"" + value + "\"", line_no);
      }
    }
    std::string extra;
    if (fields >> extra) throw FormatError("row has more than declared columns", line_no);
  }
  if (next_line() && !line.empty()) {
    throw FormatError("trailing content after declared rows", line_no);
  }
  return set;
}

}  // namespace emograph
