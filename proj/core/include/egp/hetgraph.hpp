#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "egp/corpus.hpp"

namespace egp {

// Immutable post-word-emoji graph with typed undirected edges:
//   post-emoji  : emoji occurs in the post
//   post-word   : the word is a hashtag keyword of the post
//   word-emoji  : word within the k-position window of an emoji occurrence
// Multiplicity is collapsed to 1; emojis outside the vocabulary contribute
// no nodes or edges.

enum class NodeType : uint8_t { Post = 0, Word = 1, Emoji = 2 };
inline constexpr size_t kNodeTypeCount = 3;
const char* node_type_name(NodeType t);

struct NodeRef {
  NodeType type;
  uint32_t index;

  auto operator<=>(const NodeRef&) const = default;
};

using EdgeList = std::vector<std::pair<uint32_t, uint32_t>>;  // type-local indexes

// row-major dense matrix of doubles
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
  double* row(size_t i) { return data.data() + i * cols; }
  const double* row(size_t i) const { return data.data() + i * cols; }
  double& at(size_t i, size_t j) { return data[i * cols + j]; }
  double at(size_t i, size_t j) const { return data[i * cols + j]; }

  bool operator==(const Matrix&) const = default;
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FeatureScheme : uint8_t { HashedBagOfTokens = 0, SeededGaussian = 1 };

struct HetGraph {
  Vocabulary vocab;
  uint32_t neighbor_window_k = 2;

  EdgeList edges_post_emoji;  // (post, emoji)
  EdgeList edges_post_word;   // (post, word)
  EdgeList edges_word_emoji;  // (word, emoji)

  // flattened node ids: posts, then words, then emojis
  std::vector<std::vector<uint32_t>> adjacency;  // sorted neighbor lists

  std::array<Matrix, kNodeTypeCount> node_features;  // indexed by NodeType
  uint32_t feature_dim = 0;
  uint64_t feature_seed = 0;

  size_t count(NodeType t) const {
    switch (t) {
      case NodeType::Post: return vocab.n_posts();
      case NodeType::Word: return vocab.n_words();
      case NodeType::Emoji: return vocab.n_emojis();
    }
    return 0;
  }
  size_t total_nodes() const {
    return vocab.n_posts() + vocab.n_words() + vocab.n_emojis();
  }

  uint32_t flat_id(NodeRef n) const;
  NodeRef node_of(uint32_t flat) const;

  const std::vector<uint32_t>& neighbors(NodeRef n) const { return adjacency[flat_id(n)]; }
  size_t degree(NodeRef n) const { return neighbors(n).size(); }

  const double* features_of(NodeRef n) const {
    return node_features[static_cast<size_t>(n.type)].row(n.index);
  }

  bool has_edge(NodeRef a, NodeRef b) const;

  size_t total_edges() const {
    return edges_post_emoji.size() + edges_post_word.size() + edges_word_emoji.size();
  }

  // throws GraphError if adjacency and edge sets disagree
  void validate() const;
};

// vocab must come from the same records; neighbor_window_k >= 1.
HetGraph build_graph(const std::vector<PostRecord>& records, const Vocabulary& vocab,
                     uint32_t neighbor_window_k);

// Post and word nodes receive hashed bag-of-tokens features (token hashed to
// one of dim buckets with +-1 sign, L2-normalized); emoji nodes receive
// seeded N(0, 1/dim) rows. Deterministic given seed.
void init_node_features(HetGraph& graph, uint32_t dim, uint64_t seed);

// The hash used for token features; tests re-derive it independently.
// bucket = fnv1a64(token) % dim, sign = high bit of the hash.
void hashed_bag_feature(const std::vector<std::string>& tokens, uint32_t dim, double* out);

struct DegreeHistogram {
  std::vector<uint64_t> buckets;  // buckets[d] = number of nodes with degree d
  double mean = 0.0;
  double stddev = 0.0;
  uint64_t max_degree = 0;
};

struct GraphStats {
  std::array<uint64_t, kNodeTypeCount> node_counts{};
  uint64_t edges_post_emoji = 0, edges_post_word = 0, edges_word_emoji = 0;
  std::array<DegreeHistogram, kNodeTypeCount> degree;
  // occurrence-based (includes duplicates, from vocabulary frequencies)
  double emoji_occurrences_per_post_mean = 0.0;
  // degree-based (distinct in-vocabulary emojis per post)
  double emoji_per_post_mean = 0.0;
  double emoji_per_post_std = 0.0;
};

GraphStats graph_stats(const HetGraph& graph);
std::string graph_stats_json(const GraphStats& stats);

// Portable "HGR1" sectioned binary file.
void save_graph(std::ostream& os, const HetGraph& graph);
HetGraph load_graph(std::istream& is);
void save_graph_file(const std::string& path, const HetGraph& graph);
HetGraph load_graph_file(const std::string& path);

// FNV-1a over the file bytes; recorded in checkpoints.
uint64_t graph_file_fingerprint(const std::string& path);

}  // namespace egp
