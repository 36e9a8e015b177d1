#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace egp {

// Raw-post ingestion: JSON-lines in, tokenized PostRecords out. Emojis are
// recognized both as Unicode pictographic clusters (variation selectors and
// ZWJ chains kept together) and as bracket-tagged platform emojis of the
// form [emoji:NAME], which have no Unicode encoding at all.

enum class Sentiment : uint8_t { Negative = 0, Neutral = 1, Positive = 2 };

const char* sentiment_name(Sentiment s);
std::optional<Sentiment> sentiment_from_name(const std::string& name);

struct PostLabels {
  std::optional<int64_t> likes;
  std::optional<int64_t> collects;
  std::optional<int64_t> comments;
  std::optional<Sentiment> sentiment;

  bool operator==(const PostLabels&) const = default;
};

struct EmojiOccurrence {
  std::string emoji_id;   // "U+1F602", "U+1F469+U+200D+U+1F4BB" or "custom:NAME"
  uint32_t position = 0;  // index into the interleaved word/emoji stream

  bool operator==(const EmojiOccurrence&) const = default;
};

struct PostRecord {
  std::string post_id;
  std::vector<std::string> tokens;  // words only, in stream order
  std::vector<EmojiOccurrence> emoji_occurrences;
  std::vector<std::string> hashtags;  // deduplicated, first-appearance order
  PostLabels labels;

  // words + emojis combined
  size_t stream_length() const { return tokens.size() + emoji_occurrences.size(); }

  bool operator==(const PostRecord&) const = default;
};

struct CorpusConfig {
  bool lowercase = true;
};

struct ParseError : std::runtime_error {
  size_t line_number;
  ParseError(size_t line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
};

// Emoji extraction over a UTF-8 string. Positions are indexes into the
// interleaved word/emoji stream produced by the same tokenizer pass.
std::vector<EmojiOccurrence> extract_emojis(const std::string& text);

// Full tokenizer pass: words (lowercased, split on whitespace/punctuation,
// "#word" recorded as hashtag and kept as a plain token) plus emojis with
// stream positions.
PostRecord tokenize_post(const std::string& post_id, const std::string& text,
                         const CorpusConfig& config = {});

std::vector<PostRecord> parse_corpus(std::istream& stream, const CorpusConfig& config = {});

// Canonical JSON-lines form: reconstructs a text field that tokenizes back
// to the identical record.
std::string serialize_record(const PostRecord& record);
void serialize_corpus(std::ostream& os, const std::vector<PostRecord>& records);

// Single-record text reconstruction (the "text" JSON value, unescaped).
std::string reconstruct_text(const PostRecord& record);

// Decode an emoji id back to its surface form ("custom:x" -> "[emoji:x]",
// "U+1F602" -> UTF-8 codepoints).
std::string emoji_surface_form(const std::string& emoji_id);

struct Vocabulary {
  std::vector<std::string> words;   // sorted lexicographically
  std::vector<std::string> emojis;  // top-K by frequency, ties lexicographic
  std::vector<std::string> posts;   // input order
  std::vector<uint64_t> emoji_frequency;  // aligned with emojis

  std::map<std::string, uint32_t> word_index;
  std::map<std::string, uint32_t> emoji_index;
  std::map<std::string, uint32_t> post_index;

  size_t n_words() const { return words.size(); }
  size_t n_emojis() const { return emojis.size(); }
  size_t n_posts() const { return posts.size(); }

  void rebuild_indexes();
};

struct VocabularyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// top_k_emojis >= 1. Throws VocabularyError if the corpus has no emojis;
// sets *truncated_k=false and warns (via return field) when K exceeds the
// number of distinct emojis.
Vocabulary build_vocabulary(const std::vector<PostRecord>& records, size_t top_k_emojis,
                            bool* k_exceeded_distinct = nullptr);

// Stream interleaving helper: item i is either a word (emoji=false, index
// into tokens) or an emoji occurrence (emoji=true, index into occurrences).
struct StreamItem {
  bool is_emoji;
  uint32_t index;
};
std::vector<StreamItem> interleave_stream(const PostRecord& record);

}  // namespace egp
