#include "egp/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

namespace egp {

namespace {

using json = nlohmann::json;

// ---- UTF-8 ----------------------------------------------------------------

// Decodes one codepoint at byte offset i; advances i. Invalid bytes are
// returned as their Latin-1 value so they flow through as ordinary text.
uint32_t decode_utf8(const std::string& s, size_t& i) {
  const auto byte = [&](size_t k) { return static_cast<unsigned char>(s[k]); };
  const unsigned char b0 = byte(i);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](size_t k) { return k < s.size() && (byte(k) & 0xC0) == 0x80; };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    uint32_t cp = (b0 & 0x1Fu) << 6 | (byte(i + 1) & 0x3Fu);
    i += 2;
    return cp;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    uint32_t cp = (b0 & 0x0Fu) << 12 | (byte(i + 1) & 0x3Fu) << 6 | (byte(i + 2) & 0x3Fu);
    i += 3;
    return cp;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    uint32_t cp = (b0 & 0x07u) << 18 | (byte(i + 1) & 0x3Fu) << 12 | (byte(i + 2) & 0x3Fu) << 6 |
                  (byte(i + 3) & 0x3Fu);
    i += 4;
    return cp;
  }
  ++i;
  return b0;
}

void encode_utf8(uint32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// ---- Emoji classification ---------------------------------------------------

constexpr uint32_t kZWJ = 0x200D;
constexpr uint32_t kVS15 = 0xFE0E;
constexpr uint32_t kVS16 = 0xFE0F;

bool is_skin_tone(uint32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }
bool is_regional_indicator(uint32_t cp) { return cp >= 0x1F1E6 && cp <= 0x1F1FF; }

// Common emoji blocks; not exhaustive Unicode emoji-data, but covers the
// pictographs seen in social-media corpora. Unrecognized sequences stay text.
bool is_emoji_base(uint32_t cp) {
  return (cp >= 0x1F300 && cp <= 0x1F5FF) ||  // misc symbols & pictographs
         (cp >= 0x1F600 && cp <= 0x1F64F) ||  // emoticons
         (cp >= 0x1F680 && cp <= 0x1F6FF) ||  // transport & map
         (cp >= 0x1F900 && cp <= 0x1F9FF) ||  // supplemental symbols
         (cp >= 0x1FA70 && cp <= 0x1FAFF) ||  // symbols & pictographs ext-A
         (cp >= 0x1F000 && cp <= 0x1F0FF) ||  // mahjong, dominoes, cards
         (cp >= 0x2600 && cp <= 0x26FF) ||    // misc symbols
         (cp >= 0x2700 && cp <= 0x27BF) ||    // dingbats
         (cp >= 0x2B00 && cp <= 0x2BFF) ||    // arrows, stars, shapes
         is_regional_indicator(cp) || cp == 0x203C || cp == 0x2049;
}

std::string codepoint_id(uint32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "U+%04X", cp);
  return buf;
}

struct Scanned {
  // Every surface item in byte order: word characters or an emoji cluster.
  struct Item {
    bool is_emoji;
    std::string text;  // word text or emoji id
    bool is_hashtag;   // words only
  };
  std::vector<Item> items;
};

bool is_word_separator(uint32_t cp) {
  if (cp == '#') return true;  // handled by the hashtag rule at word start
  if (cp < 0x80) return std::isspace(static_cast<int>(cp)) || std::ispunct(static_cast<int>(cp));
  switch (cp) {
    case 0x3000:  // ideographic space
    case 0x3001:  // 、
    case 0x3002:  // 。
    case 0xFF01:  // ！
    case 0xFF0C:  // ，
    case 0xFF1A:  // ：
    case 0xFF1B:  // ；
    case 0xFF1F:  // ？
    case 0x2018:
    case 0x2019:
    case 0x201C:
    case 0x201D:
    case 0x2026:  // …
    case 0x00A0:
      return true;
    default:
      return false;
  }
}

// Tries to read a [emoji:NAME] tag at byte offset i. Returns the id and
// advances i past the tag on success.
bool read_custom_tag(const std::string& s, size_t& i, std::string& id) {
  static const std::string prefix = "[emoji:";
  if (s.compare(i, prefix.size(), prefix) != 0) return false;
  const size_t name_begin = i + prefix.size();
  size_t j = name_begin;
  while (j < s.size() && s[j] != ']') {
    const char c = s[j];
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '_' || c == '-' || c == '+';
    if (!ok) return false;
    ++j;
  }
  if (j >= s.size() || j == name_begin) return false;
  id = "custom:" + s.substr(name_begin, j - name_begin);
  i = j + 1;
  return true;
}

// Reads one emoji cluster starting at i (which must point at an emoji base
// codepoint). Consumes variation selectors, skin tones and ZWJ chains;
// regional indicators pair up into flags.
std::string read_emoji_cluster(const std::string& s, size_t& i, uint32_t first) {
  std::vector<uint32_t> kept{first};
  if (is_regional_indicator(first)) {
    size_t save = i;
    if (i < s.size()) {
      uint32_t cp = decode_utf8(s, i);
      if (is_regional_indicator(cp)) {
        kept.push_back(cp);
      } else {
        i = save;
      }
    }
  } else {
    for (;;) {
      size_t save = i;
      if (i >= s.size()) break;
      uint32_t cp = decode_utf8(s, i);
      if (cp == kVS15 || cp == kVS16) continue;  // presentation-only, dropped from id
      if (is_skin_tone(cp)) {
        kept.push_back(cp);
        continue;
      }
      if (cp == kZWJ) {
        if (i < s.size()) {
          uint32_t nxt = decode_utf8(s, i);
          if (is_emoji_base(nxt)) {
            kept.push_back(kZWJ);
            kept.push_back(nxt);
            continue;
          }
        }
        i = save;  // dangling ZWJ stays outside the cluster
        break;
      }
      i = save;
      break;
    }
  }
  std::string id = codepoint_id(kept[0]);
  for (size_t k = 1; k < kept.size(); ++k) id += "+" + codepoint_id(kept[k]);
  return id;
}

Scanned scan(const std::string& text, const CorpusConfig& config) {
  Scanned out;
  std::string word;
  bool word_is_hashtag = false;

  auto flush_word = [&] {
    if (!word.empty()) {
      out.items.push_back({false, word, word_is_hashtag});
      word.clear();
    }
    word_is_hashtag = false;
  };

  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '[') {
      std::string id;
      size_t j = i;
      if (read_custom_tag(text, j, id)) {
        flush_word();
        out.items.push_back({true, id, false});
        i = j;
        continue;
      }
    }
    size_t j = i;
    const uint32_t cp = decode_utf8(text, j);
    if (is_emoji_base(cp)) {
      flush_word();
      std::string id = read_emoji_cluster(text, j, cp);
      out.items.push_back({true, id, false});
      i = j;
      continue;
    }
    if (cp == '#') {
      flush_word();
      word_is_hashtag = true;  // applies to the immediately following word
      i = j;
      continue;
    }
    if (is_word_separator(cp) || cp == kZWJ || cp == kVS15 || cp == kVS16) {
      flush_word();
      i = j;
      continue;
    }
    uint32_t lowered = cp;
    if (config.lowercase && cp < 0x80) lowered = static_cast<uint32_t>(std::tolower(static_cast<int>(cp)));
    encode_utf8(lowered, word);
    i = j;
  }
  flush_word();
  return out;
}

}  // namespace

const char* sentiment_name(Sentiment s) {
  switch (s) {
    case Sentiment::Negative: return "negative";
    case Sentiment::Neutral: return "neutral";
    case Sentiment::Positive: return "positive";
  }
  return "neutral";
}

std::optional<Sentiment> sentiment_from_name(const std::string& name) {
  if (name == "negative") return Sentiment::Negative;
  if (name == "neutral") return Sentiment::Neutral;
  if (name == "positive") return Sentiment::Positive;
  return std::nullopt;
}

std::vector<EmojiOccurrence> extract_emojis(const std::string& text) {
  const Scanned scanned = scan(text, CorpusConfig{});
  std::vector<EmojiOccurrence> out;
  uint32_t pos = 0;
  for (const auto& item : scanned.items) {
    if (item.is_emoji) out.push_back({item.text, pos});
    ++pos;
  }
  return out;
}

PostRecord tokenize_post(const std::string& post_id, const std::string& text,
                         const CorpusConfig& config) {
  const Scanned scanned = scan(text, config);
  PostRecord rec;
  rec.post_id = post_id;
  uint32_t pos = 0;
  for (const auto& item : scanned.items) {
    if (item.is_emoji) {
      rec.emoji_occurrences.push_back({item.text, pos});
    } else {
      rec.tokens.push_back(item.text);
      if (item.is_hashtag &&
          std::find(rec.hashtags.begin(), rec.hashtags.end(), item.text) == rec.hashtags.end()) {
        rec.hashtags.push_back(item.text);
      }
    }
    ++pos;
  }
  return rec;
}

std::vector<PostRecord> parse_corpus(std::istream& stream, const CorpusConfig& config) {
  std::vector<PostRecord> records;
  std::set<std::string> seen_ids;
  std::string line;
  size_t line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError(line_no, "record is not a JSON object");
    if (!j.contains("id") || !j["id"].is_string()) throw ParseError(line_no, "missing \"id\" string");
    if (!j.contains("text") || !j["text"].is_string())
      throw ParseError(line_no, "missing \"text\" string");
    const std::string id = j["id"].get<std::string>();
    if (!seen_ids.insert(id).second) throw ParseError(line_no, "duplicate post_id \"" + id + "\"");

    PostRecord rec = tokenize_post(id, j["text"].get<std::string>(), config);
    auto read_count = [&](const char* key) -> std::optional<int64_t> {
      if (!j.contains(key)) return std::nullopt;
      if (!j[key].is_number_integer() || j[key].get<int64_t>() < 0)
        throw ParseError(line_no, std::string("\"") + key + "\" must be a non-negative integer");
      return j[key].get<int64_t>();
    };
    rec.labels.likes = read_count("likes");
    rec.labels.collects = read_count("collects");
    rec.labels.comments = read_count("comments");
    if (j.contains("sentiment")) {
      if (!j["sentiment"].is_string())
        throw ParseError(line_no, "\"sentiment\" must be a string");
      auto s = sentiment_from_name(j["sentiment"].get<std::string>());
      if (!s) throw ParseError(line_no, "unknown sentiment \"" + j["sentiment"].get<std::string>() + "\"");
      rec.labels.sentiment = s;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::string emoji_surface_form(const std::string& emoji_id) {
  if (emoji_id.rfind("custom:", 0) == 0) return "[emoji:" + emoji_id.substr(7) + "]";
  std::string out;
  size_t i = 0;
  while (i < emoji_id.size()) {
    if (emoji_id[i] == '+' && i + 1 < emoji_id.size() && emoji_id[i + 1] == 'U') ++i;
    if (emoji_id.compare(i, 2, "U+") == 0) i += 2;
    uint32_t cp = 0;
    while (i < emoji_id.size() && std::isxdigit(static_cast<unsigned char>(emoji_id[i]))) {
      cp = cp * 16 + (std::isdigit(static_cast<unsigned char>(emoji_id[i]))
                          ? static_cast<uint32_t>(emoji_id[i] - '0')
                          : static_cast<uint32_t>(std::toupper(emoji_id[i]) - 'A' + 10));
      ++i;
    }
    if (cp) encode_utf8(cp, out);
  }
  return out;
}

std::vector<StreamItem> interleave_stream(const PostRecord& record) {
  const size_t total = record.stream_length();
  std::vector<StreamItem> stream(total);
  std::vector<bool> taken(total, false);
  for (uint32_t e = 0; e < record.emoji_occurrences.size(); ++e) {
    const uint32_t p = record.emoji_occurrences[e].position;
    stream[p] = {true, e};
    taken[p] = true;
  }
  uint32_t w = 0;
  for (size_t p = 0; p < total; ++p) {
    if (!taken[p]) stream[p] = {false, w++};
  }
  return stream;
}

std::string reconstruct_text(const PostRecord& record) {
  const auto stream = interleave_stream(record);
  std::set<std::string> pending_hashtags(record.hashtags.begin(), record.hashtags.end());
  std::string text;
  for (size_t p = 0; p < stream.size(); ++p) {
    if (p) text += ' ';
    if (stream[p].is_emoji) {
      text += emoji_surface_form(record.emoji_occurrences[stream[p].index].emoji_id);
    } else {
      const std::string& tok = record.tokens[stream[p].index];
      if (pending_hashtags.erase(tok)) text += '#';
      text += tok;
    }
  }
  return text;
}

std::string serialize_record(const PostRecord& record) {
  json j;
  j["id"] = record.post_id;
  j["text"] = reconstruct_text(record);
  if (record.labels.likes) j["likes"] = *record.labels.likes;
  if (record.labels.collects) j["collects"] = *record.labels.collects;
  if (record.labels.comments) j["comments"] = *record.labels.comments;
  if (record.labels.sentiment) j["sentiment"] = sentiment_name(*record.labels.sentiment);
  return j.dump();
}

void serialize_corpus(std::ostream& os, const std::vector<PostRecord>& records) {
  for (const auto& r : records) os << serialize_record(r) << '\n';
}

void Vocabulary::rebuild_indexes() {
  word_index.clear();
  emoji_index.clear();
  post_index.clear();
  for (uint32_t i = 0; i < words.size(); ++i) word_index[words[i]] = i;
  for (uint32_t i = 0; i < emojis.size(); ++i) emoji_index[emojis[i]] = i;
  for (uint32_t i = 0; i < posts.size(); ++i) post_index[posts[i]] = i;
}

Vocabulary build_vocabulary(const std::vector<PostRecord>& records, size_t top_k_emojis,
                            bool* k_exceeded_distinct) {
  if (top_k_emojis < 1) throw VocabularyError("top_k_emojis must be >= 1");
  std::set<std::string> word_set;
  std::map<std::string, uint64_t> emoji_counts;
  for (const auto& rec : records) {
    for (const auto& t : rec.tokens) word_set.insert(t);
    for (const auto& e : rec.emoji_occurrences) ++emoji_counts[e.emoji_id];
  }
  if (emoji_counts.empty())
    throw VocabularyError("corpus contains no emojis; the graph would be degenerate");

  // top-K by count, ties broken lexicographically (map iteration is already
  // lexicographic, stable_sort preserves it within equal counts)
  std::vector<std::pair<std::string, uint64_t>> ranked(emoji_counts.begin(), emoji_counts.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  const size_t keep = std::min(top_k_emojis, ranked.size());
  if (k_exceeded_distinct) *k_exceeded_distinct = top_k_emojis > ranked.size();

  Vocabulary vocab;
  vocab.words.assign(word_set.begin(), word_set.end());
  for (size_t i = 0; i < keep; ++i) {
    vocab.emojis.push_back(ranked[i].first);
    vocab.emoji_frequency.push_back(ranked[i].second);
  }
  vocab.posts.reserve(records.size());
  for (const auto& rec : records) vocab.posts.push_back(rec.post_id);
  vocab.rebuild_indexes();
  return vocab;
}

}  // namespace egp
