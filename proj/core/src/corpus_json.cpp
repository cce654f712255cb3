// Copyright 2026 The Polarmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "polarmeter/corpus.hpp"
#include "polarmeter/error.hpp"
#include "polarmeter/log.hpp"

namespace polarmeter::corpus {
namespace {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

class LineReader {
 public:
  LineReader(std::size_t line, std::vector<Issue>* warnings)
      : line_(line), warnings_(warnings) {}

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, message);
  }

  const json& require(const json& obj, const char* key, const std::string& where) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where + ": missing field '" + key + "'");
    return *it;
  }

  std::string require_string(const json& obj, const char* key,
                             const std::string& where) const {
    const json& v = require(obj, key, where);
    if (!v.is_string()) fail(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
  }

  std::int64_t require_int(const json& obj, const char* key, const std::string& where) const {
    const json& v = require(obj, key, where);
    if (!v.is_number_integer()) fail(where + ": field '" + key + "' must be an integer");
    return v.get<std::int64_t>();
  }

  void warn_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& article_id, std::optional<std::size_t> paragraph,
                    const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
      bool found = false;
      for (auto k : known) found = found || key == k;
      if (found) continue;
      std::string message = "line " + std::to_string(line_) + ": " + where +
                            ": ignoring unknown field '" + key + "'";
      log_warning("corpus", message);
      if (warnings_) warnings_->push_back({article_id, paragraph, message});
    }
  }

  LabelMap read_labels(const json& obj, const std::string& article_id,
                       std::optional<std::size_t> paragraph, const std::string& where) {
    if (!obj.is_object()) fail(where + ": labels must be an object");
    LabelMap labels;
    for (Dimension d : kDimensions) {
      auto it = obj.find(std::string(to_string(d)));
      if (it == obj.end()) continue;  // reported by validate()
      if (!it->is_string()) {
        fail(where + ": label for '" + std::string(to_string(d)) + "' must be a string");
      }
      const auto text = it->get<std::string>();
      const auto label = parse_label(text);
      if (!label) {
        throw ValidationError(line_, where + ": unknown label \"" + text + "\" for '" +
                                         std::string(to_string(d)) +
                                         "' (expected liberal, neutral, conservative "
                                         "or irrelevant)");
      }
      labels.set(d, *label);
    }
    warn_unknown(obj, {"economic", "social", "foreign"}, article_id, paragraph, where);
    return labels;
  }

  Article read_article(const json& obj) {
    if (!obj.is_object()) fail("expected a JSON object");
    Article article;
    article.article_id = require_string(obj, "article_id", "article");
    const std::string where = "article '" + article.article_id + "'";
    article.outlet = require_string(obj, "outlet", where);
    const auto year = require_int(obj, "year", where);
    if (year < INT32_MIN || year > INT32_MAX) fail(where + ": year out of range");
    article.year = static_cast<int>(year);
    const json& paragraphs = require(obj, "paragraphs", where);
    if (!paragraphs.is_array()) fail(where + ": 'paragraphs' must be an array");
    warn_unknown(obj, {"article_id", "outlet", "year", "paragraphs"}, article.article_id,
                 std::nullopt, where);

    for (const json& pj : paragraphs) {
      if (!pj.is_object()) fail(where + ": paragraph must be an object");
      Paragraph p;
      const auto index = require_int(pj, "index", where + " paragraph");
      if (index < 0) fail(where + ": paragraph index must be nonnegative");
      p.index = static_cast<std::size_t>(index);
      const std::string pwhere = where + " paragraph " + std::to_string(p.index);
      p.text = require_string(pj, "text", pwhere);
      if (auto it = pj.find("annotations"); it != pj.end() && !it->is_null()) {
        if (!it->is_array()) fail(pwhere + ": 'annotations' must be an array");
        for (const json& aj : *it) {
          if (!aj.is_object()) fail(pwhere + ": annotation must be an object");
          AnnotationSet a;
          a.annotator = require_string(aj, "annotator", pwhere + " annotation");
          const std::string awhere = pwhere + " annotator '" + a.annotator + "'";
          a.labels = read_labels(require(aj, "labels", awhere), article.article_id, p.index,
                                 awhere);
          warn_unknown(aj, {"annotator", "labels"}, article.article_id, p.index, awhere);
          p.annotations.push_back(std::move(a));
        }
      }
      if (auto it = pj.find("adjudicated"); it != pj.end() && !it->is_null()) {
        p.adjudicated = read_labels(*it, article.article_id, p.index, pwhere + " adjudicated");
      }
      warn_unknown(pj, {"index", "text", "annotations", "adjudicated"}, article.article_id,
                   p.index, pwhere);
      article.paragraphs.push_back(std::move(p));
    }
    return article;
  }

 private:
  std::size_t line_;
  std::vector<Issue>* warnings_;
};

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r\n") == std::string::npos;
}

ordered_json labels_to_json(const LabelMap& labels) {
  ordered_json out = ordered_json::object();
  for (Dimension d : kDimensions) {
    if (auto l = labels.get(d)) out[std::string(to_string(d))] = std::string(to_string(*l));
  }
  return out;
}

}  // namespace

Corpus parse_corpus(std::istream& in, std::vector<Issue>* warnings) {
  Corpus corpus;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("malformed JSON: ") + e.what());
    }
    LineReader reader(line_no, warnings);
    Article article = reader.read_article(obj);
    if (!ids.insert(article.article_id).second) {
      throw ValidationError(line_no, "duplicate article_id '" + article.article_id + "'");
    }
    corpus.articles.push_back(std::move(article));
  }
  return corpus;
}

Corpus parse_corpus_string(std::string_view text, std::vector<Issue>* warnings) {
  std::istringstream in{std::string(text)};
  return parse_corpus(in, warnings);
}

std::string serialize_article(const Article& article) {
  ordered_json obj;
  obj["article_id"] = article.article_id;
  obj["outlet"] = article.outlet;
  obj["year"] = article.year;
  ordered_json paragraphs = ordered_json::array();
  for (const auto& p : article.paragraphs) {
    ordered_json pj;
    pj["index"] = p.index;
    pj["text"] = p.text;
    ordered_json annotations = ordered_json::array();
    for (const auto& a : p.annotations) {
      ordered_json aj;
      aj["annotator"] = a.annotator;
      aj["labels"] = labels_to_json(a.labels);
      annotations.push_back(std::move(aj));
    }
    pj["annotations"] = std::move(annotations);
    pj["adjudicated"] = p.adjudicated ? labels_to_json(*p.adjudicated) : ordered_json(nullptr);
    paragraphs.push_back(std::move(pj));
  }
  obj["paragraphs"] = std::move(paragraphs);
  return obj.dump(-1, ' ', false, ordered_json::error_handler_t::replace);
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& article : corpus.articles) out << serialize_article(article) << '\n';
}

}  // namespace polarmeter::corpus
