/* Copyright 2026 The wavechar Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "wavechar/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <system_error>
#include <unordered_set>

#include "json.hpp"
#include "wavechar/errors.hpp"

namespace wavechar {
namespace {

using json = nlohmann::json;

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Streaming parsers: the dataset dumps can hold hundreds of thousands of
// graphs, so we consume the JSON event stream instead of building a DOM.
// Handlers throw InputError with file and key context; parse_error converts
// syntax errors likewise.

class GraphsHandler : public nlohmann::json_sax<json> {
 public:
  GraphsHandler(std::string path, GraphCollection& out)
      : path_(std::move(path)), out_(out) {}

  bool start_object(std::size_t) override {
    if (state_ != State::Root)
      throw InputError(context() + ": objects are not valid edge data");
    state_ = State::InRoot;
    return true;
  }

  bool key(string_t& val) override {
    id_ = val;
    if (!seen_.insert(id_).second)
      throw InputError(path_ + ": duplicate graph id '" + id_ + "'");
    return true;
  }

  bool end_object() override {
    state_ = State::Done;
    return true;
  }

  bool start_array(std::size_t) override {
    switch (state_) {
      case State::InRoot:
        state_ = State::InEdges;
        edges_.clear();
        max_node_ = -1;
        return true;
      case State::InEdges:
        state_ = State::InPair;
        pair_fill_ = 0;
        return true;
      default:
        throw InputError(context() + ": unexpected array");
    }
  }

  bool end_array() override {
    if (state_ == State::InPair) {
      if (pair_fill_ != 2) throw bad_edge();
      edges_.emplace_back(pair_[0], pair_[1]);
      state_ = State::InEdges;
      return true;
    }
    if (state_ == State::InEdges) {
      out_.ids.push_back(id_);
      out_.graphs.push_back(Graph::from_edge_list(edges_, max_node_ + 1));
      state_ = State::InRoot;
      return true;
    }
    throw InputError(context() + ": unexpected end of array");
  }

  bool number_integer(number_integer_t val) override { return endpoint(val); }
  bool number_unsigned(number_unsigned_t val) override {
    if (val > static_cast<number_unsigned_t>(std::numeric_limits<int>::max()))
      throw InputError(context() + ": node id " + std::to_string(val) +
                       " is out of range");
    return endpoint(static_cast<number_integer_t>(val));
  }

  bool null() override { throw bad_value(); }
  bool boolean(bool) override { throw bad_value(); }
  bool number_float(number_float_t, const string_t&) override {
    throw bad_value();
  }
  bool string(string_t&) override { throw bad_value(); }
  bool binary(binary_t&) override { throw bad_value(); }

  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw InputError(path_ + ": " + ex.what());
  }

 private:
  enum class State { Root, InRoot, InEdges, InPair, Done };

  std::string context() const {
    if (state_ == State::Root) return path_ + ": top level must be an object";
    return path_ + ": graph '" + id_ + "'";
  }
  InputError bad_edge() const {
    return InputError(context() + ": edge " + std::to_string(edges_.size()) +
                      " is not an integer pair");
  }
  InputError bad_value() const {
    if (state_ == State::Root)
      return InputError(path_ + ": top level must be an object");
    if (state_ == State::InPair || state_ == State::InEdges) return bad_edge();
    return InputError(context() + ": edge list must be an array");
  }

  bool endpoint(number_integer_t val) {
    if (state_ != State::InPair) throw bad_value();
    if (val < 0)
      throw InputError(context() + ": edge " + std::to_string(edges_.size()) +
                       " has a negative node id");
    if (pair_fill_ >= 2) throw bad_edge();
    pair_[pair_fill_++] = static_cast<int>(val);
    max_node_ = std::max(max_node_, static_cast<int>(val));
    return true;
  }

  std::string path_;
  GraphCollection& out_;
  State state_ = State::Root;
  std::string id_;
  std::unordered_set<std::string> seen_;
  std::vector<std::pair<int, int>> edges_;
  int pair_[2] = {0, 0};
  int pair_fill_ = 0;
  int max_node_ = -1;
};

class FeaturesHandler : public nlohmann::json_sax<json> {
 public:
  FeaturesHandler(std::string path, GraphCollection& out)
      : path_(std::move(path)), out_(out) {
    for (std::size_t i = 0; i < out.ids.size(); ++i)
      index_.emplace(out.ids[i], i);
  }

  bool start_object(std::size_t) override {
    if (state_ != State::Root)
      throw InputError(context() + ": unexpected object");
    state_ = State::InRoot;
    return true;
  }

  bool key(string_t& val) override {
    id_ = val;
    const auto it = index_.find(id_);
    if (it == index_.end())
      throw InputError(path_ + ": id '" + id_ +
                       "' does not appear in graphs.json");
    graph_index_ = it->second;
    return true;
  }

  bool end_object() override {
    state_ = State::Done;
    return true;
  }

  bool start_array(std::size_t) override {
    switch (state_) {
      case State::InRoot:
        state_ = State::InGraph;
        rows_.clear();
        return true;
      case State::InGraph:
        state_ = State::InRow;
        row_.clear();
        return true;
      default:
        throw InputError(context() + ": unexpected array");
    }
  }

  bool end_array() override {
    if (state_ == State::InRow) {
      if (row_.empty())
        throw InputError(row_context() +
                         ": expected a non-empty array of numbers");
      if (num_features_ == 0) num_features_ = row_.size();
      if (row_.size() != num_features_)
        throw InputError(row_context() + ": expected " +
                         std::to_string(num_features_) + " features, got " +
                         std::to_string(row_.size()));
      rows_.push_back(row_);
      state_ = State::InGraph;
      return true;
    }
    if (state_ == State::InGraph) {
      finish_graph();
      state_ = State::InRoot;
      return true;
    }
    throw InputError(context() + ": unexpected end of array");
  }

  bool number_integer(number_integer_t val) override {
    return value(static_cast<double>(val));
  }
  bool number_unsigned(number_unsigned_t val) override {
    return value(static_cast<double>(val));
  }
  bool number_float(number_float_t val, const string_t&) override {
    return value(val);
  }

  bool null() override { throw bad_value(); }
  bool boolean(bool) override { throw bad_value(); }
  bool string(string_t&) override { throw bad_value(); }
  bool binary(binary_t&) override { throw bad_value(); }

  bool parse_error(std::size_t, const std::string&,
                   const nlohmann::detail::exception& ex) override {
    throw InputError(path_ + ": " + ex.what());
  }

 private:
  enum class State { Root, InRoot, InGraph, InRow, Done };

  std::string context() const {
    if (state_ == State::Root) return path_ + ": top level must be an object";
    return path_ + ": graph '" + id_ + "'";
  }
  std::string row_context() const {
    return context() + ": node " + std::to_string(rows_.size());
  }
  InputError bad_value() const {
    if (state_ == State::Root)
      return InputError(path_ + ": top level must be an object");
    if (state_ == State::InRow)
      return InputError(row_context() + ": non-numeric feature");
    return InputError(context() + ": expected arrays of node feature rows");
  }

  bool value(double v) {
    if (state_ != State::InRow) throw bad_value();
    row_.push_back(v);
    return true;
  }

  void finish_graph() {
    const std::size_t n =
        static_cast<std::size_t>(out_.graphs[graph_index_].num_nodes());
    if (rows_.size() != n)
      throw InputError(context() + ": expected " + std::to_string(n) +
                       " node feature rows, got " +
                       std::to_string(rows_.size()));
    AttributeMatrix attrs(n, num_features_ == 0 ? 1 : num_features_);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t p = 0; p < rows_[v].size(); ++p)
        attrs.at(v, p) = rows_[v][p];
    if (!out_.attributes.emplace(id_, std::move(attrs)).second)
      throw InputError(path_ + ": duplicate id '" + id_ + "'");
  }

  std::string path_;
  GraphCollection& out_;
  std::unordered_map<std::string, std::size_t> index_;
  State state_ = State::Root;
  std::string id_;
  std::size_t graph_index_ = 0;
  std::size_t num_features_ = 0;
  std::vector<std::vector<double>> rows_;
  std::vector<double> row_;
};

void load_graphs(const std::filesystem::path& path, GraphCollection& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  GraphsHandler handler(path.string(), out);
  json::sax_parse(in, &handler);
}

void load_labels(const std::filesystem::path& path, GraphCollection& out) {
  std::unordered_set<std::string> known(out.ids.begin(), out.ids.end());
  std::size_t line_no = 1;
  for (const auto& [id, label] : read_target_csv(path.string())) {
    ++line_no;
    if (known.find(id) == known.end())
      throw InputError(path.string() + " line " + std::to_string(line_no) +
                       ": id '" + id + "' does not appear in graphs.json");
    out.labels.emplace(id, label);
  }
}

void load_attributes(const std::filesystem::path& path, GraphCollection& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  FeaturesHandler handler(path.string(), out);
  json::sax_parse(in, &handler);

  if (out.attributes.size() != out.ids.size()) {
    for (const std::string& id : out.ids)
      if (out.attributes.find(id) == out.attributes.end())
        throw InputError(path.string() + ": missing features for graph '" +
                         id + "' (features must cover every graph or none)");
  }
}

void format_double(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

}  // namespace

GraphCollection load_dataset(const std::string& directory) {
  const std::filesystem::path dir(directory);
  const std::filesystem::path graphs_path = dir / "graphs.json";
  if (!std::filesystem::exists(graphs_path))
    throw InputError("dataset directory " + dir.string() +
                     " has no graphs.json");

  GraphCollection out;
  load_graphs(graphs_path, out);

  const std::filesystem::path target_path = dir / "target.csv";
  if (std::filesystem::exists(target_path)) load_labels(target_path, out);

  const std::filesystem::path features_path = dir / "features.json";
  if (std::filesystem::exists(features_path))
    load_attributes(features_path, out);

  return out;
}

std::vector<std::pair<Graph, AttributeMatrix>> collection_items(
    const GraphCollection& collection) {
  std::vector<std::pair<Graph, AttributeMatrix>> items;
  items.reserve(collection.size());
  for (std::size_t i = 0; i < collection.size(); ++i) {
    const auto it = collection.attributes.find(collection.ids[i]);
    items.emplace_back(collection.graphs[i],
                       it != collection.attributes.end()
                           ? it->second
                           : structural_features(collection.graphs[i]));
  }
  return items;
}

LabeledSubset labeled_subset(const GraphCollection& collection) {
  LabeledSubset out;
  for (std::size_t i = 0; i < collection.size(); ++i) {
    const auto it = collection.labels.find(collection.ids[i]);
    if (it == collection.labels.end()) continue;
    const auto attr_it = collection.attributes.find(collection.ids[i]);
    out.ids.push_back(collection.ids[i]);
    out.items.emplace_back(collection.graphs[i],
                           attr_it != collection.attributes.end()
                               ? attr_it->second
                               : structural_features(collection.graphs[i]));
    out.labels.push_back(it->second);
  }
  return out;
}

std::vector<std::pair<std::string, int>> read_target_csv(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != "id,target")
    throw InputError(path + " line 1: expected header 'id,target'");

  std::vector<std::pair<std::string, int>> out;
  std::unordered_set<std::string> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;  // tolerate a trailing blank line
    const std::size_t comma = line.rfind(',');
    if (comma == std::string::npos)
      throw InputError(path + " line " + std::to_string(line_no) +
                       ": expected 'id,target'");
    std::string id = line.substr(0, comma);
    const std::string value = line.substr(comma + 1);
    if (value != "0" && value != "1")
      throw InputError(path + " line " + std::to_string(line_no) +
                       ": target for id '" + id + "' must be 0 or 1, got '" +
                       value + "'");
    if (!seen.insert(id).second)
      throw InputError(path + " line " + std::to_string(line_no) +
                       ": duplicate id '" + id + "'");
    out.emplace_back(std::move(id), value == "1" ? 1 : 0);
  }
  return out;
}

void write_embeddings(const std::string& path,
                      const std::vector<std::string>& ids,
                      const Matrix& embeddings) {
  if (ids.size() != embeddings.rows)
    throw InputError("write_embeddings: " + std::to_string(ids.size()) +
                     " ids for " + std::to_string(embeddings.rows) + " rows");
  for (const std::string& id : ids)
    if (id.find_first_of(",\n\r") != std::string::npos)
      throw InputError("write_embeddings: id '" + id +
                       "' contains a CSV delimiter");

  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");

  std::string buffer = "id";
  for (std::size_t c = 0; c < embeddings.cols; ++c)
    buffer += ",x" + std::to_string(c);
  buffer += '\n';
  for (std::size_t r = 0; r < embeddings.rows; ++r) {
    buffer += ids[r];
    const double* row = embeddings.row(r);
    for (std::size_t c = 0; c < embeddings.cols; ++c) {
      buffer += ',';
      format_double(buffer, row[c]);
    }
    buffer += '\n';
    if (buffer.size() > (1u << 20)) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
  out.flush();
  if (!out) throw InputError("failed writing " + path);
}

std::pair<std::vector<std::string>, Matrix> read_embeddings(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw InputError(path + " line 1: missing header");
  line = strip_cr(line);
  std::size_t cols = 0;
  {
    std::stringstream header(line);
    std::string field;
    if (!std::getline(header, field, ',') || field != "id")
      throw InputError(path + " line 1: header must start with 'id'");
    while (std::getline(header, field, ',')) {
      if (field != "x" + std::to_string(cols))
        throw InputError(path + " line 1: expected column 'x" +
                         std::to_string(cols) + "', got '" + field + "'");
      ++cols;
    }
  }

  std::vector<std::string> ids;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::size_t pos = std::min(line.find(','), line.size());
    if (cols > 0 && pos == line.size())
      throw InputError(path + " line " + std::to_string(line_no) +
                       ": expected " + std::to_string(cols + 1) + " fields");
    ids.push_back(line.substr(0, pos));

    std::size_t parsed = 0;
    while (pos < line.size()) {
      const std::size_t start = pos + 1;
      std::size_t end = line.find(',', start);
      if (end == std::string::npos) end = line.size();
      double v = 0.0;
      const auto res =
          std::from_chars(line.data() + start, line.data() + end, v);
      if (res.ec != std::errc() || res.ptr != line.data() + end)
        throw InputError(path + " line " + std::to_string(line_no) +
                         ": non-numeric value '" +
                         line.substr(start, end - start) + "'");
      values.push_back(v);
      ++parsed;
      pos = end;
    }
    if (parsed != cols)
      throw InputError(path + " line " + std::to_string(line_no) + ": has " +
                       std::to_string(parsed) + " values, expected " +
                       std::to_string(cols));
  }
  if (ids.empty()) throw InputError(path + ": no data rows");

  Matrix m(ids.size(), cols);
  m.data = std::move(values);
  return {std::move(ids), std::move(m)};
}

}  // namespace wavechar
