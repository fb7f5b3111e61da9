// Copyright 2026 The ccgbeam Authors.
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

#include "ccgbeam/markedup.hpp"

#include <cctype>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>

#include "ccgbeam/errors.hpp"

namespace ccgbeam {
namespace {

struct RawNode {
  Category category;
  std::unique_ptr<RawNode> result, argument;
  std::string var;
  int slot = 0;
  bool star = false;
};

class AnnotatedParser {
 public:
  AnnotatedParser(std::string_view text, const AtomRegistry& registry)
      : text_(text), registry_(registry) {}

  std::unique_ptr<RawNode> Parse() {
    if (text_.empty()) Fail("empty entry");
    auto node = ParseSeq();
    if (pos_ != text_.size()) Fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return node;
  }

 private:
  std::unique_ptr<RawNode> ParseSeq() {
    auto node = ParseTerm();
    while (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '\\')) {
      Slash slash = text_[pos_] == '/' ? Slash::kForward : Slash::kBackward;
      ++pos_;
      auto arg = ParseTerm();
      auto parent = std::make_unique<RawNode>();
      parent->category = Category::Complex(node->category, slash, arg->category);
      parent->result = std::move(node);
      parent->argument = std::move(arg);
      node = std::move(parent);
    }
    return node;
  }

  std::unique_ptr<RawNode> ParseTerm() {
    if (pos_ >= text_.size()) Fail("unexpected end of entry");
    std::unique_ptr<RawNode> node;
    if (text_[pos_] == '(') {
      ++pos_;
      node = ParseSeq();
      if (pos_ >= text_.size() || text_[pos_] != ')') Fail("missing ')'");
      ++pos_;
    } else {
      size_t start = pos_;
      while (pos_ < text_.size() && !IsSpecial(text_[pos_])) ++pos_;
      if (pos_ < text_.size() && text_[pos_] == '[') {
        size_t close = text_.find(']', pos_);
        if (close == std::string_view::npos) Fail("missing ']'");
        pos_ = close + 1;
      }
      node = std::make_unique<RawNode>();
      node->category = ParseCategory(text_.substr(start, pos_ - start), registry_);
    }
    ParseAnnotations(*node);
    return node;
  }

  void ParseAnnotations(RawNode& node) {
    while (pos_ < text_.size()) {
      if (text_[pos_] == '{') {
        size_t close = text_.find('}', pos_);
        if (close == std::string_view::npos) Fail("missing '}'");
        std::string body(text_.substr(pos_ + 1, close - pos_ - 1));
        pos_ = close + 1;
        if (!body.empty() && std::isdigit(static_cast<unsigned char>(body[0]))) {
          for (char c : body) {
            if (!std::isdigit(static_cast<unsigned char>(c))) Fail("bad slot '" + body + "'");
          }
          if (node.slot != 0) Fail("two slots on one node");
          node.slot = std::stoi(body);
          if (node.slot <= 0) Fail("slot numbers start at 1");
        } else {
          SetVar(node, body);
        }
      } else if (text_[pos_] == ':') {
        ++pos_;
        size_t start = pos_;
        while (pos_ < text_.size() && IsVarChar(text_[pos_])) ++pos_;
        if (pos_ < text_.size() && text_[pos_] == '*') ++pos_;
        SetVar(node, std::string(text_.substr(start, pos_ - start)));
      } else {
        break;
      }
    }
  }

  void SetVar(RawNode& node, std::string body) {
    bool star = false;
    if (!body.empty() && body.back() == '*') {
      star = true;
      body.pop_back();
    }
    if (body.empty() || !(std::isupper(static_cast<unsigned char>(body[0])) || body[0] == '_')) {
      Fail("bad head variable '" + body + "'");
    }
    for (char c : body) {
      if (!IsVarChar(c)) Fail("bad head variable '" + body + "'");
    }
    if (!node.var.empty()) Fail("two head variables on one node");
    node.var = std::move(body);
    node.star = star;
  }

  static bool IsVarChar(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  static bool IsSpecial(char c) {
    return c == '(' || c == ')' || c == '/' || c == '\\' || c == '[' || c == ']' || c == '{' ||
           c == '}' || c == ':' || std::isspace(static_cast<unsigned char>(c));
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw FormatError("markedup entry '" + std::string(text_) + "': " + msg);
  }

  std::string_view text_;
  const AtomRegistry& registry_;
  size_t pos_ = 0;
};

// Fills variables by position and flattens to preorder.
class Flattener {
 public:
  explicit Flattener(std::vector<AnnotatedNode>& out) : out_(out) {}

  std::string Visit(const RawNode& node, bool on_spine) {
    const size_t index = out_.size();
    out_.push_back({node.var, node.slot, node.star});
    if (on_spine && node.slot != 0) {
      throw FormatError("slot " + std::to_string(node.slot) +
                        " is on the result spine, not on an argument");
    }
    if (node.category.is_complex()) {
      std::string result_var = Visit(*node.result, on_spine);
      Visit(*node.argument, false);
      if (out_[index].var.empty()) out_[index].var = result_var;
    } else if (out_[index].var.empty()) {
      out_[index].var = on_spine ? std::string(kSelfVariable) : Fresh();
    }
    return out_[index].var;
  }

 private:
  std::string Fresh() { return "_" + std::to_string(++fresh_); }
  std::vector<AnnotatedNode>& out_;
  int fresh_ = 0;
};

void Validate(const AnnotatedCategory& ann) {
  std::set<int> slots;
  for (const auto& node : ann.nodes) {
    if (node.slot == 0) continue;
    if (!slots.insert(node.slot).second) {
      throw FormatError("duplicate slot " + std::to_string(node.slot));
    }
  }
  int expected = 1;
  for (int s : slots) {
    if (s != expected++) throw FormatError("slots must be numbered contiguously from 1");
  }
  // A starred variable coindexes its node with another binding site; it is
  // dangling if the variable occurs nowhere else.
  for (const auto& node : ann.nodes) {
    if (!node.long_range || node.var == kSelfVariable) continue;
    int unstarred = 0;
    for (const auto& other : ann.nodes) {
      if (other.var == node.var && !other.long_range) ++unstarred;
    }
    if (unstarred == 0) throw FormatError("dangling head variable '" + node.var + "'");
  }
}

}  // namespace

std::vector<int> AnnotatedCategory::SlotOffsets() const {
  std::vector<int> offsets(num_slots + 1, -1);
  for (int i = 0; i < static_cast<int>(nodes.size()); ++i) {
    if (nodes[i].slot > 0 && nodes[i].slot <= num_slots) offsets[nodes[i].slot] = i;
  }
  return offsets;
}

std::string AnnotatedCategory::ToString() const {
  // Complex nodes are written as bracketed terms with their annotation so the
  // text round-trips through ParseAnnotated.
  std::string out;
  int index = 0;
  std::function<void(const Category&)> emit = [&](const Category& cat) {
    const AnnotatedNode& node = nodes[index++];
    if (cat.is_atomic()) {
      out += cat.str();
    } else {
      out += '(';
      emit(cat.result());
      out += static_cast<char>(cat.slash());
      emit(cat.argument());
      out += ')';
    }
    if (node.slot) out += "{" + std::to_string(node.slot) + "}";
    out += ":" + node.var + (node.long_range ? "*" : "");
  };
  emit(category);
  return out;
}

AnnotatedCategory ParseAnnotated(std::string_view text, const AtomRegistry& registry) {
  auto raw = AnnotatedParser(text, registry).Parse();
  AnnotatedCategory ann;
  ann.category = raw->category;
  Flattener(ann.nodes).Visit(*raw, true);
  for (const auto& node : ann.nodes) ann.num_slots = std::max(ann.num_slots, node.slot);
  try {
    Validate(ann);
  } catch (const FormatError& e) {
    throw FormatError("markedup entry '" + std::string(text) + "': " + e.what());
  }
  return ann;
}

AnnotatedCategory DefaultAnnotation(const Category& cat) {
  AnnotatedCategory ann;
  ann.category = cat;
  ann.nodes.resize(cat.size());
  int fresh = 0;
  int slot = 0;
  // Arguments: one fresh variable shared along each argument's own spine.
  std::function<void(const Category&, int, const std::string&)> fill_arg =
      [&](const Category& c, int offset, const std::string& var) {
        ann.nodes[offset].var = var;
        if (c.is_complex()) {
          fill_arg(c.result(), offset + 1, var);
          fill_arg(c.argument(), offset + 1 + c.result().size(), "_" + std::to_string(++fresh));
        }
      };
  std::function<void(const Category&, int, bool)> visit_spine = [&](const Category& c, int offset,
                                                                     bool slots_open) {
    ann.nodes[offset].var = std::string(kSelfVariable);
    if (c.is_atomic()) return;
    const bool modifier = c.IsModifier();
    visit_spine(c.result(), offset + 1, slots_open && !modifier);
    const int arg_offset = offset + 1 + c.result().size();
    fill_arg(c.argument(), arg_offset, "_" + std::to_string(++fresh));
    if (slots_open) ann.nodes[arg_offset].slot = ++slot;
  };
  visit_spine(cat, 0, true);
  ann.num_slots = slot;
  return ann;
}

MarkedupTable MarkedupTable::Parse(std::string_view text, const AtomRegistry& registry) {
  MarkedupTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream fs(line);
    std::string field;
    while (std::getline(fs, field, '\t')) fields.push_back(field);
    Entry entry;
    try {
      entry.annotated = ParseAnnotated(fields[0], registry);
    } catch (const FormatError& e) {
      throw FormatError(e.message(), line_no);
    }
    entry.relations.assign(fields.begin() + 1, fields.end());
    const std::string key = entry.annotated.category.str();
    if (!table.entries_.emplace(key, std::move(entry)).second) {
      throw FormatError("duplicate markedup entry for " + key, line_no);
    }
  }
  return table;
}

MarkedupTable MarkedupTable::Load(const std::string& path, const AtomRegistry& registry) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open markedup file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), registry);
}

AnnotatedCategory MarkedupTable::Resolve(const Category& cat) const {
  auto it = entries_.find(cat.str());
  if (it != entries_.end()) return it->second.annotated;
  return DefaultAnnotation(cat);
}

std::string MarkedupTable::RelationName(const std::string& category, int slot) const {
  auto it = entries_.find(category);
  if (it == entries_.end()) return {};
  const auto& rel = it->second.relations;
  if (slot < 1 || slot > static_cast<int>(rel.size())) return {};
  return rel[slot - 1];
}

}  // namespace ccgbeam
