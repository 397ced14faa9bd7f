#pragma once

#include <string>
#include <vector>

namespace wuq {

/// One record of the text format:
///
///   key arg arg ... {
///     child ...
///   }
///
/// Arguments are bare words (rationals, "index:value" pairs, tags) or
/// double-quoted strings. '#' starts a comment.
struct Node {
  std::string key;
  std::vector<std::string> args;
  std::vector<Node> children;
  int line = 0;
  int column = 0;

  /// First child with the key, or nullptr.
  const Node* find(const std::string& key) const;
  std::vector<const Node*> find_all(const std::string& key) const;
};

struct Document {
  std::vector<Node> nodes;
};

/// Throws ParseError with the 1-based location of the offending token.
Document parse_document(const std::string& text);
/// Canonical text: two-space indentation, one node per line, strings quoted
/// only when they are not bare words.
std::string serialize_document(const Document& doc);
std::string serialize_node(const Node& node);

}  // namespace wuq
