#include "wuq/document.hpp"

#include <cctype>

#include "wuq/error.hpp"

namespace wuq {

const Node* Node::find(const std::string& k) const {
  for (const auto& c : children)
    if (c.key == k) return &c;
  return nullptr;
}

std::vector<const Node*> Node::find_all(const std::string& k) const {
  std::vector<const Node*> out;
  for (const auto& c : children)
    if (c.key == k) out.push_back(&c);
  return out;
}

namespace {

struct Token {
  enum class Kind { Word, Quoted, Open, Close, EndLine, End };
  Kind kind;
  std::string text;
  int line;
  int column;
};

bool word_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && c != '{' && c != '}' && c != '"' && c != '#';
}

std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      out.push_back({Token::Kind::EndLine, "", line, col});
      advance(1);
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
    } else if (c == '{' || c == '}') {
      out.push_back({c == '{' ? Token::Kind::Open : Token::Kind::Close, std::string(1, c), line, col});
      advance(1);
    } else if (c == '"') {
      const int l = line, cl = col;
      advance(1);
      std::string s;
      for (;;) {
        if (i >= text.size() || text[i] == '\n') throw ParseError(l, cl, "unterminated string");
        if (text[i] == '"') break;
        if (text[i] == '\\') {
          if (i + 1 >= text.size() || (text[i + 1] != '"' && text[i + 1] != '\\'))
            throw ParseError(line, col, "unknown escape in string");
          advance(1);
        }
        s += text[i];
        advance(1);
      }
      advance(1);
      out.push_back({Token::Kind::Quoted, s, l, cl});
    } else {
      const int l = line, cl = col;
      std::string s;
      while (i < text.size() && word_char(text[i])) {
        s += text[i];
        advance(1);
      }
      out.push_back({Token::Kind::Word, s, l, cl});
    }
  }
  out.push_back({Token::Kind::End, "", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : t_(std::move(tokens)) {}

  std::vector<Node> nodes(bool nested) {
    std::vector<Node> out;
    for (;;) {
      skip_lines();
      const Token& tok = t_[pos_];
      if (tok.kind == Token::Kind::End) {
        if (nested) throw ParseError(tok.line, tok.column, "missing '}'");
        return out;
      }
      if (tok.kind == Token::Kind::Close) {
        if (!nested) throw ParseError(tok.line, tok.column, "unmatched '}'");
        return out;
      }
      out.push_back(node());
    }
  }

 private:
  void skip_lines() {
    while (t_[pos_].kind == Token::Kind::EndLine) ++pos_;
  }

  Node node() {
    const Token& head = t_[pos_];
    if (head.kind != Token::Kind::Word) throw ParseError(head.line, head.column, "expected a key");
    Node n;
    n.key = head.text;
    n.line = head.line;
    n.column = head.column;
    ++pos_;
    while (t_[pos_].kind == Token::Kind::Word || t_[pos_].kind == Token::Kind::Quoted) n.args.push_back(t_[pos_++].text);
    if (t_[pos_].kind == Token::Kind::Open) {
      ++pos_;
      n.children = nodes(true);
      ++pos_;  // the closing brace
    }
    const Token& end = t_[pos_];
    if (end.kind != Token::Kind::EndLine && end.kind != Token::Kind::End && end.kind != Token::Kind::Close)
      throw ParseError(end.line, end.column, "expected end of line after '" + n.key + "'");
    return n;
  }

  std::vector<Token> t_;
  std::size_t pos_ = 0;
};

bool bare(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!word_char(c)) return false;
  return true;
}

void emit(const Node& n, int depth, std::string& out) {
  out.append(std::size_t(depth) * 2, ' ');
  out += n.key;
  for (const auto& a : n.args) {
    out += ' ';
    if (bare(a)) {
      out += a;
    } else {
      out += '"';
      for (char c : a) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      out += '"';
    }
  }
  if (!n.children.empty()) {
    out += " {\n";
    for (const auto& c : n.children) emit(c, depth + 1, out);
    out.append(std::size_t(depth) * 2, ' ');
    out += '}';
  }
  out += '\n';
}

}  // namespace

Document parse_document(const std::string& text) {
  Parser p(tokenize(text));
  return Document{p.nodes(false)};
}

std::string serialize_node(const Node& node) {
  std::string out;
  emit(node, 0, out);
  return out;
}

std::string serialize_document(const Document& doc) {
  std::string out;
  for (const auto& n : doc.nodes) emit(n, 0, out);
  return out;
}

}  // namespace wuq
