#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// A small, forgiving HTML tree builder. It understands the subset that static
// listing pages use: nested elements, void elements, quoted and bare attributes,
// comments, raw-text script/style bodies and character references. Mismatched end
// tags close back to the nearest matching open element or are ignored.
namespace aah::html {

struct Node {
  enum class Kind { element, text };

  Kind kind = Kind::element;
  std::string tag;  // lowercase; empty for text nodes and the document root
  std::vector<std::pair<std::string, std::string>> attributes;
  std::string text;  // decoded character data for text nodes
  std::vector<Node> children;

  bool is_element() const { return kind == Kind::element; }
  bool is(std::string_view name) const { return is_element() && tag == name; }

  std::optional<std::string_view> attr(std::string_view name) const;
  bool has_class(std::string_view cls) const;

  // Concatenated descendant text with whitespace collapsed.
  std::string text_content() const;

  // Pre-order search over descendants (excluding this node).
  const Node* find_first(const std::function<bool(const Node&)>& pred) const;
  std::vector<const Node*> find_all(const std::function<bool(const Node&)>& pred) const;

  // Visits descendants in document order. The callback receives the node and
  // its depth relative to this node; returning false skips that node's subtree.
  void walk(const std::function<bool(const Node&, int)>& visit) const;
};

class Document {
 public:
  static Document parse(std::string_view html);

  const Node& root() const { return root_; }

  const Node* find_first(const std::function<bool(const Node&)>& pred) const {
    return root_.find_first(pred);
  }
  std::vector<const Node*> find_all(const std::function<bool(const Node&)>& pred) const {
    return root_.find_all(pred);
  }

 private:
  Node root_;
};

// Common predicates.
std::function<bool(const Node&)> by_tag(std::string tag);
std::function<bool(const Node&)> by_class(std::string cls);
std::function<bool(const Node&)> by_tag_class(std::string tag, std::string cls);

// Decodes named (common subset) and numeric character references.
std::string decode_entities(std::string_view s);

}  // namespace aah::html
