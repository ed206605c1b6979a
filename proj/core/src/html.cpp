#include "aah/html.hpp"

#include "aah/text.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <unordered_map>

namespace aah::html {
namespace {

constexpr std::array kVoidElements = {"area", "base", "br",   "col",   "embed", "hr",    "img",
                                      "input", "link", "meta", "param", "source", "track", "wbr"};
constexpr std::array kRawTextElements = {"script", "style", "textarea", "title"};
constexpr std::array kBlockElements = {"address", "article", "aside", "blockquote", "dd",   "div",
                                       "dl",      "dt",      "footer", "h1",        "h2",   "h3",
                                       "h4",      "h5",      "h6",    "header",     "hr",   "li",
                                       "main",    "nav",     "ol",    "p",          "section", "table",
                                       "td",      "th",      "tr",    "ul"};

template <std::size_t N>
bool one_of(std::string_view tag, const std::array<const char*, N>& set) {
  return std::any_of(set.begin(), set.end(), [&](const char* t) { return tag == t; });
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f'; }

bool is_name_char(char c) {
  return !is_space(c) && c != '>' && c != '/' && c != '=' && c != '"' && c != '\'' && c != '<';
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp == 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) cp = 0xFFFD;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
}

const std::unordered_map<std::string_view, char32_t>& named_entities() {
  static const std::unordered_map<std::string_view, char32_t> table = {
      {"amp", U'&'},       {"lt", U'<'},        {"gt", U'>'},        {"quot", U'"'},
      {"apos", U'\''},     {"nbsp", 0xA0},      {"ndash", 0x2013},   {"mdash", 0x2014},
      {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"ldquo", 0x201C},   {"rdquo", 0x201D},
      {"hellip", 0x2026},  {"copy", 0xA9},      {"reg", 0xAE},       {"trade", 0x2122},
      {"shy", 0xAD},       {"middot", 0xB7},    {"laquo", 0xAB},     {"raquo", 0xBB},
      {"Agrave", 0xC0},    {"Aacute", 0xC1},    {"Acirc", 0xC2},     {"Atilde", 0xC3},
      {"Auml", 0xC4},      {"Aring", 0xC5},     {"AElig", 0xC6},     {"Ccedil", 0xC7},
      {"Egrave", 0xC8},    {"Eacute", 0xC9},    {"Ecirc", 0xCA},     {"Euml", 0xCB},
      {"Igrave", 0xCC},    {"Iacute", 0xCD},    {"Icirc", 0xCE},     {"Iuml", 0xCF},
      {"Ntilde", 0xD1},    {"Ograve", 0xD2},    {"Oacute", 0xD3},    {"Ocirc", 0xD4},
      {"Otilde", 0xD5},    {"Ouml", 0xD6},      {"Oslash", 0xD8},    {"Ugrave", 0xD9},
      {"Uacute", 0xDA},    {"Ucirc", 0xDB},     {"Uuml", 0xDC},      {"Yacute", 0xDD},
      {"szlig", 0xDF},     {"agrave", 0xE0},    {"aacute", 0xE1},    {"acirc", 0xE2},
      {"atilde", 0xE3},    {"auml", 0xE4},      {"aring", 0xE5},     {"aelig", 0xE6},
      {"ccedil", 0xE7},    {"egrave", 0xE8},    {"eacute", 0xE9},    {"ecirc", 0xEA},
      {"euml", 0xEB},      {"igrave", 0xEC},    {"iacute", 0xED},    {"icirc", 0xEE},
      {"iuml", 0xEF},      {"ntilde", 0xF1},    {"ograve", 0xF2},    {"oacute", 0xF3},
      {"ocirc", 0xF4},     {"otilde", 0xF5},    {"ouml", 0xF6},      {"oslash", 0xF8},
      {"ugrave", 0xF9},    {"uacute", 0xFA},    {"ucirc", 0xFB},     {"uuml", 0xFC},
      {"yacute", 0xFD},    {"yuml", 0xFF},      {"Scaron", 0x160},   {"scaron", 0x161},
      {"Zcaron", 0x17D},   {"zcaron", 0x17E},   {"OElig", 0x152},    {"oelig", 0x153},
  };
  return table;
}

class TreeBuilder {
 public:
  explicit TreeBuilder(Node& root) { stack_.push_back(&root); }

  void text(std::string_view raw) {
    if (raw.empty()) return;
    Node& parent = *stack_.back();
    if (!parent.children.empty() && parent.children.back().kind == Node::Kind::text) {
      parent.children.back().text += decode_entities(raw);
      return;
    }
    Node node;
    node.kind = Node::Kind::text;
    node.text = decode_entities(raw);
    parent.children.push_back(std::move(node));
  }

  void raw_text(std::string_view raw) {
    if (raw.empty()) return;
    Node node;
    node.kind = Node::Kind::text;
    node.text = stack_.back()->tag == "title" || stack_.back()->tag == "textarea" ? decode_entities(raw)
                                                                                 : std::string(raw);
    stack_.back()->children.push_back(std::move(node));
  }

  void open(Node element, bool self_closing) {
    // Paragraphs and list items cannot nest; a new one closes the previous.
    if (element.tag == "li") close_if_open("li", {"ul", "ol"});
    if (element.tag == "p" || one_of(element.tag, kBlockElements)) close_if_open("p", {"div", "section", "li", "td"});
    Node& parent = *stack_.back();
    parent.children.push_back(std::move(element));
    Node& added = parent.children.back();
    if (!self_closing && !one_of(added.tag, kVoidElements)) stack_.push_back(&added);
  }

  void close(std::string_view tag) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == tag) {
        stack_.resize(i);
        return;
      }
    }
  }

 private:
  void close_if_open(std::string_view tag, std::initializer_list<std::string_view> barriers) {
    for (std::size_t i = stack_.size(); i-- > 1;) {
      if (stack_[i]->tag == tag) {
        stack_.resize(i);
        return;
      }
      if (std::find(barriers.begin(), barriers.end(), stack_[i]->tag) != barriers.end()) return;
    }
  }

  std::vector<Node*> stack_;
};

// Parses attributes from the inside of a start tag (after the tag name).
std::vector<std::pair<std::string, std::string>> parse_attributes(std::string_view s) {
  std::vector<std::pair<std::string, std::string>> attrs;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (is_space(s[i]) || s[i] == '/')) ++i;
    const std::size_t name_start = i;
    while (i < s.size() && is_name_char(s[i])) ++i;
    if (i == name_start) {
      ++i;
      continue;
    }
    std::string name = text::ascii_lower(s.substr(name_start, i - name_start));
    while (i < s.size() && is_space(s[i])) ++i;
    std::string value;
    if (i < s.size() && s[i] == '=') {
      ++i;
      while (i < s.size() && is_space(s[i])) ++i;
      if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
        const char quote = s[i++];
        const auto end = s.find(quote, i);
        const auto stop = end == std::string_view::npos ? s.size() : end;
        value = decode_entities(s.substr(i, stop - i));
        i = stop + 1;
      } else {
        const std::size_t value_start = i;
        while (i < s.size() && !is_space(s[i]) && s[i] != '>') ++i;
        value = decode_entities(s.substr(value_start, i - value_start));
      }
    }
    if (std::none_of(attrs.begin(), attrs.end(), [&](const auto& a) { return a.first == name; })) {
      attrs.emplace_back(std::move(name), std::move(value));
    }
  }
  return attrs;
}

// Finds the '>' that ends a tag starting at `from`, skipping quoted attribute values.
std::size_t find_tag_end(std::string_view html, std::size_t from) {
  char quote = 0;
  char last = 0;  // last non-space character outside quotes
  for (std::size_t i = from; i < html.size(); ++i) {
    const char c = html[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '>') return i;
    // Only a quote that opens an attribute value starts a quoted run.
    if ((c == '"' || c == '\'') && last == '=') quote = c;
    if (!is_space(c)) last = c;
  }
  return std::string_view::npos;
}

std::size_t find_ci(std::string_view haystack, std::string_view needle, std::size_t from) {
  const auto lower = [](char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; };
  const auto it = std::search(haystack.begin() + static_cast<std::ptrdiff_t>(std::min(from, haystack.size())),
                              haystack.end(), needle.begin(), needle.end(),
                              [&](char a, char b) { return lower(a) == lower(b); });
  return it == haystack.end() ? std::string_view::npos : static_cast<std::size_t>(it - haystack.begin());
}

void collect_text(const Node& node, std::string& out) {
  if (node.kind == Node::Kind::text) {
    out += node.text;
    return;
  }
  const bool spaced = node.tag == "br" || one_of(node.tag, kBlockElements);
  if (node.tag == "script" || node.tag == "style") return;
  if (spaced) out += ' ';
  for (const auto& child : node.children) collect_text(child, out);
  if (spaced) out += ' ';
}

bool walk_impl(const Node& node, int depth, const std::function<bool(const Node&, int)>& visit) {
  for (const auto& child : node.children) {
    if (visit(child, depth)) walk_impl(child, depth + 1, visit);
  }
  return true;
}

}  // namespace

std::optional<std::string_view> Node::attr(std::string_view name) const {
  for (const auto& [key, value] : attributes) {
    if (key == name) return std::string_view(value);
  }
  return std::nullopt;
}

bool Node::has_class(std::string_view cls) const {
  const auto classes = attr("class");
  if (!classes) return false;
  std::string_view rest = *classes;
  while (!rest.empty()) {
    while (!rest.empty() && is_space(rest.front())) rest.remove_prefix(1);
    const auto end = std::find_if(rest.begin(), rest.end(), is_space);
    const auto token = rest.substr(0, static_cast<std::size_t>(end - rest.begin()));
    if (token == cls) return true;
    rest.remove_prefix(token.size());
  }
  return false;
}

std::string Node::text_content() const {
  std::string raw;
  for (const auto& child : children) collect_text(child, raw);
  if (kind == Kind::text) raw = text;
  return text::collapse_whitespace(raw);
}

const Node* Node::find_first(const std::function<bool(const Node&)>& pred) const {
  for (const auto& child : children) {
    if (pred(child)) return &child;
    if (const Node* hit = child.find_first(pred)) return hit;
  }
  return nullptr;
}

std::vector<const Node*> Node::find_all(const std::function<bool(const Node&)>& pred) const {
  std::vector<const Node*> out;
  walk([&](const Node& n, int) {
    if (pred(n)) out.push_back(&n);
    return true;
  });
  return out;
}

void Node::walk(const std::function<bool(const Node&, int)>& visit) const { walk_impl(*this, 0, visit); }

Document Document::parse(std::string_view html) {
  Document doc;
  TreeBuilder builder(doc.root_);
  std::size_t pos = 0;
  while (pos < html.size()) {
    const auto lt = html.find('<', pos);
    if (lt == std::string_view::npos) {
      builder.text(html.substr(pos));
      break;
    }
    builder.text(html.substr(pos, lt - pos));
    const auto rest = html.substr(lt);
    if (rest.rfind("<!--", 0) == 0) {
      const auto end = html.find("-->", lt + 4);
      pos = end == std::string_view::npos ? html.size() : end + 3;
      continue;
    }
    if (rest.size() < 2 || !(std::isalpha(static_cast<unsigned char>(rest[1])) || rest[1] == '/' ||
                             rest[1] == '!' || rest[1] == '?')) {
      // A lone '<' is character data.
      builder.text("<");
      pos = lt + 1;
      continue;
    }
    const auto gt = find_tag_end(html, lt + 1);
    if (gt == std::string_view::npos) {
      builder.text(html.substr(lt));
      break;
    }
    const auto inner = html.substr(lt + 1, gt - lt - 1);
    pos = gt + 1;
    if (inner.front() == '!' || inner.front() == '?') continue;  // doctype, processing instruction
    if (inner.front() == '/') {
      auto name = inner.substr(1);
      const auto name_end = std::find_if(name.begin(), name.end(), [](char c) { return !is_name_char(c); });
      builder.close(text::ascii_lower(name.substr(0, static_cast<std::size_t>(name_end - name.begin()))));
      continue;
    }
    const auto name_end =
        std::find_if(inner.begin(), inner.end(), [](char c) { return !is_name_char(c); });
    const auto name_len = static_cast<std::size_t>(name_end - inner.begin());
    Node element;
    element.tag = text::ascii_lower(inner.substr(0, name_len));
    element.attributes = parse_attributes(inner.substr(name_len));
    // "<br/>" and "<img src='x' />" self-close; "<a href=/x/>" does not.
    const bool self_closing =
        inner.size() > name_len && inner.back() == '/' &&
        (inner.size() - 1 == name_len || is_space(inner[inner.size() - 2]) || inner[inner.size() - 2] == '"' ||
         inner[inner.size() - 2] == '\'');
    const std::string tag = element.tag;
    builder.open(std::move(element), self_closing);
    if (!self_closing && one_of(tag, kRawTextElements)) {
      const auto close = find_ci(html, "</" + tag, pos);
      const auto body_end = close == std::string_view::npos ? html.size() : close;
      builder.raw_text(html.substr(pos, body_end - pos));
      builder.close(tag);
      if (close == std::string_view::npos) {
        pos = html.size();
      } else {
        const auto close_gt = html.find('>', close);
        pos = close_gt == std::string_view::npos ? html.size() : close_gt + 1;
      }
    }
  }
  return doc;
}

std::function<bool(const Node&)> by_tag(std::string tag) {
  return [tag = std::move(tag)](const Node& n) { return n.is(tag); };
}

std::function<bool(const Node&)> by_class(std::string cls) {
  return [cls = std::move(cls)](const Node& n) { return n.is_element() && n.has_class(cls); };
}

std::function<bool(const Node&)> by_tag_class(std::string tag, std::string cls) {
  return [tag = std::move(tag), cls = std::move(cls)](const Node& n) { return n.is(tag) && n.has_class(cls); };
}

std::string decode_entities(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] != '&') {
      out += s[i++];
      continue;
    }
    const auto semi = s.find(';', i + 1);
    if (semi == std::string_view::npos || semi - i > 32) {
      out += s[i++];
      continue;
    }
    const auto name = s.substr(i + 1, semi - i - 1);
    if (!name.empty() && name.front() == '#') {
      const bool hex = name.size() > 1 && (name[1] == 'x' || name[1] == 'X');
      const auto digits = name.substr(hex ? 2 : 1);
      std::uint32_t cp = 0;
      const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), cp, hex ? 16 : 10);
      if (!digits.empty() && ec == std::errc() && ptr == digits.data() + digits.size()) {
        append_utf8(out, cp);
        i = semi + 1;
        continue;
      }
    } else if (const auto it = named_entities().find(name); it != named_entities().end()) {
      append_utf8(out, it->second);
      i = semi + 1;
      continue;
    }
    out += s[i++];
  }
  return out;
}

}  // namespace aah::html
