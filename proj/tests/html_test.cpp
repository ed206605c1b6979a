#include "aah/html.hpp"

#include <gtest/gtest.h>

namespace aah::html {
namespace {

TEST(Html, BuildsNestedTree) {
  const auto doc = Document::parse(R"(<div id="a" class="x y"><p>one <b>two</b></p><br><p>three</div>)");
  const Node* div = doc.find_first(by_tag("div"));
  ASSERT_NE(div, nullptr);
  EXPECT_EQ(div->attr("id"), "a");
  EXPECT_TRUE(div->has_class("y"));
  EXPECT_FALSE(div->has_class("z"));
  EXPECT_EQ(div->find_all(by_tag("p")).size(), 2u);
  EXPECT_EQ(div->text_content(), "one two three");
}

TEST(Html, AttributesQuotedBareAndEmpty) {
  const auto doc = Document::parse(R"(<a href=/x data-k='v w' hidden TITLE="T">z</a>)");
  const Node* a = doc.find_first(by_tag("a"));
  ASSERT_NE(a, nullptr);
  EXPECT_EQ(a->attr("href"), "/x");
  EXPECT_EQ(a->attr("data-k"), "v w");
  EXPECT_EQ(a->attr("hidden"), "");
  EXPECT_EQ(a->attr("title"), "T");
  EXPECT_FALSE(a->attr("missing"));
}

TEST(Html, CommentsAndRawText) {
  const auto doc = Document::parse("<div><!-- <p>no</p> --><script>if (a < b) { x = '<p>'; }</script><p>yes</p></div>");
  const auto ps = doc.find_all(by_tag("p"));
  ASSERT_EQ(ps.size(), 1u);
  EXPECT_EQ(ps[0]->text_content(), "yes");
}

TEST(Html, MismatchedEndTagsRecover) {
  const auto doc = Document::parse("<div><span>a</div><p>b</i></p>");
  const Node* div = doc.find_first(by_tag("div"));
  ASSERT_NE(div, nullptr);
  EXPECT_EQ(div->text_content(), "a");
  const Node* p = doc.find_first(by_tag("p"));
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->text_content(), "b");
}

TEST(Html, DecodesEntities) {
  EXPECT_EQ(decode_entities("Protagonist&#39;s &amp; co &lt;3 &#x263A; &eacute;"), "Protagonist's & co <3 ☺ é");
  EXPECT_EQ(decode_entities("&unknown; & stray"), "&unknown; & stray");
  const auto doc = Document::parse("<p title=\"a&amp;b\">x&nbsp;y</p>");
  const Node* p = doc.find_first(by_tag("p"));
  EXPECT_EQ(p->attr("title"), "a&b");
}

TEST(Html, WalkCanSkipSubtrees) {
  const auto doc = Document::parse("<ul><li>a<ul><li>b</li></ul></li><li>c</li></ul>");
  int visited_li = 0;
  doc.root().walk([&](const Node& n, int depth) {
    if (n.is("li")) {
      ++visited_li;
      return depth > 10;
    }
    return true;
  });
  EXPECT_EQ(visited_li, 2);
}

TEST(Html, ByTagClassPredicate) {
  const auto doc = Document::parse(R"(<div class="aah-paper"></div><span class="aah-paper"></span>)");
  EXPECT_EQ(doc.find_all(by_tag_class("div", "aah-paper")).size(), 1u);
  EXPECT_EQ(doc.find_all(by_class("aah-paper")).size(), 2u);
}

}  // namespace
}  // namespace aah::html
