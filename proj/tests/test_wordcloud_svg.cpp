#include <doctest.h>

#include <random>

#include "surveylens/wordcloud_svg.hpp"

using namespace surveylens;

namespace {

WordcloudEntry entry(std::string token, double weight, int cluster = 0) {
  return {std::move(token), cluster, weight, WordcloudScope::cluster};
}

bool boxes_overlap(const PlacedWord& a, const PlacedWord& b) {
  const double ox = std::min(a.cx + a.width / 2, b.cx + b.width / 2) -
                    std::max(a.cx - a.width / 2, b.cx - b.width / 2);
  const double oy = std::min(a.cy + a.height / 2, b.cy + b.height / 2) -
                    std::max(a.cy - a.height / 2, b.cy - b.height / 2);
  return ox > 0 && oy > 0;
}

std::vector<WordcloudEntry> random_entries(std::mt19937_64& rng, int n) {
  static const char* words[] = {"acid", "bases", "ionic", "covalent", "equilibrium", "lecture",
                                "units", "pH", "thermodynamics", "entropy", "ka", "redox"};
  std::uniform_real_distribution<double> w(-0.3, 1.0);
  std::vector<WordcloudEntry> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(entry(std::string(words[rng() % 12]) + std::to_string(i % 3), w(rng),
                        static_cast<int>(rng() % 6)));
  }
  return out;
}

}  // namespace

TEST_CASE("font size maps weights linearly onto 12..72") {
  CHECK(wordcloud_font_size(0.8, 0.8) == 72.0);
  CHECK(wordcloud_font_size(0.4, 0.8) == 42.0);
  CHECK(wordcloud_font_size(-0.5, 0.8) == wordcloud_font_size(0.01, 0.8));
  CHECK(wordcloud_font_size(-0.5, -0.5) == 72.0);
  CHECK(wordcloud_font_size(1.0 / 3.0, 1.0) == 32.0);
}

TEST_CASE("a single entry is centred at the maximum size") {
  const std::vector<WordcloudEntry> one = {entry("acid", 0.3)};
  const auto placed = layout_wordcloud(one);
  REQUIRE(placed.size() == 1);
  CHECK(placed[0].font_size == 72.0);
  CHECK(placed[0].cx == 0.0);
  CHECK(placed[0].cy == 0.0);

  const auto svg = render_wordcloud_svg(one, default_palette());
  // Box 0.6*72*4+4 = 176.8 by 76, plus a 10 unit margin on every side.
  CHECK(svg.find("width=\"196.80\" height=\"96.00\"") != std::string::npos);
  CHECK(svg.find("<text x=\"98.40\" y=\"48.00\" font-size=\"72.00\"") != std::string::npos);
  CHECK(svg.find("fill=\"#1f77b4\">acid</text>") != std::string::npos);
}

TEST_CASE("two entries at 0.8 and 0.4 get sizes 72 and 42") {
  const std::vector<WordcloudEntry> two = {entry("small", 0.4), entry("big", 0.8)};
  const auto placed = layout_wordcloud(two);
  REQUIRE(placed.size() == 2);
  CHECK(placed[0].token == "big");
  CHECK(placed[0].font_size == 72.0);
  CHECK(placed[1].font_size == 42.0);
  CHECK_FALSE(boxes_overlap(placed[0], placed[1]));
}

TEST_CASE("randomised layouts never overlap") {
  std::mt19937_64 rng(30);
  for (int trial = 0; trial < 50; ++trial) {
    const auto entries = random_entries(rng, 30);
    const auto placed = layout_wordcloud(entries);
    REQUIRE(placed.size() == 30);
    for (std::size_t i = 0; i < placed.size(); ++i) {
      for (std::size_t j = i + 1; j < placed.size(); ++j) {
        CHECK_FALSE(boxes_overlap(placed[i], placed[j]));
      }
    }
  }
}

TEST_CASE("rendering is deterministic and input-order independent") {
  std::mt19937_64 rng(5);
  auto entries = random_entries(rng, 20);
  const auto a = render_wordcloud_svg(entries, default_palette());
  CHECK(a == render_wordcloud_svg(entries, default_palette()));
  std::reverse(entries.begin(), entries.end());
  CHECK(a == render_wordcloud_svg(entries, default_palette()));
}

TEST_CASE("svg escaping, palette cycling and errors") {
  const std::vector<WordcloudEntry> e = {entry("a<b&\"c\"", 0.5, 11)};
  const auto svg = render_wordcloud_svg(e, default_palette());
  CHECK(svg.find(">a&lt;b&amp;&quot;c&quot;</text>") != std::string::npos);
  CHECK(svg.find("fill=\"#ff7f0e\"") != std::string::npos);
  CHECK(svg.rfind("</svg>\n") == svg.size() - 7);

  CHECK_THROWS_AS(layout_wordcloud(std::vector<WordcloudEntry>{}), EmptyWordcloud);
  CHECK_THROWS_AS(render_wordcloud_svg(e, std::vector<std::string>{}), std::invalid_argument);
}

TEST_CASE("box width counts code points, not bytes") {
  const std::vector<WordcloudEntry> e = {entry("\xC3\xA9t\xC3\xA9", 1.0)};
  const auto placed = layout_wordcloud(e);
  CHECK(placed[0].width == doctest::Approx(0.6 * 72 * 3 + 4));
  CHECK(placed[0].height == 76.0);
}
