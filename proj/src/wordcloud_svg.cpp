#include "surveylens/wordcloud_svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "surveylens/text.hpp"

namespace surveylens {

namespace {

constexpr double kCharAdvance = 0.6;  // em per glyph, monospace
constexpr double kPadding = 2.0;
constexpr double kMargin = 10.0;
constexpr long kStepX = 6;
constexpr long kStepY = 3;

bool overlaps(const PlacedWord& a, const PlacedWord& b) {
  return a.left() < b.right() && b.left() < a.right() && a.top() < b.bottom() &&
         b.top() < a.bottom();
}

// Lattice offsets ring by ring: ring 0 is the origin, ring r walks the
// perimeter of the square of half-side r clockwise from its top-left corner.
class SquareSpiral {
 public:
  std::pair<long, long> next() {
    if (ring_ == 0) {
      ring_ = 1;
      return {0, 0};
    }
    const long r = ring_;
    const long side = 2 * r;
    const long edge = index_ / side;
    const long t = index_ % side;
    std::pair<long, long> p;
    switch (edge) {
      case 0: p = {-r + t, -r}; break;
      case 1: p = {r, -r + t}; break;
      case 2: p = {r - t, r}; break;
      default: p = {-r, r - t}; break;
    }
    if (++index_ == 4 * side) {
      index_ = 0;
      ++ring_;
    }
    return p;
  }

 private:
  long ring_ = 0;
  long index_ = 0;
};

std::string fmt2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

double wordcloud_font_size(double weight, double max_weight) {
  const double w = std::max(weight, kWeightFloor);
  const double top = std::max(max_weight, kWeightFloor);
  const double size = kMinFontSize + (kMaxFontSize - kMinFontSize) * (w / top);
  return std::round(size * 100.0) / 100.0;
}

std::vector<PlacedWord> layout_wordcloud(std::span<const WordcloudEntry> entries) {
  if (entries.empty()) throw EmptyWordcloud("wordcloud has no entries");
  double max_weight = kWeightFloor;
  for (const auto& e : entries) max_weight = std::max(max_weight, e.weight);

  std::vector<PlacedWord> words;
  words.reserve(entries.size());
  for (const auto& e : entries) {
    PlacedWord w;
    w.token = e.token;
    w.cluster_id = e.cluster_id;
    w.font_size = wordcloud_font_size(e.weight, max_weight);
    w.width = kCharAdvance * w.font_size * static_cast<double>(utf8_length(e.token)) + 2 * kPadding;
    w.height = w.font_size + 2 * kPadding;
    words.push_back(std::move(w));
  }
  std::stable_sort(words.begin(), words.end(), [](const PlacedWord& a, const PlacedWord& b) {
    if (a.font_size != b.font_size) return a.font_size > b.font_size;
    if (a.cluster_id != b.cluster_id) return a.cluster_id < b.cluster_id;
    return a.token < b.token;
  });

  for (std::size_t i = 0; i < words.size(); ++i) {
    SquareSpiral spiral;
    for (;;) {
      const auto [gx, gy] = spiral.next();
      words[i].cx = static_cast<double>(gx * kStepX);
      words[i].cy = static_cast<double>(gy * kStepY);
      bool clear = true;
      for (std::size_t j = 0; j < i && clear; ++j) clear = !overlaps(words[i], words[j]);
      if (clear) break;
    }
  }
  return words;
}

const std::vector<std::string>& default_palette() {
  static const std::vector<std::string> palette = {
      "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
      "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette;
}

std::string render_wordcloud_svg(std::span<const WordcloudEntry> entries,
                                 std::span<const std::string> palette) {
  if (palette.empty()) throw std::invalid_argument("render_wordcloud_svg: empty palette");
  const auto words = layout_wordcloud(entries);

  double min_x = words[0].left(), max_x = words[0].right();
  double min_y = words[0].top(), max_y = words[0].bottom();
  for (const auto& w : words) {
    min_x = std::min(min_x, w.left());
    max_x = std::max(max_x, w.right());
    min_y = std::min(min_y, w.top());
    max_y = std::max(max_y, w.bottom());
  }
  const double width = max_x - min_x + 2 * kMargin;
  const double height = max_y - min_y + 2 * kMargin;
  const double dx = kMargin - min_x;
  const double dy = kMargin - min_y;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt2(width) +
         "\" height=\"" + fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " +
         fmt2(height) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  for (const auto& w : words) {
    const auto color_index =
        static_cast<std::size_t>(w.cluster_id < 0 ? 0 : w.cluster_id) % palette.size();
    svg += "<text x=\"" + fmt2(w.cx + dx) + "\" y=\"" + fmt2(w.cy + dy) + "\" font-size=\"" +
           fmt2(w.font_size) +
           "\" font-family=\"monospace\" text-anchor=\"middle\" dominant-baseline=\"central\" "
           "fill=\"" +
           xml_escape(palette[color_index]) + "\">" + xml_escape(w.token) + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace surveylens
