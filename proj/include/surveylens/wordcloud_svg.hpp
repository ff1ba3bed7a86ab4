#ifndef SURVEYLENS_WORDCLOUD_SVG_HPP
#define SURVEYLENS_WORDCLOUD_SVG_HPP

#include <span>
#include <string>
#include <vector>

#include "surveylens/insights.hpp"

namespace surveylens {

inline constexpr double kMinFontSize = 12.0;
inline constexpr double kMaxFontSize = 72.0;
/// Rendering floor for non-positive weights; reports keep the raw value.
inline constexpr double kWeightFloor = 0.01;

/// Axis-aligned box of one placed word, in layout coordinates (the first word
/// is centred on the origin).
struct PlacedWord {
  std::string token;
  int cluster_id = 0;
  double font_size = 0;
  double cx = 0, cy = 0;  // box centre
  double width = 0, height = 0;

  double left() const { return cx - width / 2; }
  double right() const { return cx + width / 2; }
  double top() const { return cy - height / 2; }
  double bottom() const { return cy + height / 2; }
};

/// Font size for `weight` given the largest weight in the cloud:
/// 12 + 60 * w / w_max after flooring both at 0.01, rounded to 1/100 pt.
double wordcloud_font_size(double weight, double max_weight);

/// Greedy placement, largest font first (ties by cluster id then token).
/// Each word takes the first free slot along a rectangular spiral of lattice
/// points around the origin. Box width is 0.6 em per code point plus padding,
/// so the boxes bound monospace glyphs. Throws EmptyWordcloud on no entries.
std::vector<PlacedWord> layout_wordcloud(std::span<const WordcloudEntry> entries);

/// Ten-colour categorical palette; cluster i uses entry i mod 10.
const std::vector<std::string>& default_palette();

/// SVG 1.1 document for the laid-out entries, filled by cluster colour.
std::string render_wordcloud_svg(std::span<const WordcloudEntry> entries,
                                 std::span<const std::string> palette);

}  // namespace surveylens

#endif  // SURVEYLENS_WORDCLOUD_SVG_HPP
