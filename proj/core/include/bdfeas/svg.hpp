#pragma once

#include <sstream>
#include <string>

namespace bdfeas {

/// Minimal SVG 1.1 writer with a data-to-pixel transform. Enough for
/// scatter plots, line segments and histogram bars.
class SvgCanvas {
 public:
  SvgCanvas(double width, double height, double xmin, double xmax, double ymin, double ymax);

  void axes(const std::string& xlabel, const std::string& ylabel);
  void title(const std::string& text);
  void circle(double x, double y, double radius_px, const std::string& fill, double opacity = 1.0);
  void line(double x0, double y0, double x1, double y1, const std::string& stroke,
            double width_px = 1.5, const std::string& dash = "");
  /// Axis-aligned rectangle in data coordinates.
  void rect(double x0, double y0, double x1, double y1, const std::string& fill,
            double opacity = 1.0);
  /// Legend entry at a fixed pixel slot (0, 1, 2, ...) in the top-left corner.
  void legend(int slot, const std::string& color, const std::string& label);

  std::string str() const;

 private:
  double px(double x) const;
  double py(double y) const;

  double width_;
  double height_;
  double xmin_, xmax_, ymin_, ymax_;
  std::ostringstream body_;
};

}  // namespace bdfeas
