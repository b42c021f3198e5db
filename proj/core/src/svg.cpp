#include "bdfeas/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

#include "bdfeas/error.hpp"

namespace bdfeas {

namespace {

constexpr double kMargin = 50.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

SvgCanvas::SvgCanvas(double width, double height, double xmin, double xmax, double ymin,
                     double ymax)
    : width_(width), height_(height), xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax) {
  if (!(xmax > xmin) || !(ymax > ymin)) throw ParameterError("empty plot range");
  body_ << std::fixed << std::setprecision(2);
}

double SvgCanvas::px(double x) const {
  return kMargin + (x - xmin_) / (xmax_ - xmin_) * (width_ - 2 * kMargin);
}

double SvgCanvas::py(double y) const {
  return height_ - kMargin - (y - ymin_) / (ymax_ - ymin_) * (height_ - 2 * kMargin);
}

void SvgCanvas::axes(const std::string& xlabel, const std::string& ylabel) {
  const double left = kMargin;
  const double right = width_ - kMargin;
  const double top = kMargin;
  const double bottom = height_ - kMargin;
  body_ << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"#333\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = xmin_ + (xmax_ - xmin_) * i / 4.0;
    const double fy = ymin_ + (ymax_ - ymin_) * i / 4.0;
    body_ << "<text x=\"" << px(fx) << "\" y=\"" << bottom + 15
          << "\" font-size=\"10\" text-anchor=\"middle\">" << fx << "</text>\n";
    body_ << "<text x=\"" << left - 5 << "\" y=\"" << py(fy) + 3
          << "\" font-size=\"10\" text-anchor=\"end\">" << fy << "</text>\n";
  }
  body_ << "<text x=\"" << width_ / 2 << "\" y=\"" << height_ - 12
        << "\" font-size=\"12\" text-anchor=\"middle\">" << escape(xlabel) << "</text>\n";
  body_ << "<text x=\"14\" y=\"" << height_ / 2 << "\" font-size=\"12\" text-anchor=\"middle\""
        << " transform=\"rotate(-90 14 " << height_ / 2 << ")\">" << escape(ylabel)
        << "</text>\n";
}

void SvgCanvas::title(const std::string& text) {
  body_ << "<text x=\"" << width_ / 2 << "\" y=\"" << kMargin / 2
        << "\" font-size=\"14\" text-anchor=\"middle\">" << escape(text) << "</text>\n";
}

void SvgCanvas::circle(double x, double y, double radius_px, const std::string& fill,
                       double opacity) {
  body_ << "<circle cx=\"" << px(x) << "\" cy=\"" << py(y) << "\" r=\"" << radius_px
        << "\" fill=\"" << fill << "\" fill-opacity=\"" << opacity << "\"/>\n";
}

void SvgCanvas::line(double x0, double y0, double x1, double y1, const std::string& stroke,
                     double width_px, const std::string& dash) {
  body_ << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1)
        << "\" y2=\"" << py(y1) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << width_px
        << "\"";
  if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
  body_ << "/>\n";
}

void SvgCanvas::rect(double x0, double y0, double x1, double y1, const std::string& fill,
                     double opacity) {
  const double left = std::min(px(x0), px(x1));
  const double top = std::min(py(y0), py(y1));
  body_ << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << std::abs(px(x1) - px(x0))
        << "\" height=\"" << std::abs(py(y1) - py(y0)) << "\" fill=\"" << fill
        << "\" fill-opacity=\"" << opacity << "\"/>\n";
}

void SvgCanvas::legend(int slot, const std::string& color, const std::string& label) {
  const double y = kMargin + 15 + 16 * slot;
  body_ << "<rect x=\"" << kMargin + 10 << "\" y=\"" << y - 9 << "\" width=\"10\" height=\"10\""
        << " fill=\"" << color << "\"/>\n";
  body_ << "<text x=\"" << kMargin + 25 << "\" y=\"" << y << "\" font-size=\"11\">"
        << escape(label) << "</text>\n";
}

std::string SvgCanvas::str() const {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_
      << "\" height=\"" << height_ << "\" viewBox=\"0 0 " << width_ << ' ' << height_ << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
  return out.str();
}

}  // namespace bdfeas
