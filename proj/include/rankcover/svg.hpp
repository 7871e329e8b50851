#pragma once

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "rankcover/iop.hpp"
#include "rankcover/plan.hpp"

namespace rankcover {

inline constexpr const char* kColorH = "#ff8c00";
inline constexpr const char* kColorV = "#800080";
inline constexpr const char* kColorTransition = "#2ca02c";

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline void svg_header(std::ostream& out, const IOP& iop) {
  const double l = iop.cell_size();
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(iop.cols() * l) << "\" height=\""
      << num(iop.rows() * l) << "\" viewBox=\"0 0 " << num(iop.cols() * l) << ' ' << num(iop.rows() * l)
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"#404040\"/>\n<g fill=\"#f0f0f0\" stroke=\"#c8c8c8\" stroke-width=\""
      << num(l * 0.02) << "\">\n";
  for (const Cell& c : iop.cells())
    out << "<rect x=\"" << num(c.col * l) << "\" y=\"" << num(c.row * l) << "\" width=\"" << num(l)
        << "\" height=\"" << num(l) << "\"/>\n";
  out << "</g>\n";
}

inline void svg_ranks(std::ostream& out, const IOP& iop, const std::vector<Rank>& ranks) {
  const double l = iop.cell_size();
  out << "<g fill-opacity=\"0.55\" stroke-linecap=\"round\">\n";
  for (const Rank& r : ranks) {
    const char* color = r.orientation == Orientation::H ? kColorH : kColorV;
    const Cell& a = iop.cell(r.cells.front());
    const Cell& b = iop.cell(r.cells.back());
    const double inset = 0.08 * l;
    out << "<rect x=\"" << num(a.col * l + inset) << "\" y=\"" << num(a.row * l + inset) << "\" width=\""
        << num((b.col - a.col + 1) * l - 2 * inset) << "\" height=\"" << num((b.row - a.row + 1) * l - 2 * inset)
        << "\" fill=\"" << color << "\"/>\n";
    out << "<line x1=\"" << num(r.first.x) << "\" y1=\"" << num(r.first.y) << "\" x2=\"" << num(r.last.x)
        << "\" y2=\"" << num(r.last.y) << "\" stroke=\"" << color << "\" stroke-width=\"" << num(0.12 * l)
        << "\"/>\n";
  }
  out << "</g>\n";
}

inline void svg_polyline(std::ostream& out, const std::vector<Point>& pts, double width) {
  out << "<polyline fill=\"none\" stroke=\"" << kColorTransition << "\" stroke-width=\"" << num(width)
      << "\" stroke-dasharray=\"" << num(2 * width) << ' ' << num(width) << "\" points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) out << (k ? " " : "") << num(pts[k].x) << ',' << num(pts[k].y);
  out << "\"/>\n";
}

}  // namespace detail

// Partition picture: IOP cells, H ranks orange, V ranks purple.
inline void write_partition_svg(std::ostream& out, const IOP& iop, const std::vector<Rank>& ranks) {
  detail::svg_header(out, iop);
  detail::svg_ranks(out, iop, ranks);
  out << "</svg>\n";
}

// Plan picture: the partition plus transition paths in green and a dot at the start.
inline void write_plan_svg(std::ostream& out, const IOP& iop, const CoveragePlan& plan) {
  detail::svg_header(out, iop);
  detail::svg_ranks(out, iop, plan.ranks);
  const double w = 0.08 * iop.cell_size();
  for (const TransitionPath& t : plan.transitions) detail::svg_polyline(out, t.waypoints, w);
  if (plan.return_leg) detail::svg_polyline(out, plan.return_leg->waypoints, w);
  if (!plan.tour.empty())
    out << "<circle cx=\"" << detail::num(plan.tour.front().start.x) << "\" cy=\""
        << detail::num(plan.tour.front().start.y) << "\" r=\"" << detail::num(0.2 * iop.cell_size())
        << "\" fill=\"" << kColorTransition << "\"/>\n";
  out << "</svg>\n";
}

}  // namespace rankcover
