#include "homflow/ball_output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "homflow/error.hpp"

namespace homflow {

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string ball_csv(const NormBall& ball) {
  if (ball.dim != 2) throw Error(ErrorCode::InvalidArgument, "CSV export needs d = 2");
  std::ostringstream out;
  out << "ux,uy,gauge,bx,by\n";
  for (const auto& s : ball.samples)
    out << format_number(s.direction[0]) << ',' << format_number(s.direction[1]) << ','
        << format_number(s.gauge) << ',' << format_number(s.boundary[0]) << ','
        << format_number(s.boundary[1]) << '\n';
  return out.str();
}

namespace {

constexpr double kCanvas = 1000.0;
constexpr double kCenter = 500.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

void draw_inset(std::ostringstream& out, const PeriodicGraph& g) {
  if (g.dim() != 2) return;
  const double x0 = 760.0, y0 = 20.0, side = 220.0;
  // The unit cell and its neighbours occupy [-1, 2]^2; show [-0.5, 1.5]^2.
  auto sx = [&](double x) { return x0 + (x + 0.5) / 2.0 * side; };
  auto sy = [&](double y) { return y0 + side - (y + 0.5) / 2.0 * side; };
  out << "<rect x=\"" << format_number(x0) << "\" y=\"" << format_number(y0) << "\" width=\""
      << format_number(side) << "\" height=\"" << format_number(side)
      << "\" fill=\"#ffffff\" stroke=\"#999999\"/>\n";
  out << "<rect x=\"" << format_number(sx(0)) << "\" y=\"" << format_number(sy(1)) << "\" width=\""
      << format_number(side / 2.0) << "\" height=\"" << format_number(side / 2.0)
      << "\" fill=\"none\" stroke=\"#cccccc\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t i = 0; i < g.orbit_count(); ++i) {
    const auto& o = g.orbits()[i];
    const auto& a = g.fiber()[o.from].pos;
    const auto& d = g.displacement(i);
    out << "<line x1=\"" << format_number(sx(a[0])) << "\" y1=\"" << format_number(sy(a[1]))
        << "\" x2=\"" << format_number(sx(a[0] + d[0])) << "\" y2=\"" << format_number(sy(a[1] + d[1]))
        << "\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";
  }
  for (const auto& v : g.fiber())
    out << "<circle cx=\"" << format_number(sx(v.pos[0])) << "\" cy=\"" << format_number(sy(v.pos[1]))
        << "\" r=\"4\" fill=\"#1f4e99\"/>\n";
}

}  // namespace

std::string ball_svg(const NormBall& ball, const PeriodicGraph* inset, const std::string& title) {
  if (ball.dim != 2) throw Error(ErrorCode::InvalidArgument, "SVG export needs d = 2");
  double extent = 0.0;
  for (const auto& p : ball.polygon) extent = std::max({extent, std::abs(p.x), std::abs(p.y)});
  for (const auto& s : ball.samples)
    extent = std::max({extent, std::abs(s.boundary[0]), std::abs(s.boundary[1])});
  if (extent == 0.0) extent = 1.0;
  const double scale = 0.4 * kCanvas / extent;
  auto px = [&](double x) { return format_number(kCenter + scale * x); };
  auto py = [&](double y) { return format_number(kCenter - scale * y); };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"1000\" viewBox=\"0 0 1000 1000\">\n";
  out << "<rect width=\"1000\" height=\"1000\" fill=\"#ffffff\"/>\n";
  out << "<line x1=\"0\" y1=\"500\" x2=\"1000\" y2=\"500\" stroke=\"#bbbbbb\"/>\n";
  out << "<line x1=\"500\" y1=\"0\" x2=\"500\" y2=\"1000\" stroke=\"#bbbbbb\"/>\n";
  for (int t : {-1, 1}) {
    out << "<line x1=\"" << px(t) << "\" y1=\"492\" x2=\"" << px(t) << "\" y2=\"508\" stroke=\"#777777\"/>\n";
    out << "<line x1=\"492\" y1=\"" << py(t) << "\" x2=\"508\" y2=\"" << py(t) << "\" stroke=\"#777777\"/>\n";
  }
  out << "<circle cx=\"500\" cy=\"500\" r=\"" << format_number(scale)
      << "\" fill=\"none\" stroke=\"#dddddd\" stroke-dasharray=\"6 4\"/>\n";
  if (!ball.polygon.empty()) {
    out << "<polygon points=\"";
    for (std::size_t i = 0; i < ball.polygon.size(); ++i)
      out << (i ? " " : "") << px(ball.polygon[i].x) << ',' << py(ball.polygon[i].y);
    out << "\" fill=\"#d6e4f5\" fill-opacity=\"0.7\" stroke=\"#1f4e99\" stroke-width=\"2\"/>\n";
  }
  for (const auto& s : ball.samples)
    out << "<circle cx=\"" << px(s.boundary[0]) << "\" cy=\"" << py(s.boundary[1])
        << "\" r=\"1.5\" fill=\"#1f4e99\"/>\n";
  for (std::size_t i : ball.vertices)
    out << "<circle cx=\"" << px(ball.polygon[i].x) << "\" cy=\"" << py(ball.polygon[i].y)
        << "\" r=\"5\" fill=\"#c0392b\"/>\n";
  if (!title.empty())
    out << "<text x=\"24\" y=\"44\" font-family=\"sans-serif\" font-size=\"28\">" << escape(title)
        << "</text>\n";
  if (inset) draw_inset(out, *inset);
  out << "</svg>\n";
  return out.str();
}

}  // namespace homflow
