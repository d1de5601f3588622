#pragma once

// Deterministic SVG 1.1 output. All coordinates are printed with six decimals
// through snprintf in the C locale, so identical inputs give identical bytes.
//
// Torus context modes:
//   torus-nocontext  one cell; wrapped edges drawn as clipped pieces, with a
//                    text label at every boundary exit naming the node at the
//                    far end of the edge
//   torus-partial    the cell plus a half-cell margin of the periodic tiling
//   torus-full       the full 3x3 tiling with the centre cell outlined

#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "wraplay/errors.hpp"
#include "wraplay/geometry.hpp"
#include "wraplay/graph.hpp"
#include "wraplay/layout.hpp"
#include "wraplay/metrics.hpp"
#include "wraplay/projection.hpp"
#include "wraplay/raster.hpp"

namespace wraplay {

enum class RenderMode { Flat, TorusNoContext, TorusPartial, TorusFull, Sphere };

inline const char* to_string(RenderMode m) {
  switch (m) {
    case RenderMode::Flat: return "flat";
    case RenderMode::TorusNoContext: return "torus-nocontext";
    case RenderMode::TorusPartial: return "torus-partial";
    case RenderMode::TorusFull: return "torus-full";
    case RenderMode::Sphere: return "sphere";
  }
  return "flat";
}

struct RenderSpec {
  RenderMode mode = RenderMode::Flat;
  std::optional<ProjectionKind> projection;  // sphere only
  int width = 0;   // 0: 650 for flat/torus, 900 for sphere
  int height = 0;  // 0: 650 for flat/torus, 317 for sphere
  bool boundary_labels = true;
  double node_radius = 4.0;
  double stroke = 1.0;
  const Clustering* clustering = nullptr;  // colours nodes when set

  int resolved_width() const { return width > 0 ? width : (mode == RenderMode::Sphere ? 900 : 650); }
  int resolved_height() const { return height > 0 ? height : (mode == RenderMode::Sphere ? 317 : 650); }
};

namespace svg {

inline std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

inline std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* palette(int cluster) {
  static const char* colours[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return colours[static_cast<std::size_t>(cluster) % 10];
}

class Writer {
 public:
  Writer(int w, int h) {
    out_ += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out_ += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + std::to_string(w) +
            "\" height=\"" + std::to_string(h) + "\" viewBox=\"0 0 " + std::to_string(w) + " " +
            std::to_string(h) + "\">\n";
    out_ += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + std::to_string(w) + "\" height=\"" +
            std::to_string(h) + "\" fill=\"#ffffff\"/>\n";
  }

  void raw(const std::string& s) { out_ += s; }

  void line(Vec2 a, Vec2 b) {
    out_ += "<line x1=\"" + num(a.x) + "\" y1=\"" + num(a.y) + "\" x2=\"" + num(b.x) + "\" y2=\"" + num(b.y) + "\"/>\n";
  }

  void polyline(const std::vector<Vec2>& pts) {
    out_ += "<polyline points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (i) out_ += ' ';
      out_ += num(pts[i].x) + "," + num(pts[i].y);
    }
    out_ += "\"/>\n";
  }

  void circle(Vec2 c, double r, const char* fill = nullptr) {
    out_ += "<circle cx=\"" + num(c.x) + "\" cy=\"" + num(c.y) + "\" r=\"" + num(r) + "\"";
    if (fill) out_ += std::string(" fill=\"") + fill + "\"";
    out_ += "/>\n";
  }

  void text(Vec2 p, const std::string& s, const char* cls) {
    out_ += std::string("<text class=\"") + cls + "\" x=\"" + num(p.x) + "\" y=\"" + num(p.y) + "\">" + escape(s) +
            "</text>\n";
  }

  void rect(Vec2 origin, double w, double h, const char* cls, const char* style) {
    out_ += std::string("<rect class=\"") + cls + "\" x=\"" + num(origin.x) + "\" y=\"" + num(origin.y) +
            "\" width=\"" + num(w) + "\" height=\"" + num(h) + "\" " + style + "/>\n";
  }

  std::string finish() {
    out_ += "</svg>\n";
    return std::move(out_);
  }

 private:
  std::string out_;
};

inline void open_group(Writer& w, const char* cls, const RenderSpec& spec, bool edges, const char* clip = nullptr) {
  std::string s = std::string("<g class=\"") + cls + "\"";
  if (clip) s += std::string(" clip-path=\"url(#") + clip + ")\"";
  if (edges) s += " stroke=\"#555555\" stroke-width=\"" + num(spec.stroke) + "\" fill=\"none\"";
  else s += " fill=\"#222222\"";
  s += ">\n";
  w.raw(s);
}

inline const char* node_fill(const RenderSpec& spec, std::size_t v) {
  if (!spec.clustering) return nullptr;
  return palette((*spec.clustering)[static_cast<NodeId>(v)]);
}

}  // namespace svg

inline std::string render(const FlatLayout& layout, const Graph& g, const RenderSpec& spec) {
  if (spec.mode != RenderMode::Flat) throw TopologyMismatch("flat layout needs mode flat");
  const int W = spec.resolved_width(), H = spec.resolved_height();
  const double margin = 20.0;
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  if (!layout.positions.empty()) {
    lo_x = hi_x = layout.positions[0].x;
    lo_y = hi_y = layout.positions[0].y;
  }
  for (const Vec2& p : layout.positions) {
    lo_x = std::min(lo_x, p.x); hi_x = std::max(hi_x, p.x);
    lo_y = std::min(lo_y, p.y); hi_y = std::max(hi_y, p.y);
  }
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double scale = std::min(W - 2 * margin, H - 2 * margin) / span;
  const Vec2 offset{(W - scale * (hi_x - lo_x)) / 2.0, (H - scale * (hi_y - lo_y)) / 2.0};
  auto px = [&](Vec2 p) { return Vec2{offset.x + scale * (p.x - lo_x), offset.y + scale * (p.y - lo_y)}; };

  svg::Writer w(W, H);
  svg::open_group(w, "edges", spec, true);
  for (const Edge& e : g.edges()) w.line(px(layout.positions[e.source]), px(layout.positions[e.target]));
  w.raw("</g>\n");
  svg::open_group(w, "nodes", spec, false);
  for (std::size_t v = 0; v < layout.positions.size(); ++v)
    w.circle(px(layout.positions[v]), spec.node_radius, svg::node_fill(spec, v));
  w.raw("</g>\n");
  return w.finish();
}

inline std::string render(const TorusLayout& layout, const Graph& g, const RenderSpec& spec) {
  if (spec.mode != RenderMode::TorusNoContext && spec.mode != RenderMode::TorusPartial &&
      spec.mode != RenderMode::TorusFull)
    throw TopologyMismatch("torus layout needs a torus-* mode");
  const int W = spec.resolved_width(), H = spec.resolved_height();
  const double margin = 20.0;
  const double cell = layout.cell_size;
  svg::Writer w(W, H);

  if (spec.mode == RenderMode::TorusNoContext) {
    const double scale = std::min(W - 2 * margin, H - 2 * margin) / cell;
    const Vec2 origin{(W - scale * cell) / 2.0, (H - scale * cell) / 2.0};
    auto px = [&](Vec2 p) { return Vec2{origin.x + scale * p.x, origin.y + scale * p.y}; };
    w.rect(origin, scale * cell, scale * cell, "cell", "fill=\"none\" stroke=\"#999999\"");
    const auto vecs = edge_vectors(layout, g);
    std::vector<std::pair<Vec2, std::string>> labels;
    svg::open_group(w, "edges", spec, true);
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
      const Edge& e = g.edges()[i];
      const auto pieces = split_at_cell_boundaries(layout.positions[e.source], vecs[i], cell, i);
      for (std::size_t k = 0; k < pieces.size(); ++k) {
        w.line(px(pieces[k].a), px(pieces[k].b));
        if (!spec.boundary_labels || pieces.size() < 2) continue;
        if (k > 0) labels.push_back({px(pieces[k].a), g.label(e.source)});
        if (k + 1 < pieces.size()) labels.push_back({px(pieces[k].b), g.label(e.target)});
      }
    }
    w.raw("</g>\n");
    if (!labels.empty()) {
      w.raw("<g class=\"boundary-labels\" font-size=\"10\" fill=\"#333333\">\n");
      const Vec2 mid{W / 2.0, H / 2.0};
      for (const auto& [p, text] : labels) {
        const Vec2 towards = mid - p;
        const double len = std::max(norm(towards), 1e-12);
        w.text(p + (6.0 / len) * towards, text, "boundary-label");
      }
      w.raw("</g>\n");
    }
    svg::open_group(w, "nodes", spec, false);
    for (std::size_t v = 0; v < layout.positions.size(); ++v)
      w.circle(px(layout.positions[v]), spec.node_radius, svg::node_fill(spec, v));
    w.raw("</g>\n");
    return w.finish();
  }

  // Context modes: a window onto the periodic tiling, in layout units
  // [lo, hi]^2, with the centre cell at [0, cell]^2.
  const bool full = spec.mode == RenderMode::TorusFull;
  const double lo = full ? -cell : -0.5 * cell;
  const double hi = full ? 2.0 * cell : 1.5 * cell;
  const double scale = std::min(W - 2 * margin, H - 2 * margin) / (hi - lo);
  const Vec2 origin{(W - scale * (hi - lo)) / 2.0, (H - scale * (hi - lo)) / 2.0};
  auto px = [&](Vec2 p) { return Vec2{origin.x + scale * (p.x - lo), origin.y + scale * (p.y - lo)}; };
  auto inside = [&](Vec2 p) { return p.x >= lo && p.x <= hi && p.y >= lo && p.y <= hi; };

  w.raw("<defs><clipPath id=\"window\"><rect x=\"" + svg::num(origin.x) + "\" y=\"" + svg::num(origin.y) +
        "\" width=\"" + svg::num(scale * (hi - lo)) + "\" height=\"" + svg::num(scale * (hi - lo)) +
        "\"/></clipPath></defs>\n");
  const auto vecs = edge_vectors(layout, g);
  svg::open_group(w, "edges", spec, true, "window");
  for (int ty = -1; ty <= 1; ++ty) {
    for (int tx = -1; tx <= 1; ++tx) {
      const Vec2 shift{tx * cell, ty * cell};
      for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Vec2 a = layout.positions[g.edges()[i].source] + shift;
        const Vec2 b = a + vecs[i];
        if (!full && (std::max(a.x, b.x) < lo || std::min(a.x, b.x) > hi || std::max(a.y, b.y) < lo ||
                      std::min(a.y, b.y) > hi))
          continue;
        w.line(px(a), px(b));
      }
    }
  }
  w.raw("</g>\n");
  svg::open_group(w, "nodes", spec, false);
  for (int ty = -1; ty <= 1; ++ty) {
    for (int tx = -1; tx <= 1; ++tx) {
      for (std::size_t v = 0; v < layout.positions.size(); ++v) {
        const Vec2 p = layout.positions[v] + Vec2{tx * cell, ty * cell};
        if (full || inside(p)) w.circle(px(p), spec.node_radius, svg::node_fill(spec, v));
      }
    }
  }
  w.raw("</g>\n");
  w.rect(px({0.0, 0.0}), scale * cell, scale * cell, "centre-cell", "fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"");
  return w.finish();
}

inline std::string render(const SphereLayout& layout, const Graph& g, const RenderSpec& spec) {
  if (spec.mode != RenderMode::Sphere) throw TopologyMismatch("sphere layout needs mode sphere");
  if (!spec.projection) throw InvalidInput("sphere rendering needs a projection");
  const ProjectionKind kind = *spec.projection;
  const int W = spec.resolved_width(), H = spec.resolved_height();
  const ScreenFrame frame = make_frame(kind.tag, W, H);
  svg::Writer w(W, H);

  // outline
  std::string d;
  if (kind.tag == ProjectionTag::EqualEarth) {
    constexpr int kSamples = 128;
    for (int i = 0; i <= kSamples; ++i) {
      const double lat = -kPi / 2 + kPi * i / kSamples;
      const Vec2 p = frame.to_pixel(project_equal_earth(kPi, lat), frame.centre);
      d += (i == 0 ? "M" : "L") + svg::num(p.x) + "," + svg::num(p.y);
    }
    for (int i = kSamples; i >= 0; --i) {
      const double lat = -kPi / 2 + kPi * i / kSamples;
      const Vec2 p = frame.to_pixel(project_equal_earth(-kPi, lat), frame.centre);
      d += "L" + svg::num(p.x) + "," + svg::num(p.y);
    }
    d += "Z";
  } else {
    for (Vec2 c : {frame.west_centre, frame.east_centre}) {
      const double r = frame.disc_radius;
      d += "M" + svg::num(c.x - r) + "," + svg::num(c.y) + "A" + svg::num(r) + "," + svg::num(r) + " 0 1,0 " +
           svg::num(c.x + r) + "," + svg::num(c.y) + "A" + svg::num(r) + "," + svg::num(r) + " 0 1,0 " +
           svg::num(c.x - r) + "," + svg::num(c.y) + "Z";
    }
  }
  w.raw("<path class=\"outline\" d=\"" + d + "\" fill=\"#f4f8fb\" stroke=\"#999999\"/>\n");

  svg::open_group(w, "edges", spec, true);
  for (const auto& path : projected_edge_paths(layout, g, kind, frame)) w.polyline(path);
  w.raw("</g>\n");
  svg::open_group(w, "nodes", spec, false);
  for (std::size_t v = 0; v < layout.positions.size(); ++v) {
    const Vec3 q = rotate(layout.positions[v], kind.rotation);
    Vec2 p;
    if (kind.tag == ProjectionTag::EqualEarth) {
      const LonLat ll = to_lon_lat(q);
      p = frame.to_pixel(project_equal_earth(ll.lon, ll.lat), frame.centre);
    } else {
      const HemispherePoint h = project_orthographic_hemisphere(layout.positions[v], kind.rotation);
      p = frame.to_pixel({h.u, h.v}, h.face == HemisphereFace::East ? frame.east_centre : frame.west_centre);
    }
    w.circle(p, spec.node_radius, svg::node_fill(spec, v));
  }
  w.raw("</g>\n");
  return w.finish();
}

}  // namespace wraplay
