#pragma once

#include "topocon/plane.hpp"

namespace topocon {

/// Twice the signed area of triangle o, a, b.
Rational orient(const Point& o, const Point& a, const Point& b);
bool on_segment(const Point& p, const Point& a, const Point& b);
/// Closed segments ab and cd share a point.
bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d);
Rational ring_area2(const Ring& ring);
/// Even-odd test; p must not lie on the ring.
bool inside_ring(const Point& p, const Ring& ring);
bool inside_polygon(const Point& p, const Polygon& poly);

} // namespace topocon
