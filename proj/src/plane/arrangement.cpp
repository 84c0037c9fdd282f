#include "geometry.hpp"

#include "topocon/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace topocon {

namespace {

struct Seg {
    Point a; // a < b
    Point b;
    Rational ylo;
    Rational yhi;
};

Seg make_seg(const Point& p, const Point& q)
{
    Seg s{p < q ? p : q, p < q ? q : p, {}, {}};
    s.ylo = std::min(p.y, q.y);
    s.yhi = std::max(p.y, q.y);
    return s;
}

void validate_ring(const Ring& ring, const std::string& where)
{
    std::size_t n = ring.size();
    if (n < 3) {
        throw Error(Errc::geometry, where + ": fewer than 3 vertices");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (ring[i] == ring[(i + 1) % n]) {
            throw Error(Errc::geometry, where + ": repeated vertex");
        }
    }
    if (sgn(ring_area2(ring)) == 0) {
        throw Error(Errc::geometry, where + ": zero area");
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            const Point& c = ring[j];
            const Point& d = ring[(j + 1) % n];
            bool next = j == i + 1;
            bool wrap = i == 0 && j == n - 1;
            if (next || wrap) {
                // Adjacent edges share one vertex and must not fold back.
                const Point& s = next ? b : a;
                const Point& p = next ? a : b;
                const Point& q = next ? d : c;
                if (sgn(orient(s, p, q)) == 0 && sgn((p.x - s.x) * (q.x - s.x) + (p.y - s.y) * (q.y - s.y)) > 0) {
                    throw Error(Errc::geometry, where + ": self-intersecting");
                }
                continue;
            }
            if (segments_meet(a, b, c, d)) {
                throw Error(Errc::geometry, where + ": self-intersecting");
            }
        }
    }
}

class UnionFind {
public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    std::size_t find(std::size_t x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

private:
    std::vector<std::size_t> parent_;
};

// Half-plane split of directions, then counter-clockwise order.
bool angle_less(const Rational& ax, const Rational& ay, const Rational& bx, const Rational& by)
{
    auto half = [](const Rational& x, const Rational& y) { return (sgn(y) > 0 || (sgn(y) == 0 && sgn(x) > 0)) ? 0 : 1; };
    int ha = half(ax, ay);
    int hb = half(bx, by);
    if (ha != hb) {
        return ha < hb;
    }
    return sgn(ax * by - ay * bx) > 0;
}

} // namespace

Rational orient(const Point& o, const Point& a, const Point& b)
{
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b)
{
    return sgn(orient(a, b, p)) == 0 && std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool segments_meet(const Point& a, const Point& b, const Point& c, const Point& d)
{
    int o1 = sgn(orient(a, b, c));
    int o2 = sgn(orient(a, b, d));
    int o3 = sgn(orient(c, d, a));
    int o4 = sgn(orient(c, d, b));
    if (o1 * o2 < 0 && o3 * o4 < 0) {
        return true;
    }
    return (o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) || (o3 == 0 && on_segment(a, c, d)) ||
           (o4 == 0 && on_segment(b, c, d));
}

Rational ring_area2(const Ring& ring)
{
    Rational s = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& p = ring[i];
        const Point& q = ring[(i + 1) % ring.size()];
        s += p.x * q.y - p.y * q.x;
    }
    return s;
}

bool inside_ring(const Point& p, const Ring& ring)
{
    bool in = false;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const Point& a = ring[i];
        const Point& b = ring[(i + 1) % ring.size()];
        if ((a.y > p.y) != (b.y > p.y)) {
            Rational x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (x > p.x) {
                in = !in;
            }
        }
    }
    return in;
}

bool inside_polygon(const Point& p, const Polygon& poly)
{
    if (!inside_ring(p, poly.outer)) {
        return false;
    }
    for (const auto& h : poly.holes) {
        if (inside_ring(p, h)) {
            return false;
        }
    }
    return true;
}

const Bits& Arrangement::region(const std::string& name) const
{
    auto it = regions_.find(name);
    if (it == regions_.end()) {
        throw Error(Errc::unbound_variable, "unbound variable '" + name + "'");
    }
    return it->second;
}

ArrangementPtr Arrangement::build(const PlaneScene& scene)
{
    // Input segments, validated ring by ring.
    std::set<std::pair<Point, Point>> input;
    auto add_ring = [&](const Ring& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) {
            Seg s = make_seg(ring[i], ring[(i + 1) % ring.size()]);
            input.emplace(s.a, s.b);
        }
    };
    for (const auto& [name, polys] : scene.regions) {
        for (std::size_t p = 0; p < polys.size(); ++p) {
            std::string where = "region '" + name + "' polygon " + std::to_string(p);
            validate_ring(polys[p].outer, where + " ring 0");
            add_ring(polys[p].outer);
            for (std::size_t h = 0; h < polys[p].holes.size(); ++h) {
                validate_ring(polys[p].holes[h], where + " ring " + std::to_string(h + 1));
                add_ring(polys[p].holes[h]);
            }
        }
    }
    Ring box;
    if (scene.universe) {
        const Box& u = *scene.universe;
        if (!(u.lo.x < u.hi.x && u.lo.y < u.hi.y)) {
            throw Error(Errc::geometry, "universe box is empty");
        }
        box = rect(u.lo.x, u.lo.y, u.hi.x, u.hi.y).outer;
        add_ring(box);
    }

    // Split every segment at every point where another one meets it.
    std::vector<Seg> segs;
    for (const auto& [a, b] : input) {
        segs.push_back(make_seg(a, b));
    }
    std::vector<std::vector<Point>> cuts(segs.size());
    for (std::size_t i = 0; i < segs.size(); ++i) {
        cuts[i] = {segs[i].a, segs[i].b};
    }
    for (std::size_t i = 0; i < segs.size(); ++i) {
        const Seg& s = segs[i];
        for (std::size_t j = i + 1; j < segs.size(); ++j) {
            const Seg& t = segs[j];
            // Segments are sorted by left endpoint, so nothing later can
            // reach back once t starts right of s.
            if (t.a.x > s.b.x) {
                break;
            }
            if (t.ylo > s.yhi || s.ylo > t.yhi) {
                continue;
            }
            int o1 = sgn(orient(s.a, s.b, t.a));
            int o2 = sgn(orient(s.a, s.b, t.b));
            if (o1 == 0 && o2 == 0) {
                for (const Point* p : {&t.a, &t.b}) {
                    if (on_segment(*p, s.a, s.b)) {
                        cuts[i].push_back(*p);
                    }
                }
                for (const Point* p : {&s.a, &s.b}) {
                    if (on_segment(*p, t.a, t.b)) {
                        cuts[j].push_back(*p);
                    }
                }
                continue;
            }
            int o3 = sgn(orient(t.a, t.b, s.a));
            int o4 = sgn(orient(t.a, t.b, s.b));
            if (o1 * o2 < 0 && o3 * o4 < 0) {
                Rational dx = s.b.x - s.a.x;
                Rational dy = s.b.y - s.a.y;
                Rational ex = t.b.x - t.a.x;
                Rational ey = t.b.y - t.a.y;
                Rational u = ((t.a.x - s.a.x) * ey - (t.a.y - s.a.y) * ex) / (dx * ey - dy * ex);
                Point x{s.a.x + u * dx, s.a.y + u * dy};
                cuts[i].push_back(x);
                cuts[j].push_back(x);
                continue;
            }
            if (o1 == 0 && on_segment(t.a, s.a, s.b)) {
                cuts[i].push_back(t.a);
            }
            if (o2 == 0 && on_segment(t.b, s.a, s.b)) {
                cuts[i].push_back(t.b);
            }
            if (o3 == 0 && on_segment(s.a, t.a, t.b)) {
                cuts[j].push_back(s.a);
            }
            if (o4 == 0 && on_segment(s.b, t.a, t.b)) {
                cuts[j].push_back(s.b);
            }
        }
    }
    std::set<std::pair<Point, Point>> pieces;
    for (auto& c : cuts) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t k = 0; k + 1 < c.size(); ++k) {
            pieces.emplace(c[k], c[k + 1]);
        }
    }

    auto arr = std::shared_ptr<Arrangement>(new Arrangement());
    arr->scene_ = scene;
    std::map<Point, std::size_t> vid;
    for (const auto& [a, b] : pieces) {
        vid.emplace(a, 0);
        vid.emplace(b, 0);
    }
    std::vector<Point> pts;
    for (auto& [p, id] : vid) {
        id = pts.size();
        pts.push_back(p);
    }
    struct RawEdge {
        std::size_t from;
        std::size_t to;
    };
    std::vector<RawEdge> raw;
    for (const auto& [a, b] : pieces) {
        raw.push_back({vid.at(a), vid.at(b)});
    }

    // Half-edge h = 2e runs from -> to, 2e + 1 the other way.
    std::size_t nh = raw.size() * 2;
    auto origin = [&](std::size_t h) { return h % 2 == 0 ? raw[h / 2].from : raw[h / 2].to; };
    auto target = [&](std::size_t h) { return h % 2 == 0 ? raw[h / 2].to : raw[h / 2].from; };
    std::vector<std::vector<std::size_t>> out(pts.size());
    for (std::size_t h = 0; h < nh; ++h) {
        out[origin(h)].push_back(h);
    }
    std::vector<std::size_t> pos(nh);
    for (std::size_t v = 0; v < pts.size(); ++v) {
        auto& list = out[v];
        std::sort(list.begin(), list.end(), [&](std::size_t g, std::size_t h) {
            const Point& o = pts[v];
            const Point& p = pts[target(g)];
            const Point& q = pts[target(h)];
            return angle_less(p.x - o.x, p.y - o.y, q.x - o.x, q.y - o.y);
        });
        for (std::size_t k = 0; k < list.size(); ++k) {
            pos[list[k]] = k;
        }
    }
    // Faces lie left of their half-edges: after arriving at v, turn to the
    // clockwise neighbour of the way back.
    auto next = [&](std::size_t h) {
        std::size_t v = target(h);
        const auto& list = out[v];
        std::size_t k = pos[h ^ 1];
        return list[(k + list.size() - 1) % list.size()];
    };

    std::vector<std::size_t> cycle_of(nh, Arrangement::none);
    std::vector<std::size_t> cycle_start;
    std::vector<Rational> cycle_area;
    for (std::size_t h = 0; h < nh; ++h) {
        if (cycle_of[h] != Arrangement::none) {
            continue;
        }
        std::size_t id = cycle_start.size();
        Rational area = 0;
        std::size_t g = h;
        do {
            cycle_of[g] = id;
            const Point& p = pts[origin(g)];
            const Point& q = pts[target(g)];
            area += p.x * q.y - p.y * q.x;
            g = next(g);
        } while (g != h);
        cycle_start.push_back(h);
        cycle_area.push_back(area);
    }
    auto cycle_ring = [&](std::size_t c) {
        Ring ring;
        std::size_t g = cycle_start[c];
        do {
            ring.push_back(pts[origin(g)]);
            g = next(g);
        } while (g != cycle_start[c]);
        return ring;
    };

    UnionFind comp(pts.size());
    for (const auto& e : raw) {
        comp.unite(e.from, e.to);
    }

    // Counter-clockwise cycles bound faces; every other cycle is the outside
    // of a connected piece and belongs to the smallest face around it.
    std::size_t ncycles = cycle_start.size();
    std::vector<std::size_t> face_of_cycle(ncycles, Arrangement::none);
    std::vector<std::size_t> face_cycle;
    for (std::size_t c = 0; c < ncycles; ++c) {
        if (sgn(cycle_area[c]) > 0) {
            face_of_cycle[c] = face_cycle.size();
            face_cycle.push_back(c);
        }
    }
    std::size_t nfaces = face_cycle.size() + 1;
    std::size_t outer_face = face_cycle.size();
    std::vector<Ring> face_rings;
    for (std::size_t c : face_cycle) {
        face_rings.push_back(cycle_ring(c));
    }
    for (std::size_t c = 0; c < ncycles; ++c) {
        if (face_of_cycle[c] != Arrangement::none) {
            continue;
        }
        std::size_t v = origin(cycle_start[c]);
        std::size_t root = comp.find(v);
        std::size_t best = outer_face;
        for (std::size_t f = 0; f < face_cycle.size(); ++f) {
            if (comp.find(origin(cycle_start[face_cycle[f]])) == root) {
                continue;
            }
            if (best != outer_face && cycle_area[face_cycle[f]] >= cycle_area[face_cycle[best]]) {
                continue;
            }
            if (inside_ring(pts[v], face_rings[f])) {
                best = f;
            }
        }
        face_of_cycle[c] = best;
    }

    // A sample point per face: step off the midpoint of a boundary edge,
    // towards the face, halfway to the next thing in the way.
    Point far_point{0, 0};
    for (const auto& p : pts) {
        far_point.x = std::max(far_point.x, Rational(p.x + 1));
        far_point.y = std::max(far_point.y, Rational(p.y + 1));
    }
    std::vector<Point> samples(nfaces, far_point);
    for (std::size_t f = 0; f < face_cycle.size(); ++f) {
        std::size_t h = cycle_start[face_cycle[f]];
        const Point& u = pts[origin(h)];
        const Point& w = pts[target(h)];
        Point m{(u.x + w.x) / 2, (u.y + w.y) / 2};
        bool vertical_ray = u.x != w.x;
        // Left of travel: up when heading right, -x when heading up.
        int dir = vertical_ray ? (u.x < w.x ? 1 : -1) : (u.y < w.y ? -1 : 1);
        std::optional<Rational> hit;
        auto consider = [&](const Rational& c) {
            Rational d = (c - (vertical_ray ? m.y : m.x)) * dir;
            if (sgn(d) > 0 && (!hit || d < *hit)) {
                hit = d;
            }
        };
        for (const auto& e : raw) {
            const Point& a = pts[e.from];
            const Point& b = pts[e.to];
            const Rational& ma = vertical_ray ? a.x : a.y;
            const Rational& mb = vertical_ray ? b.x : b.y;
            const Rational& la = vertical_ray ? a.y : a.x;
            const Rational& lb = vertical_ray ? b.y : b.x;
            const Rational& key = vertical_ray ? m.x : m.y;
            if (ma == mb) {
                if (ma == key) {
                    consider(la);
                    consider(lb);
                }
                continue;
            }
            if (std::min(ma, mb) <= key && key <= std::max(ma, mb)) {
                consider(la + (key - ma) * (lb - la) / (mb - ma));
            }
        }
        Rational step = hit ? Rational(*hit / 2) : Rational(1);
        samples[f] = vertical_ray ? Point{m.x, m.y + step * dir} : Point{m.x + step * dir, m.y};
    }

    // With a universe, only faces inside the box remain.
    std::vector<std::size_t> keep(nfaces, Arrangement::none);
    std::size_t kept = 0;
    for (std::size_t f = 0; f < nfaces; ++f) {
        bool in = true;
        if (scene.universe) {
            const Box& u = *scene.universe;
            const Point& s = samples[f];
            in = f != outer_face && u.lo.x < s.x && s.x < u.hi.x && u.lo.y < s.y && s.y < u.hi.y;
        }
        if (in) {
            keep[f] = kept++;
            arr->samples_.push_back(samples[f]);
        }
    }
    arr->face_count_ = kept;
    arr->unbounded_ = scene.universe ? Arrangement::none : keep[outer_face];

    auto face_of = [&](std::size_t h) { return keep[face_of_cycle[cycle_of[h]]]; };
    for (std::size_t e = 0; e < raw.size(); ++e) {
        std::size_t l = face_of(2 * e);
        std::size_t r = face_of(2 * e + 1);
        bool in = l != Arrangement::none && r != Arrangement::none;
        arr->edges_.push_back({raw[e].from, raw[e].to, l, r, in});
    }
    for (std::size_t v = 0; v < pts.size(); ++v) {
        Vertex vx{pts[v], {}, true};
        for (std::size_t h : out[v]) {
            std::size_t f = face_of(h);
            if (f == Arrangement::none) {
                vx.in_space = false;
            } else {
                vx.faces.push_back(f);
            }
        }
        std::sort(vx.faces.begin(), vx.faces.end());
        vx.faces.erase(std::unique(vx.faces.begin(), vx.faces.end()), vx.faces.end());
        if (!vx.in_space) {
            vx.faces.clear();
        }
        arr->vertices_.push_back(std::move(vx));
    }

    for (const auto& [name, polys] : scene.regions) {
        Bits in(kept);
        for (std::size_t f = 0; f < kept; ++f) {
            const Point& s = arr->samples_[f];
            in[f] = std::any_of(polys.begin(), polys.end(), [&](const Polygon& p) { return inside_polygon(s, p); });
        }
        arr->regions_.emplace(name, std::move(in));
    }
    return arr;
}

} // namespace topocon
