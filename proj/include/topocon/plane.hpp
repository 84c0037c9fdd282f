#pragma once

// Exact planar semantics for polygonal regular closed sets.
//
// A scene names regions, each a union of polygons with holes over rational
// coordinates. All rings of a scene are overlaid into one planar
// arrangement; every region is then a set of faces, and the Boolean
// operations and the predicates C, c and ci reduce to face sets and their
// incidences with edges and vertices.
//
// A scene may declare an open axis-parallel box as its universe. The box
// then stands in for the whole plane: faces outside it are dropped and its
// boundary is treated as lying at infinity. This makes regions that are
// unbounded in the plane (half-planes, strips) representable.

#include "topocon/formula.hpp"
#include "topocon/quasisaw.hpp"

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace topocon {

using Rational = mpq_class;

/// Accepts integers and "p/q" with q != 0; the result is canonical.
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

struct Point {
    Rational x;
    Rational y;

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator<(const Point& a, const Point& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }
};

using Ring = std::vector<Point>;

struct Polygon {
    Ring outer;
    std::vector<Ring> holes;
};

struct Box {
    Point lo;
    Point hi;
};

struct PlaneScene {
    std::map<std::string, std::vector<Polygon>> regions;
    std::optional<Box> universe;
};

/// Axis-parallel rectangle [x0,x1] x [y0,y1], counter-clockwise.
Polygon rect(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1);

// Scene file: {"regions":{"r":[{"outer":[[x,y],...],"holes":[[[x,y],...]]}]},
//              "universe":[[x0,y0],[x1,y1]]}   (universe optional)
PlaneScene scene_from_json(const std::string& text);
std::string scene_to_json(const PlaneScene& s);

class Arrangement;
using ArrangementPtr = std::shared_ptr<const Arrangement>;

class Arrangement {
public:
    static constexpr std::size_t none = static_cast<std::size_t>(-1);

    struct Edge {
        std::size_t from;
        std::size_t to;
        std::size_t left;  // face left of from -> to
        std::size_t right;
        bool in_space;     // false on the universe boundary
    };

    struct Vertex {
        Point at;
        std::vector<std::size_t> faces; // sorted, distinct
        bool in_space;
    };

    /// Throws Error(geometry) naming region, polygon and ring for degenerate
    /// or self-intersecting rings.
    static ArrangementPtr build(const PlaneScene& scene);

    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::size_t face_count() const { return face_count_; }
    /// Index of the unbounded face, or none when the scene has a universe.
    std::size_t unbounded_face() const { return unbounded_; }
    /// Counts faces other than the unbounded one.
    std::size_t bounded_face_count() const { return face_count_ - (unbounded_ == none ? 0 : 1); }
    /// A point inside the face (for the unbounded face, one outside all rings).
    const Point& sample(std::size_t face) const { return samples_[face]; }

    const PlaneScene& scene() const { return scene_; }
    bool has_region(const std::string& name) const { return regions_.count(name) != 0; }
    /// Faces inside the named region; throws Error(unbound_variable).
    const Bits& region(const std::string& name) const;

private:
    Arrangement() = default;

    PlaneScene scene_;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::size_t face_count_ = 0;
    std::size_t unbounded_ = none;
    std::vector<Point> samples_;
    std::map<std::string, Bits> regions_;
};

class FaceSet {
public:
    FaceSet(ArrangementPtr arr, Bits faces);

    const ArrangementPtr& arrangement() const { return arr_; }
    const Bits& faces() const { return faces_; }
    bool empty() const { return faces_.none(); }

    friend bool operator==(const FaceSet& a, const FaceSet& b);

private:
    ArrangementPtr arr_;
    Bits faces_;
};

FaceSet fs_region(const ArrangementPtr& arr, const std::string& name);
FaceSet fs_empty(const ArrangementPtr& arr);
FaceSet fs_all(const ArrangementPtr& arr);
FaceSet fs_sum(const FaceSet& a, const FaceSet& b);
FaceSet fs_product(const FaceSet& a, const FaceSet& b);
FaceSet fs_complement(const FaceSet& a);

/// Faces linked through shared edges or vertices.
bool fs_connected(const FaceSet& a);
/// Faces linked through shared edges, and through vertices whose incident
/// faces all belong to a.
bool fs_interior_connected(const FaceSet& a);
bool fs_contact(const FaceSet& a, const FaceSet& b);
/// Connected components, ordered by least face index.
std::vector<FaceSet> fs_components(const FaceSet& a);

FaceSet plane_eval(const ArrangementPtr& arr, const Term& t);
bool plane_check(const ArrangementPtr& arr, const Formula& f);
bool plane_check(const PlaneScene& s, const Formula& f);

enum class Rcc8 { DC, EC, PO, EQ, TPP, NTPP, TPPi, NTPPi };
std::string_view to_string(Rcc8 r);

/// Throws Error(invalid_argument) if either region is empty.
Rcc8 rcc8(const ArrangementPtr& arr, const std::string& a, const std::string& b);
Rcc8 rcc8(const PlaneScene& s, const std::string& a, const std::string& b);

struct ComponentGraph {
    struct Node {
        std::string region;
        FaceSet faces;
    };
    std::vector<Node> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
};

/// Requires the listed regions to form a partition (checked with
/// plane_check); throws Error(invalid_argument) otherwise.
ComponentGraph component_graph(const ArrangementPtr& arr, const std::vector<std::string>& vars);
bool is_tree(const ComponentGraph& g);

/// Faces become depth-0 points "f..", edges "e.." and vertices "v.." depth-1
/// points over their incident faces (ids zero-padded). Boundary elements of
/// a universe are left out.
QsModel induced_quasisaw(const ArrangementPtr& arr);

struct SvgOptions {
    double width = 400;
};

/// Deterministic SVG 1.1: one even-odd path per region in name order.
std::string to_svg(const PlaneScene& s, const SvgOptions& opt = {});

} // namespace topocon
