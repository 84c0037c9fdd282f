#include "doctest.h"

#include "support/random_gen.hpp"
#include "support/random_scene.hpp"
#include "topocon/errors.hpp"
#include "topocon/plane.hpp"

#include <fstream>
#include <sstream>

using namespace topocon;
using namespace topocon::testing;

namespace {

PlaneScene scene(std::map<std::string, std::vector<Polygon>> regions) { return PlaneScene{std::move(regions), {}}; }

PlaneScene three_squares()
{
    return scene({{"r1", {rect(0, 0, 1, 1)}}, {"r2", {rect(1, 0, 2, 1)}}, {"r3", {rect(0, 1, 2, 2)}}});
}

const Formula eq1 = parse("ci(r1) & ci(r2) & ci(r3) & r1 != 0 & r2 != 0 & r3 != 0"
                          " & r1 . r2 = 0 & r1 . r3 = 0 & r2 . r3 = 0"
                          " & ci(r1 + r2) & ci(r1 + r3) & ci(r2 + r3)");

// Axis-parallel rectangles with at most one hole: cell (x, y) is inside when
// its centre is, judged by plain coordinate comparisons.
CellScene rasterize(const PlaneScene& s, int span)
{
    CellScene cs;
    cs.n = span;
    auto in_box = [](const Ring& r, double x, double y) {
        double x0 = std::min(r[0].x.get_d(), r[2].x.get_d());
        double x1 = std::max(r[0].x.get_d(), r[2].x.get_d());
        double y0 = std::min(r[0].y.get_d(), r[2].y.get_d());
        double y1 = std::max(r[0].y.get_d(), r[2].y.get_d());
        return x0 < x && x < x1 && y0 < y && y < y1;
    };
    for (const auto& [name, polys] : s.regions) {
        std::vector<bool> on(span * span);
        for (int y = 0; y < span; ++y) {
            for (int x = 0; x < span; ++x) {
                for (const auto& p : polys) {
                    bool in = in_box(p.outer, x + 0.5, y + 0.5);
                    for (const auto& h : p.holes) {
                        in = in && !in_box(h, x + 0.5, y + 0.5);
                    }
                    if (in) {
                        on[y * span + x] = true;
                    }
                }
            }
        }
        cs.cells[name] = on;
    }
    return cs;
}

} // namespace

TEST_CASE("arrangement counts")
{
    SUBCASE("two squares sharing an edge")
    {
        auto a = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {rect(1, 0, 2, 1)}}}));
        CHECK(a->bounded_face_count() == 2);
        CHECK(a->face_count() == 3);
        CHECK(a->edges().size() == 7);
        CHECK(a->vertices().size() == 6);
        CHECK(a->unbounded_face() != Arrangement::none);
    }
    SUBCASE("one square")
    {
        auto a = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}}));
        CHECK(a->bounded_face_count() == 1);
        CHECK(a->region("a").count() == 1);
    }
    SUBCASE("overlapping squares")
    {
        auto a = Arrangement::build(scene({{"a", {rect(0, 0, 2, 2)}}, {"b", {rect(1, 1, 3, 3)}}}));
        CHECK(a->bounded_face_count() == 3);
        FaceSet p = fs_product(fs_region(a, "a"), fs_region(a, "b"));
        REQUIRE(p.faces().count() == 1);
        const Point& s = a->sample(p.faces().find_first());
        CHECK(s.x > 1);
        CHECK(s.x < 2);
        CHECK(s.y > 1);
        CHECK(s.y < 2);
    }
    SUBCASE("crossing triangles make a star")
    {
        Polygon up{{{0, 0}, {6, 0}, {3, 6}}, {}};
        Polygon down{{{0, 4}, {3, -2}, {6, 4}}, {}};
        auto a = Arrangement::build(scene({{"a", {up}}, {"b", {down}}}));
        CHECK(a->bounded_face_count() == 7);
        CHECK(fs_product(fs_region(a, "a"), fs_region(a, "b")).faces().count() == 1);
        CHECK(fs_sum(fs_region(a, "a"), fs_region(a, "b")).faces().count() == 7);
    }
    SUBCASE("hole and island")
    {
        Polygon ring = rect(0, 0, 5, 5);
        ring.holes.push_back({{1, 1}, {1, 4}, {4, 4}, {4, 1}});
        auto a = Arrangement::build(scene({{"a", {ring}}, {"b", {rect(2, 2, 3, 3)}}}));
        CHECK(a->bounded_face_count() == 3);
        CHECK(a->region("a").count() == 1);
        CHECK(fs_interior_connected(fs_region(a, "a")));
        CHECK(!fs_contact(fs_region(a, "a"), fs_region(a, "b")));
        CHECK(rcc8(a, "b", "a") == Rcc8::DC);
        CHECK(!fs_connected(fs_sum(fs_region(a, "a"), fs_region(a, "b"))));
    }
    SUBCASE("fractional coordinates")
    {
        auto a = Arrangement::build(
            scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {rect(Rational(1, 3), Rational(1, 3), Rational(2, 3), 2)}}}));
        CHECK(a->bounded_face_count() == 3);
        CHECK(rcc8(a, "a", "b") == Rcc8::PO);
    }
}

TEST_CASE("degenerate rings are rejected with their position")
{
    auto fails = [](Ring r, const std::string& where) {
        try {
            Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}, {"bad", {Polygon{std::move(r), {}}}}}));
        } catch (const Error& e) {
            CHECK(e.code() == Errc::geometry);
            CHECK(std::string(e.what()).find(where) != std::string::npos);
            return;
        }
        FAIL("no error");
    };
    fails({{0, 0}, {1, 1}}, "region 'bad' polygon 0 ring 0");
    fails({{0, 0}, {1, 1}, {2, 2}}, "zero area");
    fails({{0, 0}, {4, 2}, {4, 0}, {0, 3}}, "self-intersecting");
    fails({{0, 0}, {2, 0}, {1, 0}, {1, 1}}, "self-intersecting");
    fails({{0, 0}, {0, 0}, {1, 0}, {1, 1}}, "repeated vertex");

    Polygon holed = rect(0, 0, 4, 4);
    holed.holes.push_back({{1, 1}, {2, 2}, {1, 2}, {2, 1}});
    try {
        Arrangement::build(scene({{"h", {holed}}}));
        FAIL("no error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("ring 1") != std::string::npos);
    }
}

TEST_CASE("Boolean operations and regularization")
{
    auto a = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {rect(1, 0, 2, 1)}}}));
    FaceSet x = fs_region(a, "a");
    FaceSet y = fs_region(a, "b");
    CHECK(fs_product(x, y).empty());
    CHECK(fs_contact(x, y));
    CHECK(fs_sum(x, fs_complement(x)) == fs_all(a));
    CHECK(fs_complement(fs_complement(x)) == x);
    CHECK(rcc8(a, "a", "b") == Rcc8::EC);

    auto other = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}}));
    CHECK_THROWS_AS(fs_sum(x, fs_region(other, "a")), Error);
}

TEST_CASE("connectivity predicates")
{
    auto corner = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1), rect(1, 1, 2, 2)}}, {"b", {rect(1, 0, 2, 1)}}}));
    CHECK(fs_connected(fs_region(corner, "a")));
    CHECK(!fs_interior_connected(fs_region(corner, "a")));
    CHECK(fs_components(fs_region(corner, "a")).size() == 1);

    auto edge = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1), rect(1, 0, 2, 1)}}}));
    CHECK(fs_connected(fs_region(edge, "a")));
    CHECK(fs_interior_connected(fs_region(edge, "a")));
    CHECK(fs_interior_connected(fs_empty(edge)));

    auto apart = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {rect(2, 2, 3, 3)}}}));
    CHECK(!fs_contact(fs_region(apart, "a"), fs_region(apart, "b")));
    auto parts = fs_components(fs_sum(fs_region(apart, "a"), fs_region(apart, "b")));
    CHECK(parts.size() == 2);

    // Four squares around a point: every corner face is in the set, so the
    // point is interior and links the diagonal pair.
    auto pin = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1), rect(1, 1, 2, 2)}},
                                         {"b", {rect(1, 0, 2, 1), rect(0, 1, 1, 2)}}}));
    CHECK(!fs_interior_connected(fs_region(pin, "a")));
    CHECK(fs_interior_connected(fs_sum(fs_region(pin, "a"), fs_region(pin, "b"))));
}

TEST_CASE("plane_check on the running examples")
{
    CHECK(plane_check(three_squares(), eq1));

    PlaneScene row;
    for (int i = 0; i < 5; ++i) {
        row.regions["r" + std::to_string(i + 1)].push_back(rect(i, 0, i + 1, 1));
    }
    std::vector<Formula> parts;
    for (int i = 1; i <= 5; ++i) {
        parts.push_back(int_conn(Term::var("r" + std::to_string(i))));
        for (int j = i + 1; j <= 5; ++j) {
            parts.push_back(int_conn(Term::var("r" + std::to_string(i)) + Term::var("r" + std::to_string(j))));
        }
    }
    CHECK(!plane_check(row, conj_of(parts)));
    CHECK(plane_check(three_squares(), parse("1 = r1 + -r1")));
    CHECK_THROWS_AS(plane_check(three_squares(), parse("c(q)")), Error);
}

TEST_CASE("RCC8")
{
    auto rel = [](Polygon a, Polygon b) { return rcc8(scene({{"a", {a}}, {"b", {b}}}), "a", "b"); };
    CHECK(rel(rect(0, 0, 1, 1), rect(2, 0, 3, 1)) == Rcc8::DC);
    CHECK(rel(rect(0, 0, 1, 1), rect(1, 0, 2, 1)) == Rcc8::EC);
    CHECK(rel(rect(0, 0, 2, 2), rect(1, 1, 3, 3)) == Rcc8::PO);
    CHECK(rel(rect(0, 0, 1, 1), rect(0, 0, 1, 1)) == Rcc8::EQ);
    CHECK(rel(rect(0, 0, 1, 1), rect(0, 0, 2, 2)) == Rcc8::TPP);
    CHECK(rel(rect(1, 1, 2, 2), rect(0, 0, 4, 4)) == Rcc8::NTPP);
    CHECK(rel(rect(0, 0, 2, 2), rect(0, 0, 1, 1)) == Rcc8::TPPi);
    CHECK(rel(rect(0, 0, 4, 4), rect(1, 1, 2, 2)) == Rcc8::NTPPi);
    CHECK_THROWS_AS(rcc8(scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {}}}), "a", "b"), Error);

    std::mt19937 rng(11);
    auto inverse = [](Rcc8 r) {
        switch (r) {
        case Rcc8::TPP: return Rcc8::TPPi;
        case Rcc8::NTPP: return Rcc8::NTPPi;
        case Rcc8::TPPi: return Rcc8::TPP;
        case Rcc8::NTPPi: return Rcc8::NTPP;
        default: return r;
        }
    };
    for (int i = 0; i < 200; ++i) {
        auto a = Arrangement::build(random_rect_scene(rng, {"a", "b"}, 5));
        Rcc8 ab = rcc8(a, "a", "b");
        CHECK(rcc8(a, "b", "a") == inverse(ab));
    }
}

TEST_CASE("cell scenes agree with the pixel evaluator")
{
    std::mt19937 rng(5);
    auto vars = var_names(3);
    for (int i = 0; i < 150; ++i) {
        CellScene cs = random_cell_scene(rng, vars, 3, 0.4);
        auto arr = Arrangement::build(cs.scene());
        PixelEval px(cs);
        for (int k = 0; k < 10; ++k) {
            Formula f = random_formula(rng, vars, 0);
            INFO(print(f));
            INFO(scene_to_json(cs.scene()));
            REQUIRE(plane_check(arr, f) == px.holds(f));
        }
    }
}

TEST_CASE("rectangle scenes agree with the pixel evaluator")
{
    std::mt19937 rng(6);
    auto vars = var_names(3);
    for (int i = 0; i < 150; ++i) {
        PlaneScene s = random_rect_scene(rng, vars, 6);
        auto arr = Arrangement::build(s);
        PixelEval px(rasterize(s, 6));
        for (int k = 0; k < 10; ++k) {
            Formula f = random_formula(rng, vars, 0);
            INFO(print(f));
            INFO(scene_to_json(s));
            REQUIRE(plane_check(arr, f) == px.holds(f));
        }
    }
}

TEST_CASE("Boolean laws on face sets")
{
    std::mt19937 rng(7);
    auto laws = boolean_laws();
    for (int i = 0; i < 100; ++i) {
        PlaneScene s = random_rect_scene(rng, {"a", "b", "c"}, 5);
        auto arr = Arrangement::build(s);
        for (const auto& law : laws) {
            CHECK(plane_check(arr, law));
        }
    }
}

TEST_CASE("induced quasi-saw")
{
    auto a = Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}, {"b", {rect(1, 0, 2, 1)}}}));
    QsModel m = induced_quasisaw(a);
    CHECK(m.frame->size0() == 3);
    CHECK(m.frame->w0() == std::vector<std::string>{"f0", "f1", "f2"});

    auto star = induced_quasisaw(Arrangement::build(scene({{"a", {rect(0, 0, 1, 1)}}})));
    CHECK(star.frame->size0() == 2);
    for (std::size_t z = 0; z < star.frame->size1(); ++z) {
        CHECK(star.frame->succ(z).count() == 2);
    }

    CHECK(check(induced_quasisaw(Arrangement::build(three_squares())), eq1));

    std::mt19937 rng(8);
    auto vars = var_names(3);
    for (int i = 0; i < 100; ++i) {
        PlaneScene s = random_rect_scene(rng, vars, 5);
        auto arr = Arrangement::build(s);
        QsModel im = induced_quasisaw(arr);
        for (int k = 0; k < 10; ++k) {
            Formula f = random_formula(rng, vars, 0);
            REQUIRE(plane_check(arr, f) == check(im, f));
        }
    }
}

TEST_CASE("universe box")
{
    PlaneScene s;
    s.regions["l"] = {rect(0, 0, 1, 1)};
    s.regions["r"] = {rect(1, 0, 2, 1)};
    s.universe = Box{{0, 0}, {2, 1}};
    auto a = Arrangement::build(s);
    CHECK(a->face_count() == 2);
    CHECK(a->unbounded_face() == Arrangement::none);
    CHECK(plane_check(a, parse("l + r = 1 & l . r = 0 & -l = r & C(l, r) & ci(l + r)")));
    // The box boundary lies at infinity: each half is a half-plane.
    CHECK(rcc8(a, "l", "r") == Rcc8::EC);
    CHECK(std::count_if(a->edges().begin(), a->edges().end(), [](const auto& e) { return e.in_space; }) == 1);
}

TEST_CASE("component graphs")
{
    PlaneScene strips;
    strips.universe = Box{{0, 0}, {4, 1}};
    for (int i = 0; i < 4; ++i) {
        strips.regions["s" + std::to_string(i)] = {rect(i, 0, i + 1, 1)};
    }
    auto g = component_graph(Arrangement::build(strips), {"s0", "s1", "s2", "s3"});
    CHECK(g.nodes.size() == 4);
    CHECK(g.edges.size() == 3);
    CHECK(is_tree(g));

    PlaneScene whole;
    whole.universe = Box{{0, 0}, {1, 1}};
    whole.regions["a"] = {rect(0, 0, 1, 1)};
    auto single = component_graph(Arrangement::build(whole), {"a"});
    CHECK(single.nodes.size() == 1);
    CHECK(is_tree(single));

    // Two strips of one colour around a strip of the other: a path of three.
    PlaneScene sandwich;
    sandwich.universe = Box{{0, 0}, {3, 1}};
    sandwich.regions["a"] = {rect(0, 0, 1, 1), rect(2, 0, 3, 1)};
    sandwich.regions["b"] = {rect(1, 0, 2, 1)};
    auto path = component_graph(Arrangement::build(sandwich), {"a", "b"});
    CHECK(path.nodes.size() == 3);
    CHECK(is_tree(path));

    // Three sectors around a point: a triangle, not a tree.
    PlaneScene sectors;
    sectors.universe = Box{{0, 0}, {2, 2}};
    sectors.regions["a"] = {rect(0, 0, 1, 2)};
    sectors.regions["b"] = {rect(1, 0, 2, 1)};
    sectors.regions["c"] = {rect(1, 1, 2, 2)};
    CHECK(!is_tree(component_graph(Arrangement::build(sectors), {"a", "b", "c"})));

    CHECK_THROWS_AS(component_graph(Arrangement::build(three_squares()), {"r1", "r2"}), Error);

    std::mt19937 rng(9);
    for (int i = 0; i < 20; ++i) {
        auto s = onion_partition(rng, 2);
        CHECK(is_tree(component_graph(Arrangement::build(s), partition_vars(2))));
    }
}

TEST_CASE("scene files")
{
    std::string text = R"({"regions":{"b":[{"outer":[[0,0],["3/2",0],["3/2","6/4"],[0,1]]}],)"
                       R"("a":[{"outer":[["0","0"],["2","0"],["2","2"],["0","2"]],)"
                       R"("holes":[[["1/2","1/2"],["1/2","1"],["1","1"],["1","1/2"]]]}]}})";
    PlaneScene s = scene_from_json(text);
    CHECK(s.regions.at("b")[0].outer[2].y == Rational(3, 2));
    CHECK(s.regions.at("a")[0].holes.size() == 1);
    CHECK(scene_to_json(scene_from_json(scene_to_json(s))) == scene_to_json(s));
    CHECK_THROWS_AS(scene_from_json(R"({"regions":{"a":[{"outer":[["1/0",0]]}]}})"), Error);
    CHECK_THROWS_AS(scene_from_json(R"({"regions":{"a":[{"outer":[[0.5,0]]}]}})"), Error);
    CHECK_THROWS_AS(scene_from_json("{"), Error);
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(to_string(parse_rational("10/4")) == "5/2");
    CHECK_THROWS_AS(parse_rational("1.5"), Error);
}

TEST_CASE("SVG rendering")
{
    std::string svg = to_svg(three_squares());
    std::size_t paths = 0;
    for (std::size_t p = svg.find("<path"); p != std::string::npos; p = svg.find("<path", p + 1)) {
        ++paths;
    }
    CHECK(paths == 3);
    CHECK(svg == to_svg(three_squares()));
    CHECK(svg.find("viewBox=\"-0.1 -2.1 2.2 2.2\"") != std::string::npos);

    std::string empty = to_svg(PlaneScene{});
    CHECK(empty.find("<svg") != std::string::npos);
    CHECK(empty.find("</svg>") != std::string::npos);
    CHECK(empty.find("<path") == std::string::npos);

    std::ifstream golden(std::string(TOPOCON_TEST_DATA) + "/../golden/three_squares.svg");
    std::stringstream ss;
    ss << golden.rdbuf();
    CHECK(svg == ss.str());
}
