#include "topocon/errors.hpp"
#include "topocon/plane.hpp"

#include "json.hpp"

#include <cctype>

namespace topocon {

using nlohmann::json;

Rational parse_rational(const std::string& text)
{
    auto digits = [](const std::string& s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
    };
    std::string body = text;
    std::string sign;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
        sign = body[0] == '-' ? "-" : "";
        body = body.substr(1);
    }
    auto slash = body.find('/');
    std::string num = body.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : body.substr(slash + 1);
    if (!digits(num) || !digits(den)) {
        throw Error(Errc::io, "'" + text + "' is not a rational number");
    }
    mpz_class d(den, 10);
    if (d == 0) {
        throw Error(Errc::io, "'" + text + "' has a zero denominator");
    }
    Rational q(mpz_class(sign + num, 10), d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Polygon rect(const Rational& x0, const Rational& y0, const Rational& x1, const Rational& y1)
{
    return Polygon{{{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}, {}};
}

namespace {

Rational coordinate(const json& j, const std::string& where)
{
    if (j.is_number_integer()) {
        return Rational(mpz_class(j.dump(), 10));
    }
    if (j.is_string()) {
        return parse_rational(j.get<std::string>());
    }
    throw Error(Errc::io, where + ": coordinates must be integers or \"p/q\" strings");
}

Point point(const json& j, const std::string& where)
{
    if (!j.is_array() || j.size() != 2) {
        throw Error(Errc::io, where + ": a point is a pair [x, y]");
    }
    return {coordinate(j[0], where), coordinate(j[1], where)};
}

Ring ring(const json& j, const std::string& where)
{
    if (!j.is_array()) {
        throw Error(Errc::io, where + ": a ring is an array of points");
    }
    Ring r;
    for (const auto& p : j) {
        r.push_back(point(p, where));
    }
    return r;
}

json point_json(const Point& p) { return json::array({to_string(p.x), to_string(p.y)}); }

json ring_json(const Ring& r)
{
    json out = json::array();
    for (const auto& p : r) {
        out.push_back(point_json(p));
    }
    return out;
}

} // namespace

PlaneScene scene_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::io, std::string("scene: ") + e.what());
    }
    if (!j.is_object() || !j.contains("regions") || !j["regions"].is_object()) {
        throw Error(Errc::io, "scene: missing \"regions\" object");
    }
    PlaneScene s;
    for (const auto& [name, polys] : j["regions"].items()) {
        if (!is_identifier(name)) {
            throw Error(Errc::io, "scene: '" + name + "' is not a variable name");
        }
        if (!polys.is_array()) {
            throw Error(Errc::io, "scene: region '" + name + "' must be an array of polygons");
        }
        auto& out = s.regions[name];
        for (std::size_t p = 0; p < polys.size(); ++p) {
            std::string where = "scene: region '" + name + "' polygon " + std::to_string(p);
            const json& pj = polys[p];
            if (!pj.is_object() || !pj.contains("outer")) {
                throw Error(Errc::io, where + ": missing \"outer\"");
            }
            Polygon poly{ring(pj["outer"], where), {}};
            if (pj.contains("holes")) {
                if (!pj["holes"].is_array()) {
                    throw Error(Errc::io, where + ": \"holes\" must be an array of rings");
                }
                for (const auto& h : pj["holes"]) {
                    poly.holes.push_back(ring(h, where));
                }
            }
            out.push_back(std::move(poly));
        }
    }
    if (j.contains("universe")) {
        const json& u = j["universe"];
        if (!u.is_array() || u.size() != 2) {
            throw Error(Errc::io, "scene: \"universe\" is [[x0, y0], [x1, y1]]");
        }
        s.universe = Box{point(u[0], "scene: universe"), point(u[1], "scene: universe")};
    }
    return s;
}

std::string scene_to_json(const PlaneScene& s)
{
    nlohmann::ordered_json j;
    j["regions"] = nlohmann::ordered_json::object();
    for (const auto& [name, polys] : s.regions) {
        json list = json::array();
        for (const auto& p : polys) {
            json holes = json::array();
            for (const auto& h : p.holes) {
                holes.push_back(ring_json(h));
            }
            list.push_back({{"outer", ring_json(p.outer)}, {"holes", holes}});
        }
        j["regions"][name] = list;
    }
    if (s.universe) {
        j["universe"] = json::array({point_json(s.universe->lo), point_json(s.universe->hi)});
    }
    return j.dump();
}

} // namespace topocon
