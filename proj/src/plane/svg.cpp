#include "topocon/plane.hpp"

#include <array>
#include <cstdio>
#include <sstream>

namespace topocon {

namespace {

constexpr std::array<const char*, 8> palette{"#4e79a7", "#f28e2b", "#e15759", "#76b7b2",
                                             "#59a14f", "#edc948", "#b07aa1", "#9c755f"};

std::string num(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    std::string s = buf;
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') {
        s.pop_back();
    }
    return s == "-0" ? "0" : s;
}

} // namespace

std::string to_svg(const PlaneScene& s, const SvgOptions& opt)
{
    bool any = false;
    double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
    auto grow = [&](const Point& p) {
        double x = p.x.get_d();
        double y = -p.y.get_d();
        if (!any) {
            x0 = x1 = x;
            y0 = y1 = y;
            any = true;
        }
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
    };
    for (const auto& [name, polys] : s.regions) {
        for (const auto& p : polys) {
            for (const auto& q : p.outer) {
                grow(q);
            }
        }
    }
    if (s.universe) {
        grow(s.universe->lo);
        grow(s.universe->hi);
    }
    double w = x1 - x0 > 0 ? x1 - x0 : 1;
    double h = y1 - y0 > 0 ? y1 - y0 : 1;
    double px = w * 0.05;
    double py = h * 0.05;
    double vw = w + 2 * px;
    double vh = h + 2 * py;

    std::string stroke = num(std::max(vw, vh) / 200);

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(opt.width) << "\" height=\""
        << num(opt.width * vh / vw) << "\" viewBox=\"" << num(x0 - px) << ' ' << num(y0 - py) << ' ' << num(vw) << ' '
        << num(vh) << "\">\n";
    if (s.universe) {
        const Box& u = *s.universe;
        out << "  <rect x=\"" << num(u.lo.x.get_d()) << "\" y=\"" << num(-u.hi.y.get_d()) << "\" width=\""
            << num(Rational(u.hi.x - u.lo.x).get_d()) << "\" height=\"" << num(Rational(u.hi.y - u.lo.y).get_d())
            << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << stroke << "\"/>\n";
    }
    std::size_t colour = 0;
    for (const auto& [name, polys] : s.regions) {
        std::string d;
        auto ring = [&](const Ring& r) {
            for (std::size_t i = 0; i < r.size(); ++i) {
                d += (i == 0 ? "M" : " L") + num(r[i].x.get_d()) + " " + num(-r[i].y.get_d());
            }
            d += " Z ";
        };
        for (const auto& p : polys) {
            ring(p.outer);
            for (const auto& hole : p.holes) {
                ring(hole);
            }
        }
        if (!d.empty()) {
            d.pop_back();
        }
        out << "  <path id=\"" << name << "\" d=\"" << d << "\" fill=\"" << palette[colour % palette.size()]
            << "\" fill-opacity=\"0.5\" fill-rule=\"evenodd\" stroke=\"#000000\" stroke-width=\"" << stroke
            << "\"><title>" << name << "</title></path>\n";
        ++colour;
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace topocon
