#pragma once

// Random rectilinear scenes and an independent pixel evaluator.
//
// A cell scene colours the unit cells of an n x n grid. Closed unit cells
// meet exactly when they are 8-neighbours, and the interior of a union of
// cells is linked through shared sides and through corners whose four cells
// are all present, so formulas can be evaluated on the cell grid directly.
// A one-cell frame around the grid stands for the unbounded outside.

#include "topocon/formula.hpp"
#include "topocon/plane.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace topocon::testing {

struct CellScene {
    int n = 0;
    std::map<std::string, std::vector<bool>> cells; // row-major, n * n

    PlaneScene scene() const
    {
        PlaneScene s;
        for (const auto& [name, on] : cells) {
            auto& polys = s.regions[name];
            for (int y = 0; y < n; ++y) {
                for (int x = 0; x < n; ++x) {
                    if (on[y * n + x]) {
                        polys.push_back(rect(x, y, x + 1, y + 1));
                    }
                }
            }
        }
        return s;
    }
};

inline CellScene random_cell_scene(std::mt19937& rng, const std::vector<std::string>& vars, int n, double density)
{
    std::bernoulli_distribution coin(density);
    CellScene cs;
    cs.n = n;
    for (const auto& v : vars) {
        std::vector<bool> on(n * n);
        for (auto&& c : on) {
            c = coin(rng);
        }
        cs.cells[v] = on;
    }
    return cs;
}

class PixelEval {
public:
    explicit PixelEval(const CellScene& cs) : m_(cs.n + 2)
    {
        for (const auto& [name, on] : cs.cells) {
            std::vector<bool> pad(m_ * m_);
            for (int y = 0; y < cs.n; ++y) {
                for (int x = 0; x < cs.n; ++x) {
                    pad[(y + 1) * m_ + x + 1] = on[y * cs.n + x];
                }
            }
            regions_[name] = pad;
        }
    }

    std::vector<bool> term(const Term& t) const
    {
        std::size_t size = static_cast<std::size_t>(m_ * m_);
        switch (t.kind()) {
        case Term::Kind::variable: return regions_.at(t.name());
        case Term::Kind::zero: return std::vector<bool>(size, false);
        case Term::Kind::one: return std::vector<bool>(size, true);
        case Term::Kind::complement: {
            auto a = term(t.lhs());
            a.flip();
            return a;
        }
        default: {
            auto a = term(t.lhs());
            auto b = term(t.rhs());
            for (std::size_t i = 0; i < size; ++i) {
                a[i] = t.kind() == Term::Kind::sum ? (a[i] || b[i]) : (a[i] && b[i]);
            }
            return a;
        }
        }
    }

    bool holds(const Formula& f) const
    {
        switch (f.kind()) {
        case Formula::Kind::eq: return term(f.term_lhs()) == term(f.term_rhs());
        case Formula::Kind::contact: return touch(term(f.term_lhs()), term(f.term_rhs()));
        case Formula::Kind::conn: return linked(term(f.term_lhs()), false);
        case Formula::Kind::int_conn: return linked(term(f.term_lhs()), true);
        case Formula::Kind::neg: return !holds(f.lhs());
        case Formula::Kind::conj: return holds(f.lhs()) && holds(f.rhs());
        case Formula::Kind::disj: return holds(f.lhs()) || holds(f.rhs());
        }
        return false;
    }

private:
    bool at(const std::vector<bool>& s, int x, int y) const
    {
        return x >= 0 && y >= 0 && x < m_ && y < m_ && s[y * m_ + x];
    }

    bool touch(const std::vector<bool>& a, const std::vector<bool>& b) const
    {
        for (int y = 0; y < m_; ++y) {
            for (int x = 0; x < m_; ++x) {
                if (!a[y * m_ + x]) {
                    continue;
                }
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (at(b, x + dx, y + dy)) {
                            return true;
                        }
                    }
                }
            }
        }
        return false;
    }

    bool linked(const std::vector<bool>& s, bool interior) const
    {
        std::vector<int> seen(s.size(), 0);
        int start = -1;
        int total = 0;
        for (int i = 0; i < m_ * m_; ++i) {
            if (s[i]) {
                ++total;
                if (start < 0) {
                    start = i;
                }
            }
        }
        if (start < 0) {
            return true;
        }
        std::vector<int> stack{start};
        seen[start] = 1;
        int reached = 0;
        while (!stack.empty()) {
            int c = stack.back();
            stack.pop_back();
            ++reached;
            int x = c % m_;
            int y = c / m_;
            for (int dy = -1; dy <= 1; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if ((dx == 0 && dy == 0) || !at(s, x + dx, y + dy)) {
                        continue;
                    }
                    // A diagonal step passes through a corner; for interiors
                    // the other two cells at that corner must be present too.
                    if (interior && dx != 0 && dy != 0 && !(at(s, x + dx, y) && at(s, x, y + dy))) {
                        continue;
                    }
                    int d = (y + dy) * m_ + x + dx;
                    if (!seen[d]) {
                        seen[d] = 1;
                        stack.push_back(d);
                    }
                }
            }
        }
        return reached == total;
    }

    int m_;
    std::map<std::string, std::vector<bool>> regions_;
};

/// Regions made of one or two random integer rectangles, some with a hole.
/// Rectangles of one region may overlap; membership is their union. All
/// coordinates lie in [0, span].
inline PlaneScene random_rect_scene(std::mt19937& rng, const std::vector<std::string>& vars, int span)
{
    std::uniform_int_distribution<int> coord(0, span);
    PlaneScene s;
    for (const auto& v : vars) {
        int count = 1 + static_cast<int>(rng() % 2);
        for (int k = 0; k < count; ++k) {
            int x0 = coord(rng), x1 = coord(rng), y0 = coord(rng), y1 = coord(rng);
            if (x0 == x1) {
                x0 == span ? --x0 : ++x1;
            }
            if (y0 == y1) {
                y0 == span ? --y0 : ++y1;
            }
            if (x0 > x1) {
                std::swap(x0, x1);
            }
            if (y0 > y1) {
                std::swap(y0, y1);
            }
            Polygon p = rect(x0, y0, x1, y1);
            if (x1 - x0 >= 3 && y1 - y0 >= 3 && rng() % 2 == 0) {
                Ring hole = rect(x0 + 1, y0 + 1, x1 - 1, y1 - 1).outer;
                std::reverse(hole.begin(), hole.end());
                p.holes.push_back(hole);
            }
            s.regions[v].push_back(p);
        }
    }
    return s;
}

/// Walk on the k-cycle visiting every colour; consecutive steps differ by
/// one modulo k.
inline std::vector<int> cycle_walk(std::mt19937& rng, int k, int min_len)
{
    std::vector<int> walk{static_cast<int>(rng() % k)};
    std::vector<bool> seen(k);
    seen[walk[0]] = true;
    int distinct = 1;
    while (distinct < k || static_cast<int>(walk.size()) < min_len) {
        int step = (k == 2 || rng() % 3 != 0) ? 1 : k - 1;
        int next = (walk.back() + step) % k;
        walk.push_back(next);
        if (!seen[next]) {
            seen[next] = true;
            ++distinct;
        }
    }
    return walk;
}

inline std::vector<std::string> partition_vars(int k)
{
    std::vector<std::string> out;
    for (int i = 0; i < k; ++i) {
        out.push_back("r" + std::to_string(i));
    }
    return out;
}

/// Vertical strips filling a universe box, coloured along a cycle walk.
inline PlaneScene strip_partition(std::mt19937& rng, int k)
{
    auto walk = cycle_walk(rng, k, k + static_cast<int>(rng() % 4));
    PlaneScene s;
    for (const auto& v : partition_vars(k)) {
        s.regions[v];
    }
    int x = 0;
    for (int colour : walk) {
        int w = 1 + static_cast<int>(rng() % 3);
        s.regions["r" + std::to_string(colour)].push_back(rect(x, 0, x + w, 4));
        x += w;
    }
    s.universe = Box{{0, 0}, {x, 4}};
    return s;
}

/// Nested rectangles: each layer is an annulus around up to two disjoint
/// children, and a child's colour is its parent's plus or minus one. A spine
/// of first children steps by +1 so that every colour is used.
inline PlaneScene onion_partition(std::mt19937& rng, int k)
{
    PlaneScene s;
    for (const auto& v : partition_vars(k)) {
        s.regions[v];
    }
    struct Job {
        int x0, y0, x1, y1, colour, depth;
        bool spine;
    };
    std::vector<Job> jobs{{0, 0, 64, 64, static_cast<int>(rng() % k), 0, true}};
    s.universe = Box{{0, 0}, {64, 64}};
    while (!jobs.empty()) {
        Job j = jobs.back();
        jobs.pop_back();
        std::vector<Job> kids;
        int w = j.x1 - j.x0;
        int h = j.y1 - j.y0;
        int want = (j.depth < 5 && w >= 6 && h >= 6) ? static_cast<int>(rng() % 3) : 0;
        bool extend = j.spine && j.depth + 1 < k;
        if ((j.depth < 2 || extend) && want == 0 && w >= 6 && h >= 6) {
            want = 1;
        }
        auto child_colour = [&](bool first) {
            int step = (k == 2 || (first && extend) || rng() % 2 == 0) ? 1 : k - 1;
            return (j.colour + step) % k;
        };
        if (want == 1) {
            kids.push_back({j.x0 + 2, j.y0 + 2, j.x1 - 2, j.y1 - 2, child_colour(true), j.depth + 1, extend});
        } else if (want == 2) {
            int mid = j.x0 + (extend ? 3 * w / 4 : w / 2);
            kids.push_back({j.x0 + 2, j.y0 + 2, mid - 1, j.y1 - 2, child_colour(true), j.depth + 1, extend});
            kids.push_back({mid + 1, j.y0 + 2, j.x1 - 2, j.y1 - 2, child_colour(false), j.depth + 1, false});
        }
        Polygon p = rect(j.x0, j.y0, j.x1, j.y1);
        for (const auto& c : kids) {
            if (c.x1 - c.x0 < 1 || c.y1 - c.y0 < 1) {
                continue;
            }
            Ring hole = rect(c.x0, c.y0, c.x1, c.y1).outer;
            std::reverse(hole.begin(), hole.end());
            p.holes.push_back(hole);
            jobs.push_back(c);
        }
        s.regions["r" + std::to_string(j.colour)].push_back(p);
    }
    return s;
}

struct SeparatorCase {
    PlaneScene scene;
    Ring curve;
};

/// b1 and b2 are rectangles with a rectilinear curve around one of them: the
/// boundary of a column histogram whose columns all cover the enclosed
/// rectangle's rows with a margin. Some cases carry a universe box or an
/// unrelated extra region.
inline SeparatorCase random_separator_case(std::mt19937& rng)
{
    auto roll = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    int x0 = roll(0, 4), y0 = roll(0, 4);
    int x1 = x0 + roll(1, 4), y1 = y0 + roll(1, 4);
    int left = x0 - roll(1, 3);
    int right = x1 + roll(1, 3);
    std::vector<int> breaks{left};
    for (int x = left + 1; x < right; ++x) {
        if (rng() % 3 == 0) {
            breaks.push_back(x);
        }
    }
    breaks.push_back(right);
    std::size_t cols = breaks.size() - 1;
    std::vector<int> lo(cols), hi(cols);
    for (std::size_t c = 0; c < cols; ++c) {
        lo[c] = y0 - roll(1, 3);
        hi[c] = y1 + roll(1, 3);
    }
    Ring curve;
    auto push = [&](int x, int y) {
        Point p{x, y};
        if (curve.empty() || !(curve.back() == p)) {
            curve.push_back(p);
        }
    };
    for (std::size_t c = 0; c < cols; ++c) {
        push(breaks[c], lo[c]);
        push(breaks[c + 1], lo[c]);
    }
    for (std::size_t c = cols; c-- > 0;) {
        push(breaks[c + 1], hi[c]);
        push(breaks[c], hi[c]);
    }
    if (curve.front() == curve.back()) {
        curve.pop_back();
    }
    int top = *std::max_element(hi.begin(), hi.end());
    int bx = right + roll(1, 3);
    int by = roll(y0 - 4, top);
    Polygon inner = rect(x0, y0, x1, y1);
    Polygon outer = rect(bx, by, bx + roll(1, 3), by + roll(1, 3));
    SeparatorCase out;
    bool swap = rng() % 2 == 0;
    out.scene.regions["b1"] = {swap ? outer : inner};
    out.scene.regions["b2"] = {swap ? inner : outer};
    if (rng() % 3 == 0) {
        out.scene.regions["q"] = {rect(x0, y0, bx + 1, y0 + 1)};
    }
    if (rng() % 3 == 0) {
        out.scene.universe = Box{{-20, -20}, {40, 40}};
    }
    out.curve = curve;
    return out;
}

} // namespace topocon::testing
