#pragma once

// Finite Aleksandrov semantics on quasi-saws: two-level frames whose
// depth-1 points each see a nonempty set of depth-0 points. Regular closed
// sets are stored by their depth-0 trace; every other point is derived.

#include "topocon/formula.hpp"

#include <boost/dynamic_bitset.hpp>

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace topocon {

using Bits = boost::dynamic_bitset<>;

class QuasiSaw {
public:
    struct Point1 {
        std::string id;
        std::vector<std::string> succ;
    };

    /// Validates and normalizes: ids become sorted, successor lists sorted.
    /// Throws Error(invalid_argument) on empty w0, duplicate or unknown ids,
    /// or an empty successor list.
    QuasiSaw(std::vector<std::string> w0, std::vector<Point1> w1);

    std::size_t size0() const { return w0_.size(); }
    std::size_t size1() const { return w1_.size(); }
    const std::vector<std::string>& w0() const { return w0_; }
    const std::vector<std::string>& w1() const { return w1_; }
    /// Successors of the i-th depth-1 point as a mask over w0.
    const Bits& succ(std::size_t i) const { return succ_[i]; }

    std::size_t index0(const std::string& id) const;
    bool has0(const std::string& id) const { return index0_.count(id) != 0; }

    friend bool operator==(const QuasiSaw& a, const QuasiSaw& b);

private:
    std::vector<std::string> w0_;
    std::vector<std::string> w1_;
    std::vector<Bits> succ_;
    std::map<std::string, std::size_t> index0_;
};

using FramePtr = std::shared_ptr<const QuasiSaw>;

/// Point set of a frame, split by depth.
struct Points {
    Bits depth0;
    Bits depth1;

    bool empty() const { return depth0.none() && depth1.none(); }
    std::size_t count() const { return depth0.count() + depth1.count(); }
    friend bool operator==(const Points&, const Points&) = default;
};

/// Ids of the points in p, depth-0 first, each group in frame order.
std::vector<std::string> point_ids(const QuasiSaw& frame, const Points& p);

class RcSet {
public:
    RcSet(FramePtr frame, Bits trace);

    const FramePtr& frame() const { return frame_; }
    const Bits& trace() const { return trace_; }
    bool empty() const { return trace_.none(); }

    friend bool operator==(const RcSet& a, const RcSet& b);

private:
    FramePtr frame_;
    Bits trace_;
};

RcSet rc_expand(const FramePtr& frame, const std::vector<std::string>& trace_ids);
RcSet rc_zero(const FramePtr& frame);
RcSet rc_one(const FramePtr& frame);
Points full_points(const RcSet& s);
/// The interior: trace plus depth-1 points whose successors all lie in it.
Points interior_points(const RcSet& s);

RcSet rc_sum(const RcSet& a, const RcSet& b);
RcSet rc_product(const RcSet& a, const RcSet& b);
RcSet rc_complement(const RcSet& a);

bool is_connected(const RcSet& s);
bool is_interior_connected(const RcSet& s);
bool contact(const RcSet& a, const RcSet& b);
/// Connected components of full_points(s), ordered by least depth-0 point.
std::vector<Points> components(const RcSet& s);

struct QsModel {
    FramePtr frame;
    std::map<std::string, RcSet> valuation;
};

/// Standard Boolean evaluation over the atom semantics.
/// Throws Error(unbound_variable) naming the first missing variable.
bool check(const QsModel& m, const Formula& f);
RcSet eval_term(const QsModel& m, const Term& t);

inline constexpr std::size_t default_oracle_cap = 14;

/// Direct topological evaluation: closures and interiors are computed from
/// the order relation, connectivity by enumerating closed 2-partitions.
/// Throws Error(cap_exceeded) when the frame has more than `cap` points.
bool oracle_check(const QsModel& m, const Formula& f, std::size_t cap = default_oracle_cap);

enum class FrameClass { all, con, con2 };

std::string_view to_string(FrameClass cls);
std::set<FrameClass> classify_frame(const QuasiSaw& frame);

// Model file format:
// {"w0":[...],"w1":[{"id":..,"succ":[..]}],"valuation":{"r":[depth-0 ids]}}
QsModel model_from_json(const std::string& text);
std::string model_to_json(const QsModel& m);

} // namespace topocon
