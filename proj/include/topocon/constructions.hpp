#pragma once

// Builders for the standard formula families: partitions and colourings,
// the K5-style separator, the interior-connected frame and stack
// templates, 3-region templates, the infinite-component formulas, the PCP
// encoding and the small running examples.
//
// Every builder returns a left-nested conjunction whose flattened literals
// follow the ranges of the defining display in order. Generated variable
// names are fixed:
//
//   r0..r3, s0..s3       the two sub-cyclic partitions
//   r0'..r3'             sub-regions of r0..r3
//   t, s                 single witnesses; s0..s3 and t0..t3 witness the
//                        four-way split in phi_inf_c
//   a, b, a_i_j, b_i_j   phi_inf_star regions (i in 0..1, j in 1..3)
//   e1, e2, wstar, w1    PCP morphism tracks, the common vertex, the start
//   p_k_h_l              PCP position colour: word k, tile number h
//                        (1-based, in tile order), position l (1-based)
//   x, x_mid, x_core     the three variables of 3-region x

#include "topocon/formula.hpp"
#include "topocon/plane.hpp"

#include <map>
#include <string>
#include <vector>

namespace topocon {

std::vector<Term> var_terms(const std::vector<std::string>& names);

/// Throw Error(invalid_argument) on structurally equal arguments.
Formula partition(const std::vector<Term>& rs);
Formula sc_part(const std::vector<Term>& rs);
/// An empty conjunction (0 = 0) when fewer than two colours are given.
Formula colour_comp(const Term& r, const std::vector<Term>& colours);

/// Requires exactly five distinct terms.
Formula k5m(const std::vector<Term>& rs);
/// Requires n >= 2.
Formula stack_i(const std::vector<Term>& rs);
/// Requires n >= 3.
Formula frame_i(const std::vector<Term>& rs);

struct ThreeRegion {
    std::string base;

    Term outer() const { return Term::var(base); }
    Term mid() const { return Term::var(base + "_mid"); }
    Term core() const { return Term::var(base + "_core"); }
    /// core != 0, core << mid, mid << outer, where a << b is !C(a, -b).
    Formula implicit() const;
};

/// Each 3-region's implicit conjuncts are appended once, in argument order.
Formula stack3(const std::vector<ThreeRegion>& rs);
Formula stack3_z(const Term& z, const std::vector<ThreeRegion>& rs);
/// Takes r_0..r_n with n >= 2.
Formula frame3(const std::vector<ThreeRegion>& rs);

Formula phi_inf();
Formula phi_inf_i();
Formula phi_inf_c();
Formula phi_inf_star();

Formula eq1vs2();
Formula eq2vs3();
Formula wiggly();

struct PcpInstance {
    std::vector<std::string> tiles;
    std::vector<std::string> letters;
    std::map<std::string, std::vector<std::string>> w1;
    std::map<std::string, std::vector<std::string>> w2;

    /// Throws Error(invalid_argument) on empty alphabets, duplicate, clashing
    /// or reserved names, missing or empty words, unknown letters.
    void validate() const;
    const std::vector<std::string>& word(int k, const std::string& tile) const;
};

/// {"tiles":[..],"letters":[..],"w1":{tile:word},"w2":{tile:word}} where a
/// word is an array of letter names, or a string that is split on spaces
/// if it has any and into single characters otherwise.
PcpInstance pcp_from_json(const std::string& text);
/// True when |T| < 7, below the size the hardness argument needs.
bool pcp_small(const PcpInstance& p);

struct Family {
    std::string name;
    /// Display-level conjuncts; compound ones (colourComp, partition) are
    /// kept whole.
    std::vector<Formula> items;
};

std::vector<Family> phi_pcp_families(const PcpInstance& p);
Formula phi_pcp(const PcpInstance& p);

/// Adds a1..a5 to the scene: the curve thickened into an annulus cut into
/// a3, a4, a5, and the two sides a1 (containing b1) and a2 (containing b2),
/// the outer side clipped to the universe box or to a box around the
/// scene. The curve must be a simple rectilinear ring that neither meets
/// b1 nor b2 and has one strictly inside, the other strictly outside.
/// Throws Error(geometry) when it does not, Error(invalid_argument) for
/// unknown regions or names a1..a5 already in use.
PlaneScene k5m_separator(const PlaneScene& s, const std::string& b1, const std::string& b2, const Ring& curve);

} // namespace topocon
