#pragma once

// Positive braid monoid over a Weyl group with left-greedy Garside normal
// form, plus the construction of the positive braid attached to a slope:
// rotate the eigenvector's real projection once around the circle and record
// one simple-reflection letter per wall crossing.

#include <cstdint>
#include <vector>

#include "homobraid/rootsys.hpp"

namespace hb {

struct BraidWord {
    RootSystemPtr root_system;
    std::vector<int> letters;  // 0-based simple reflection indices

    int length() const { return static_cast<int>(letters.size()); }
};

struct GarsideNF {
    int delta_power = 0;                       // leading w_0 factors
    std::vector<WeylElement> canonical_factors;  // left-greedy, none = identity or w_0

    bool operator==(const GarsideNF& o) const {
        return delta_power == o.delta_power && canonical_factors == o.canonical_factors;
    }
};

// Left-greedy normal form; two words have equal normal forms iff they are
// positive-braid equivalent.
GarsideNF normal_form(const BraidWord& b);

// Recompose a normal form into a flat word (for round-trip checks).
BraidWord recompose(RootSystemPtr rs, const GarsideNF& nf);

// Canonical lift of w: a reduced word.
BraidWord lift(RootSystemPtr rs, const WeylElement& w);

BraidWord concat(const BraidWord& a, const BraidWord& b);
BraidWord power(const BraidWord& a, int k);

// The braid of a slope: walks chambers of Re(e^{-i d theta / m} eigvec) over
// one full turn starting at theta0. Crossing angles must be simple; a
// collision throws nongeneric_data (caller re-randomizes the eigenvector).
BraidWord slope_braid_once(const SlopeData& sd, double theta0);

// slope_braid with automatic re-randomization (deterministic retry sequence
// derived from sd.seed).
BraidWord slope_braid(const SlopeData& sd, double theta0 = 0.1234567891);

// True iff some rotation of b1 is positive-braid equivalent to b2.
bool cyclic_shift_class_equal(const BraidWord& b1, const BraidWord& b2);

// Image of the word in W.
WeylElement braid_image(const BraidWord& b);

}  // namespace hb
