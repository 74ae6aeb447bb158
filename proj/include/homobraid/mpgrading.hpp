#pragma once

// Graded dimension tables for g[t,t^-1] at the barycenter x_m = rho^vee / m,
// and the moduli-space dimension formulas with their internal identities.
// All arithmetic exact.

#include <vector>

#include "homobraid/rootsys.hpp"

namespace hb {

// Reduced fraction with long long parts; enough headroom for these identities.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d);
    bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};

struct MPGrading {
    SlopeData slope;
    // x_m = rho^vee / m in coweight coordinates: all entries x_m_num / m
    std::vector<long long> x_m_num;
    long long x_m_den = 1;
    std::vector<int> graded_g_dims;  // index i in [0, m): dim g_{i/m}
    std::vector<int> graded_c_dims;  // index i in [0, m): dim c_{i/m}
};

struct ModuliDims {
    int dim_M = 0;
    int dim_A = 0;
    int dim_M_flat = 0;
    int dim_t_w = 0;
};

// Affine-root count of the grading; verifies every MPGrading invariant
// (sum g = dim g, sum c = r, g_i - c_i = |Phi|/m, c_0 = dim t^w) before
// returning. The index convention for c is fixed empirically against the
// |Phi|/m identity.
MPGrading build_grading(const SlopeData& sd);

// dim M = (d/m)|Phi| - r + dim t^w and dim A = sum_i floor(d(d_i-1)/m);
// checks dim M = 2 dim A and integrality before returning.
ModuliDims moduli_dims(const SlopeData& sd);

// (lhs, rhs) of sum_i {(d_i-1)/m} = (r - dim t^w)/2; caller asserts equality.
std::pair<Frac, Frac> fractional_identity_check(const SlopeData& sd);

}  // namespace hb
