#pragma once

// Iterative graded gauge normalization over truncated loop matrices in type A,
// exact rational arithmetic throughout. The grading follows the barycenter
// pairing: the monomial t^k in entry (i, j) (0-based) sits in grade
// (j - i + k n)/n; the companion element psi = C^d is homogeneous of grade d/n.

#include <cstdint>
#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "homobraid/errors.hpp"

namespace hb {

using Rat = mpq_class;

struct QLaurent {
    std::map<int, Rat> c;  // t-exponent -> nonzero coefficient

    bool is_zero() const { return c.empty(); }
    Rat coeff(int e) const {
        auto it = c.find(e);
        return it == c.end() ? Rat(0) : it->second;
    }
    void add_to(int e, const Rat& v);
};

std::string qlaurent_str(const QLaurent& a);

// n x n matrix of Laurent polynomials, truncated to grade-numerator window
// [grade_lo, grade_hi] (in units of 1/n).
struct TruncatedLoopMatrix {
    int n = 0;
    int d = 1;  // slope numerator, for bookkeeping
    int grade_lo = 0, grade_hi = 0;
    std::vector<QLaurent> a;

    TruncatedLoopMatrix() = default;
    TruncatedLoopMatrix(int n_, int d_, int lo, int hi)
        : n(n_), d(d_), grade_lo(lo), grade_hi(hi), a(static_cast<size_t>(n_) * n_) {}

    QLaurent& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const QLaurent& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    int grade_of(int i, int j, int k) const { return (j - i) + k * n; }
    bool in_window(int g) const { return g >= grade_lo && g <= grade_hi; }
    void truncate();  // drop monomials outside the grade window
    bool is_zero() const;
    bool equals(const TruncatedLoopMatrix& o) const;
};

TruncatedLoopMatrix tlm_zero_like(const TruncatedLoopMatrix& m);
TruncatedLoopMatrix tlm_identity(int n, int d, int lo, int hi);
TruncatedLoopMatrix tlm_add(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b);
TruncatedLoopMatrix tlm_sub(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b);
TruncatedLoopMatrix tlm_mul(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b);
TruncatedLoopMatrix tlm_scale(const TruncatedLoopMatrix& a, const Rat& s);
TruncatedLoopMatrix tlm_bracket(const TruncatedLoopMatrix& a, const TruncatedLoopMatrix& b);
QLaurent tlm_trace(const TruncatedLoopMatrix& a);

// companion element psi = C^d with the given grade window
TruncatedLoopMatrix companion_psi(int n, int d, int grade_lo, int grade_hi);

// projection to the single grade g (numerator, units of 1/n); summing over all
// grades in the window returns the matrix
TruncatedLoopMatrix graded_component(const TruncatedLoopMatrix& m, int grade_num);
// list of grades with nonzero component
std::vector<int> support_grades(const TruncatedLoopMatrix& m);

// exp(Y) for Y of strictly negative grade; the series terminates inside the window
TruncatedLoopMatrix tlm_exp(const TruncatedLoopMatrix& y);

// char-poly coefficients e_1..e_n by Newton's identities (exact)
std::vector<QLaurent> char_poly_coeffs(const TruncatedLoopMatrix& m);

// Solve [Y, psi] = X with X homogeneous of grade x_grade; returns the
// minimal-coefficient-norm solution, homogeneous of grade x_grade - d.
// Throws invalid_input naming the failing invariant when X is not orthogonal
// to the centralizer (i.e. X not in [g, psi]).
TruncatedLoopMatrix solve_bracket(const TruncatedLoopMatrix& psi,
                                  const TruncatedLoopMatrix& x, int x_grade);

struct ProUnipotentElement {
    // exp factors in application order, grades strictly decreasing
    std::vector<std::pair<int, TruncatedLoopMatrix>> factors;  // (grade of Y, Y)
    TruncatedLoopMatrix product;  // evaluated product of the exp factors
};

// Find g with Ad(g) psi = psi' on all grades >= -depth (in units of 1/n).
// Pre: psi' in psi + (grades <= 0). Throws internal_invariant_error naming
// the invariant f_i and the grade when the characteristic polynomials differ.
ProUnipotentElement gauge_to(const TruncatedLoopMatrix& psi,
                             const TruncatedLoopMatrix& psi_prime, int depth);

TruncatedLoopMatrix ad_action(const TruncatedLoopMatrix& g, const TruncatedLoopMatrix& x);

// centralizer basis element psi^k t^l of grade k d + l n = g, if one exists
// with 0 <= k < n
std::optional<TruncatedLoopMatrix> centralizer_element(int n, int d, int grade_num,
                                                       int grade_lo, int grade_hi);

// random element of the depth-(1/n) pro-unipotent group (product of exp of
// random homogeneous pieces of grades -1 .. -levels)
TruncatedLoopMatrix random_pro_unipotent(int n, int d, int grade_lo, int grade_hi,
                                         int levels, std::uint64_t seed);

}  // namespace hb
