#pragma once

// Small finite fields GF(p^k) with table arithmetic, dense matrices over
// them and univariate/Laurent polynomials. Element values are indices in
// [0, q); for extension fields the index encodes the polynomial basis in
// base p. Everything here is sized for brute-force work at q <= 32.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "homobraid/errors.hpp"

namespace hb {

class GF {
  public:
    explicit GF(int q);

    int q() const { return q_; }
    int p() const { return p_; }
    int degree() const { return k_; }

    int add(int a, int b) const { return add_[idx(a, b)]; }
    int sub(int a, int b) const { return add_[idx(a, neg_[b])]; }
    int mul(int a, int b) const { return mul_[idx(a, b)]; }
    int neg(int a) const { return neg_[a]; }
    int inv(int a) const;
    int pow(int a, long long e) const;

  private:
    int q_, p_, k_;
    std::vector<int> add_, mul_, neg_, inv_;

    size_t idx(int a, int b) const { return static_cast<size_t>(a) * q_ + b; }
};

using GFPtr = std::shared_ptr<const GF>;
GFPtr make_gf(int q);

struct GFMat {
    GFPtr f;
    int n = 0;
    std::vector<int> a;

    GFMat() = default;
    GFMat(GFPtr f_, int n_) : f(std::move(f_)), n(n_), a(static_cast<size_t>(n_) * n_, 0) {}
    static GFMat identity(GFPtr f, int n);

    int& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    int at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    GFMat mul(const GFMat& o) const;
    GFMat inverse() const;  // throws internal_invariant_error if singular
    int det() const;
    int rank() const;
    bool is_upper_triangular() const;
    bool is_identity() const;
    bool operator==(const GFMat& o) const { return n == o.n && a == o.a; }
    bool operator<(const GFMat& o) const { return a < o.a; }
    std::string key() const;  // compact map key
};

// rank of an m x n matrix given as row vectors
int gf_rank(const GF& f, std::vector<std::vector<int>> rows);

// Polynomials over GF, coefficient vector low degree first, normalized
// (no trailing zeros; zero polynomial = empty vector).
struct GFPoly {
    std::vector<int> c;

    int deg() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
};

GFPoly poly_trim(GFPoly a);
GFPoly poly_add(const GF& f, const GFPoly& a, const GFPoly& b);
GFPoly poly_sub(const GF& f, const GFPoly& a, const GFPoly& b);
GFPoly poly_mul(const GF& f, const GFPoly& a, const GFPoly& b);
// (quotient, remainder) with b != 0
std::pair<GFPoly, GFPoly> poly_divmod(const GF& f, const GFPoly& a, const GFPoly& b);
GFPoly poly_gcd(const GF& f, GFPoly a, GFPoly b);  // monic
GFPoly poly_monic(const GF& f, GFPoly a);
std::string poly_str(const GFPoly& a);

// char poly of g, low degree first, degree n (monic).
GFPoly char_poly(const GFMat& g);

// Invariant factors of tI - g (Smith normal form over GF[t]); nontrivial
// factors only, each monic, divisibility chain. This is the rational
// canonical form of g written as a class label.
std::vector<GFPoly> invariant_factors(const GFMat& g);

}  // namespace hb
