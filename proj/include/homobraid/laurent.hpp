#pragma once

// Laurent polynomials and Laurent matrices over a small finite field.
// Exponent-to-coefficient maps; everything exact.

#include <map>

#include "homobraid/gf.hpp"

namespace hb {

struct LaurentGF {
    std::map<int, int> c;  // exponent -> nonzero coefficient

    bool is_zero() const { return c.empty(); }
    // valuation; only valid on nonzero elements
    int val() const { return c.begin()->first; }
    int coeff(int e) const {
        auto it = c.find(e);
        return it == c.end() ? 0 : it->second;
    }
    void set(const GF& f, int e, int v) {
        if (v == 0)
            c.erase(e);
        else
            c[e] = v;
    }
};

LaurentGF laurent_monomial(int e, int v);
LaurentGF laurent_add(const GF& f, const LaurentGF& a, const LaurentGF& b);
LaurentGF laurent_sub(const GF& f, const LaurentGF& a, const LaurentGF& b);
LaurentGF laurent_mul(const GF& f, const LaurentGF& a, const LaurentGF& b);
LaurentGF laurent_scale(const GF& f, const LaurentGF& a, int s);
LaurentGF laurent_shift(const LaurentGF& a, int e);  // * t^e
std::string laurent_str(const LaurentGF& a);

struct LMatGF {
    GFPtr f;
    int n = 0;
    std::vector<LaurentGF> a;

    LMatGF() = default;
    LMatGF(GFPtr f_, int n_) : f(std::move(f_)), n(n_), a(static_cast<size_t>(n_) * n_) {}
    static LMatGF identity(GFPtr f, int n);

    LaurentGF& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
    const LaurentGF& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

    LMatGF mul(const LMatGF& o) const;
    bool in_iwahori_lie() const;       // val >= 0 above/on diag, >= 1 below
    bool in_iwahori_plus_lie() const;  // val >= 0 strictly above, >= 1 on/below
};

}  // namespace hb
