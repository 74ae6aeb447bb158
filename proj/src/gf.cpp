#include "homobraid/gf.hpp"

#include <algorithm>
#include <sstream>

namespace hb {

namespace {

// digits of x base p, length k
std::vector<int> digits(int x, int p, int k) {
    std::vector<int> d(k);
    for (int i = 0; i < k; ++i) {
        d[i] = x % p;
        x /= p;
    }
    return d;
}

int undigits(const std::vector<int>& d, int p) {
    int x = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) x = x * p + d[i];
    return x;
}

// multiply polynomials over F_p and reduce mod the monic irreducible `mod`
std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<int>& mod, int p) {
    int k = static_cast<int>(mod.size()) - 1;
    std::vector<int> prod(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    for (int d = static_cast<int>(prod.size()) - 1; d >= k; --d) {
        int c = prod[d];
        if (c == 0) continue;
        prod[d] = 0;
        for (int i = 0; i < k; ++i)
            prod[d - k + i] = ((prod[d - k + i] - c * mod[i]) % p + p * p) % p;
    }
    prod.resize(k);
    return prod;
}

bool is_irreducible(const std::vector<int>& poly, int p) {
    // trial division by all monic polynomials of degree in [1, deg/2]
    int k = static_cast<int>(poly.size()) - 1;
    for (int dd = 1; dd <= k / 2; ++dd) {
        int count = 1;
        for (int i = 0; i < dd; ++i) count *= p;
        for (int idx = 0; idx < count; ++idx) {
            std::vector<int> div = digits(idx, p, dd);
            div.push_back(1);  // monic
            // long division poly / div over F_p, check remainder
            std::vector<int> rem = poly;
            for (int d = static_cast<int>(rem.size()) - 1; d >= dd; --d) {
                int c = rem[d];
                if (c == 0) continue;
                for (int i = 0; i <= dd; ++i)
                    rem[d - dd + i] = ((rem[d - dd + i] - c * div[i]) % p + p * p) % p;
            }
            bool zero = true;
            for (int i = 0; i < dd; ++i)
                if (rem[i] != 0) zero = false;
            if (zero) return false;
        }
    }
    return true;
}

}  // namespace

GF::GF(int q) : q_(q) {
    if (q < 2) throw invalid_input("q must be a prime power >= 2");
    int p = 2;
    while (q % p != 0) {
        ++p;
        if (p * p > q) { p = q; break; }
    }
    int k = 0, t = q;
    while (t > 1) {
        if (t % p != 0) throw invalid_input(std::to_string(q) + " is not a prime power");
        t /= p;
        ++k;
    }
    p_ = p;
    k_ = k;

    std::vector<int> mod;  // monic irreducible of degree k over F_p
    if (k == 1) {
        mod = {0, 1};
    } else {
        int count = 1;
        for (int i = 0; i < k; ++i) count *= p;
        for (int idx = 0; idx < count; ++idx) {
            std::vector<int> cand = digits(idx, p, k);
            cand.push_back(1);
            if (is_irreducible(cand, p)) { mod = cand; break; }
        }
        if (mod.empty()) throw internal_invariant_error("no irreducible polynomial found");
    }

    add_.resize(static_cast<size_t>(q) * q);
    mul_.resize(static_cast<size_t>(q) * q);
    neg_.resize(q);
    inv_.assign(q, -1);
    for (int a = 0; a < q; ++a) {
        auto da = digits(a, p, k);
        std::vector<int> na(k);
        for (int i = 0; i < k; ++i) na[i] = (p - da[i]) % p;
        neg_[a] = undigits(na, p);
        for (int b = 0; b < q; ++b) {
            auto db = digits(b, p, k);
            std::vector<int> s(k);
            for (int i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
            add_[idx(a, b)] = undigits(s, p);
            mul_[idx(a, b)] = undigits(polymulmod(da, db, mod, p), p);
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (mul_[idx(a, b)] == 1) inv_[a] = b;
}

int GF::inv(int a) const {
    if (a == 0) throw invalid_input("division by zero in GF");
    return inv_[a];
}

int GF::pow(int a, long long e) const {
    if (e < 0) return pow(inv(a), -e);
    int r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

GFPtr make_gf(int q) { return std::make_shared<GF>(q); }

GFMat GFMat::identity(GFPtr f, int n) {
    GFMat m(std::move(f), n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

GFMat GFMat::mul(const GFMat& o) const {
    GFMat r(f, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            int v = at(i, k);
            if (v == 0) continue;
            for (int j = 0; j < n; ++j)
                r.at(i, j) = f->add(r.at(i, j), f->mul(v, o.at(k, j)));
        }
    return r;
}

GFMat GFMat::inverse() const {
    GFMat m = *this, inv = identity(f, n);
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) throw internal_invariant_error("singular matrix in GFMat::inverse");
        for (int j = 0; j < n; ++j) {
            std::swap(m.a[static_cast<size_t>(col) * n + j], m.a[static_cast<size_t>(p) * n + j]);
            std::swap(inv.a[static_cast<size_t>(col) * n + j], inv.a[static_cast<size_t>(p) * n + j]);
        }
        int s = f->inv(m.at(col, col));
        for (int j = 0; j < n; ++j) {
            m.at(col, j) = f->mul(m.at(col, j), s);
            inv.at(col, j) = f->mul(inv.at(col, j), s);
        }
        for (int i = 0; i < n; ++i) {
            if (i == col || m.at(i, col) == 0) continue;
            int c = m.at(i, col);
            for (int j = 0; j < n; ++j) {
                m.at(i, j) = f->sub(m.at(i, j), f->mul(c, m.at(col, j)));
                inv.at(i, j) = f->sub(inv.at(i, j), f->mul(c, inv.at(col, j)));
            }
        }
    }
    return inv;
}

int GFMat::det() const {
    GFMat m = *this;
    int d = 1;
    for (int col = 0; col < n; ++col) {
        int p = -1;
        for (int i = col; i < n; ++i)
            if (m.at(i, col) != 0) { p = i; break; }
        if (p < 0) return 0;
        if (p != col) {
            for (int j = 0; j < n; ++j)
                std::swap(m.a[static_cast<size_t>(col) * n + j], m.a[static_cast<size_t>(p) * n + j]);
            d = f->neg(d);
        }
        d = f->mul(d, m.at(col, col));
        int s = f->inv(m.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (m.at(i, col) == 0) continue;
            int c = f->mul(m.at(i, col), s);
            for (int j = col; j < n; ++j)
                m.at(i, j) = f->sub(m.at(i, j), f->mul(c, m.at(col, j)));
        }
    }
    return d;
}

int GFMat::rank() const {
    std::vector<std::vector<int>> rows(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) rows[i][j] = at(i, j);
    return gf_rank(*f, std::move(rows));
}

bool GFMat::is_upper_triangular() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < i; ++j)
            if (at(i, j) != 0) return false;
    return true;
}

bool GFMat::is_identity() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

std::string GFMat::key() const {
    std::string s;
    s.reserve(a.size());
    for (int v : a) s.push_back(static_cast<char>('0' + v));
    return s;
}

int gf_rank(const GF& f, std::vector<std::vector<int>> rows) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    for (size_t col = 0; col < cols && rank < static_cast<int>(rows.size()); ++col) {
        int p = -1;
        for (int i = rank; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][col] != 0) { p = i; break; }
        if (p < 0) continue;
        std::swap(rows[rank], rows[p]);
        int s = f.inv(rows[rank][col]);
        for (size_t j = col; j < cols; ++j) rows[rank][j] = f.mul(rows[rank][j], s);
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            int c = rows[i][col];
            for (size_t j = col; j < cols; ++j)
                rows[i][j] = f.sub(rows[i][j], f.mul(c, rows[rank][j]));
        }
        ++rank;
    }
    return rank;
}

GFPoly poly_trim(GFPoly a) {
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
    return a;
}

GFPoly poly_add(const GF& f, const GFPoly& a, const GFPoly& b) {
    GFPoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (size_t i = 0; i < r.c.size(); ++i) {
        int x = i < a.c.size() ? a.c[i] : 0;
        int y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = f.add(x, y);
    }
    return poly_trim(r);
}

GFPoly poly_sub(const GF& f, const GFPoly& a, const GFPoly& b) {
    GFPoly nb = b;
    for (auto& v : nb.c) v = f.neg(v);
    return poly_add(f, a, nb);
}

GFPoly poly_mul(const GF& f, const GFPoly& a, const GFPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    GFPoly r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = f.add(r.c[i + j], f.mul(a.c[i], b.c[j]));
    return poly_trim(r);
}

std::pair<GFPoly, GFPoly> poly_divmod(const GF& f, const GFPoly& a, const GFPoly& b) {
    if (b.is_zero()) throw invalid_input("polynomial division by zero");
    GFPoly rem = a, quot;
    quot.c.assign(a.c.size(), 0);
    int db = b.deg();
    int lead_inv = f.inv(b.c.back());
    while (!rem.is_zero() && rem.deg() >= db) {
        int d = rem.deg() - db;
        int c = f.mul(rem.c.back(), lead_inv);
        quot.c[d] = c;
        for (int i = 0; i <= db; ++i)
            rem.c[d + i] = f.sub(rem.c[d + i], f.mul(c, b.c[i]));
        rem = poly_trim(rem);
    }
    return {poly_trim(quot), rem};
}

GFPoly poly_monic(const GF& f, GFPoly a) {
    if (a.is_zero()) return a;
    int s = f.inv(a.c.back());
    for (auto& v : a.c) v = f.mul(v, s);
    return a;
}

GFPoly poly_gcd(const GF& f, GFPoly a, GFPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = poly_divmod(f, a, b);
        a = b;
        b = r;
    }
    return poly_monic(f, a);
}

std::string poly_str(const GFPoly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int d = a.deg(); d >= 0; --d) {
        if (a.c[d] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (d == 0 || a.c[d] != 1) os << a.c[d];
        if (d >= 1) {
            os << "t";
            if (d > 1) os << "^" << d;
        }
    }
    return os.str();
}

GFPoly char_poly(const GFMat& g) {
    // det(tI - g) by expansion over GF[t] matrices via fraction-free Smith-like
    // elimination is overkill at n <= 3; use Leverrier-free direct expansion:
    // interpolate? simplest exact: cofactor expansion of the polynomial matrix.
    const GF& f = *g.f;
    int n = g.n;
    std::vector<std::vector<GFPoly>> m(n, std::vector<GFPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GFPoly e;
            if (g.at(i, j) != 0) e.c = {f.neg(g.at(i, j))};
            if (i == j) {
                GFPoly t;
                t.c = {0, 1};
                e = poly_add(f, e, t);
            }
            m[i][j] = e;
        }
    // recursive determinant (n <= 4 in practice)
    std::function<GFPoly(std::vector<std::vector<GFPoly>>&)> det_rec =
        [&](std::vector<std::vector<GFPoly>>& mm) -> GFPoly {
        int k = static_cast<int>(mm.size());
        if (k == 1) return mm[0][0];
        GFPoly acc;
        for (int col = 0; col < k; ++col) {
            if (mm[0][col].is_zero()) continue;
            std::vector<std::vector<GFPoly>> minor(k - 1, std::vector<GFPoly>(k - 1));
            for (int i = 1; i < k; ++i) {
                int jj = 0;
                for (int j = 0; j < k; ++j) {
                    if (j == col) continue;
                    minor[i - 1][jj++] = mm[i][j];
                }
            }
            GFPoly term = poly_mul(f, mm[0][col], det_rec(minor));
            if (col % 2 == 1)
                for (auto& v : term.c) v = f.neg(v);
            acc = poly_add(f, acc, term);
        }
        return acc;
    };
    return det_rec(m);
}

std::vector<GFPoly> invariant_factors(const GFMat& g) {
    // Smith normal form of tI - g over GF[t]
    const GF& f = *g.f;
    int n = g.n;
    std::vector<std::vector<GFPoly>> m(n, std::vector<GFPoly>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            GFPoly e;
            if (g.at(i, j) != 0) e.c = {f.neg(g.at(i, j))};
            if (i == j) {
                GFPoly t;
                t.c = {0, 1};
                e = poly_add(f, e, t);
            }
            m[i][j] = e;
        }
    std::vector<GFPoly> factors;
    for (int top = 0; top < n; ++top) {
        // find the minimal-degree nonzero entry in the submatrix, move to (top,top)
        for (;;) {
            int bi = -1, bj = -1, bd = 1 << 30;
            for (int i = top; i < n; ++i)
                for (int j = top; j < n; ++j)
                    if (!m[i][j].is_zero() && m[i][j].deg() < bd) {
                        bd = m[i][j].deg();
                        bi = i;
                        bj = j;
                    }
            if (bi < 0) {
                factors.push_back({});
                break;
            }
            std::swap(m[top], m[bi]);
            for (int i = 0; i < n; ++i) std::swap(m[i][top], m[i][bj]);
            bool clean = true;
            for (int i = top + 1; i < n; ++i) {
                if (m[i][top].is_zero()) continue;
                auto [q, r] = poly_divmod(f, m[i][top], m[top][top]);
                for (int j = top; j < n; ++j)
                    m[i][j] = poly_sub(f, m[i][j], poly_mul(f, q, m[top][j]));
                if (!r.is_zero()) clean = false;
            }
            for (int j = top + 1; j < n; ++j) {
                if (m[top][j].is_zero()) continue;
                auto [q, r] = poly_divmod(f, m[top][j], m[top][top]);
                for (int i = top; i < n; ++i)
                    m[i][j] = poly_sub(f, m[i][j], poly_mul(f, q, m[i][top]));
                if (!r.is_zero()) clean = false;
            }
            if (!clean) continue;
            bool all_clear = true;
            for (int i = top + 1; i < n && all_clear; ++i)
                if (!m[i][top].is_zero()) all_clear = false;
            for (int j = top + 1; j < n && all_clear; ++j)
                if (!m[top][j].is_zero()) all_clear = false;
            if (!all_clear) continue;
            // divisibility fix-up: pivot must divide every remaining entry
            bool divides_all = true;
            for (int i = top + 1; i < n && divides_all; ++i)
                for (int j = top + 1; j < n && divides_all; ++j) {
                    if (m[i][j].is_zero()) continue;
                    auto [q, r] = poly_divmod(f, m[i][j], m[top][top]);
                    if (!r.is_zero()) {
                        // add row i to row top and restart reduction
                        for (int jj = top; jj < n; ++jj)
                            m[top][jj] = poly_add(f, m[top][jj], m[i][jj]);
                        divides_all = false;
                    }
                }
            if (!divides_all) continue;
            factors.push_back(poly_monic(f, m[top][top]));
            break;
        }
    }
    // keep only nontrivial (degree >= 1) factors
    std::vector<GFPoly> out;
    for (auto& p : factors)
        if (!p.is_zero() && p.deg() >= 1) out.push_back(p);
    return out;
}

}  // namespace hb
