#include "homobraid/laurent.hpp"

#include <sstream>

namespace hb {

LaurentGF laurent_monomial(int e, int v) {
    LaurentGF x;
    if (v != 0) x.c[e] = v;
    return x;
}

LaurentGF laurent_add(const GF& f, const LaurentGF& a, const LaurentGF& b) {
    LaurentGF r = a;
    for (auto& [e, v] : b.c) {
        int s = f.add(r.coeff(e), v);
        r.set(f, e, s);
    }
    return r;
}

LaurentGF laurent_sub(const GF& f, const LaurentGF& a, const LaurentGF& b) {
    LaurentGF r = a;
    for (auto& [e, v] : b.c) {
        int s = f.sub(r.coeff(e), v);
        r.set(f, e, s);
    }
    return r;
}

LaurentGF laurent_mul(const GF& f, const LaurentGF& a, const LaurentGF& b) {
    LaurentGF r;
    for (auto& [ea, va] : a.c)
        for (auto& [eb, vb] : b.c) {
            int e = ea + eb;
            int s = f.add(r.coeff(e), f.mul(va, vb));
            r.set(f, e, s);
        }
    return r;
}

LaurentGF laurent_scale(const GF& f, const LaurentGF& a, int s) {
    LaurentGF r;
    if (s == 0) return r;
    for (auto& [e, v] : a.c) r.c[e] = f.mul(v, s);
    return r;
}

LaurentGF laurent_shift(const LaurentGF& a, int e) {
    LaurentGF r;
    for (auto& [ee, v] : a.c) r.c[ee + e] = v;
    return r;
}

std::string laurent_str(const LaurentGF& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [e, v] : a.c) {
        if (!first) os << "+";
        first = false;
        if (v != 1 || e == 0) os << v;
        if (e != 0) {
            if (v != 1) os << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

LMatGF LMatGF::identity(GFPtr f, int n) {
    LMatGF m(std::move(f), n);
    for (int i = 0; i < n; ++i) m.at(i, i) = laurent_monomial(0, 1);
    return m;
}

LMatGF LMatGF::mul(const LMatGF& o) const {
    LMatGF r(f, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < n; ++j) {
                if (o.at(k, j).is_zero()) continue;
                r.at(i, j) = laurent_add(*f, r.at(i, j), laurent_mul(*f, at(i, k), o.at(k, j)));
            }
        }
    return r;
}

bool LMatGF::in_iwahori_lie() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const LaurentGF& e = at(i, j);
            if (e.is_zero()) continue;
            int need = i > j ? 1 : 0;
            if (e.val() < need) return false;
        }
    return true;
}

bool LMatGF::in_iwahori_plus_lie() const {
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const LaurentGF& e = at(i, j);
            if (e.is_zero()) continue;
            int need = i >= j ? 1 : 0;
            if (e.val() < need) return false;
        }
    return true;
}

}  // namespace hb
