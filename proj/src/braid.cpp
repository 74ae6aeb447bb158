#include "homobraid/braid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hb {

namespace {

// (a, b) is left-weighted iff every left descent of b is a right descent of a.
// Slide moves letters from b to a until that holds.
bool slide_pair(const RootSystem& rs, WeylElement& a, WeylElement& b) {
    bool moved = false;
    for (;;) {
        int j = -1;
        for (int k = 0; k < rs.rank(); ++k) {
            if (rs.has_left_descent(b, k) && !rs.has_right_descent(a, k)) { j = k; break; }
        }
        if (j < 0) return moved;
        a = rs.mul(a, rs.simple_reflection(j));
        b = rs.mul(rs.simple_reflection(j), b);
        moved = true;
    }
}

constexpr double kAngleTol = 1e-7;

}  // namespace

GarsideNF normal_form(const BraidWord& b) {
    const RootSystem& rs = *b.root_system;
    std::vector<WeylElement> factors;
    factors.reserve(b.letters.size());
    for (int j : b.letters) {
        if (j < 0 || j >= rs.rank()) throw invalid_input("braid letter out of range");
        factors.push_back(rs.simple_reflection(j));
    }
    // bubble local slides to a fixpoint
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i + 1 < factors.size(); ++i)
            if (slide_pair(rs, factors[i], factors[i + 1])) changed = true;
        // drop identity factors created by complete slides
        factors.erase(std::remove_if(factors.begin(), factors.end(),
                                     [](const WeylElement& w) { return w.is_identity(); }),
                      factors.end());
    }
    GarsideNF nf;
    const WeylElement w0 = rs.longest_element();
    size_t lead = 0;
    while (lead < factors.size() && factors[lead] == w0) ++lead;
    nf.delta_power = static_cast<int>(lead);
    nf.canonical_factors.assign(factors.begin() + lead, factors.end());
    return nf;
}

BraidWord recompose(RootSystemPtr rs, const GarsideNF& nf) {
    BraidWord out{rs, {}};
    const WeylElement w0 = rs->longest_element();
    for (int k = 0; k < nf.delta_power; ++k) {
        auto word = rs->reduced_word(w0);
        out.letters.insert(out.letters.end(), word.begin(), word.end());
    }
    for (const auto& f : nf.canonical_factors) {
        auto word = rs->reduced_word(f);
        out.letters.insert(out.letters.end(), word.begin(), word.end());
    }
    return out;
}

BraidWord lift(RootSystemPtr rs, const WeylElement& w) {
    return BraidWord{rs, rs->reduced_word(w)};
}

BraidWord concat(const BraidWord& a, const BraidWord& b) {
    BraidWord out = a;
    out.letters.insert(out.letters.end(), b.letters.begin(), b.letters.end());
    return out;
}

BraidWord power(const BraidWord& a, int k) {
    BraidWord out{a.root_system, {}};
    for (int i = 0; i < k; ++i)
        out.letters.insert(out.letters.end(), a.letters.begin(), a.letters.end());
    return out;
}

WeylElement braid_image(const BraidWord& b) {
    return b.root_system->from_word(b.letters);
}

BraidWord slope_braid_once(const SlopeData& sd, double theta0) {
    const RootSystem& rs = *sd.root_system;
    const double pi = std::acos(-1.0);
    const double nu = static_cast<double>(sd.d) / sd.m;

    // crossing angles: Re(e^{-i d theta/m} alpha(x)) = 0 iff
    // d theta / m = arg(alpha(x)) + pi/2 + k pi
    struct Crossing {
        double theta;
        int root_idx;
    };
    std::vector<Crossing> crossings;
    for (int ri = 0; ri < rs.num_positive_roots(); ++ri) {
        std::complex<double> c = RootSystem::root_value(rs.positive_roots()[ri], sd.eigvec);
        double phi = std::arg(c);
        // theta = (phi + pi/2 + k pi)/nu, restricted to [theta0, theta0 + 2pi)
        double base = (phi + pi / 2) / nu;
        double step = pi / nu;
        long long k0 = static_cast<long long>(std::floor((theta0 - base) / step));
        for (long long k = k0 - 1;; ++k) {
            double th = base + static_cast<double>(k) * step;
            if (th < theta0 - kAngleTol) continue;
            if (th >= theta0 + 2 * pi - kAngleTol) break;
            crossings.push_back({th, ri});
        }
    }
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.theta < b.theta; });
    for (size_t i = 0; i + 1 < crossings.size(); ++i)
        if (crossings[i + 1].theta - crossings[i].theta < kAngleTol)
            throw nongeneric_data("two crossing angles coincide; re-randomize the eigenvector");
    if (!crossings.empty() &&
        (crossings.front().theta - theta0 < kAngleTol ||
         theta0 + 2 * pi - crossings.back().theta < kAngleTol))
        throw nongeneric_data("theta0 is a crossing angle; re-randomize");

    auto real_point = [&](double theta) {
        std::complex<double> phase = std::polar(1.0, -nu * theta);
        DVec y(rs.rank());
        for (int i = 0; i < rs.rank(); ++i) y[i] = (phase * sd.eigvec[i]).real();
        return y;
    };

    double first_mid = crossings.empty() ? theta0 + pi
                                         : (theta0 + crossings.front().theta) / 2;
    WeylElement u = rs.chamber_of(real_point(first_mid));
    const WeylElement u0 = u;

    BraidWord out{sd.root_system, {}};
    WeylElement u_inv = rs.inverse(u);
    for (const auto& cr : crossings) {
        // wall alpha crossed: adjacent chambers, so u^{-1}(alpha) = +- alpha_j
        IVec beta = u_inv.root_action.apply(rs.positive_roots()[cr.root_idx]);
        int j = -1;
        for (int k = 0; k < rs.rank(); ++k) {
            IVec e(rs.rank(), 0);
            e[k] = 1;
            IVec ne(rs.rank(), 0);
            ne[k] = -1;
            if (beta == e || beta == ne) { j = k; break; }
        }
        if (j < 0)
            throw nongeneric_data("crossed wall is not adjacent to current chamber; re-randomize");
        out.letters.push_back(j);
        u = rs.mul(u, rs.simple_reflection(j));
        u_inv = rs.mul(rs.simple_reflection(j), u_inv);
    }

    // after a full turn the point is w^{-d} of the start: chambers must agree
    WeylElement w_pow = rs.identity();
    for (int k = 0; k < sd.d % sd.m; ++k) w_pow = rs.mul(w_pow, sd.w);
    WeylElement expected = rs.mul(rs.inverse(w_pow), u0);
    if (!(u == expected))
        throw nongeneric_data("chamber walk monodromy mismatch; re-randomize");
    return out;
}

BraidWord slope_braid(const SlopeData& sd, double theta0) {
    SlopeData cur = sd;
    double th = theta0;
    for (int attempt = 0; attempt < 32; ++attempt) {
        try {
            return slope_braid_once(cur, th);
        } catch (const nongeneric_data&) {
            cur = redraw_eigenvector(cur, sd.seed * 1315423911ULL + 2654435761ULL * (attempt + 1));
            th = theta0 + 1e-3 * (attempt + 1);
        }
    }
    throw internal_invariant_error("slope_braid failed to reach generic position after 32 redraws");
}

bool cyclic_shift_class_equal(const BraidWord& b1, const BraidWord& b2) {
    if (b1.letters.size() != b2.letters.size()) return false;
    GarsideNF target = normal_form(b2);
    BraidWord rot = b1;
    size_t n = std::max<size_t>(b1.letters.size(), 1);
    for (size_t k = 0; k < n; ++k) {
        if (normal_form(rot) == target) return true;
        if (!rot.letters.empty())
            std::rotate(rot.letters.begin(), rot.letters.begin() + 1, rot.letters.end());
    }
    return false;
}

}  // namespace hb
