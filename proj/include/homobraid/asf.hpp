#pragma once

// Brute-force enumeration of homogeneous affine Springer fibers for SL_n via
// the lattice-chain model. The companion element psi = C^d acts as
// multiplication by s on k((s)) = k((t))^n (s^n = t), so psi-stable lattices
// are exactly the k[[s^n, s^d]]-submodules of k((s)); enumeration happens in
// that rank-one picture and each module is converted back to a column Hermite
// basis matrix over k[t, t^-1] and re-verified there.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homobraid/betti.hpp"
#include "homobraid/laurent.hpp"

namespace hb {

// psi = C^d with C the companion-style matrix (superdiagonal 1s, t in the
// lower-left corner).
struct HomogeneousElement {
    int n = 2;
    int d = 1;
    GFPtr field;
    LMatGF psi;
};

HomogeneousElement make_homogeneous(int n, int d, int q);

// psi-stable lattice inside the window t^A O^n <= L <= t^-A O^n.
struct Lattice {
    int n = 0;
    int window = 0;  // A
    long long volume = 0;
    LMatGF hnf;  // upper triangular, diag t^{a_i}, off-diag reduced mod t^{a_row}
    // F_q-reduced basis of L / t^A O^n in the spectral window; each vector is
    // indexed by s-exponent - (-nA); internal representation used for chain
    // assembly
    std::vector<std::vector<int>> svectors;
    std::vector<int> pivots;  // s-valuations of the reduced basis
    bool touches_boundary = false;
};

struct AsfCount {
    long long count = 0;
    int window = 0;
    bool stable = false;  // count unchanged at window + 1
};

// All psi-stable lattices with volume in [-(n-1), n-1] inside the window;
// deterministic order. Throws invalid_input unless gcd(n, d) = 1; throws
// internal_invariant_error advising a larger window when a lattice touches
// the window boundary.
std::vector<Lattice> enumerate_fixed_lattices(const HomogeneousElement& psi, int window);

// #{chains L_0 > L_1 > ... > L_{n-1} > tL_0, steps of index 1, vol L_0 = 0,
// all psi-stable} = |Fl_psi(F_q)|.
long long count_asf_chains(const HomogeneousElement& psi, int window);

// chain count with the A -> A+1 stability check
AsfCount count_asf(int n, int d, int q, std::optional<int> window = std::nullopt);

// ---- torus-fixed (Hessenberg) decomposition -------------------------------

// Affine Weyl element of SL_n: translation part lambda (sum 0) times a finite
// permutation; w = t_lambda sigma.
struct AffineWeyl {
    Perm sigma;
    std::vector<int> lambda;

    bool operator<(const AffineWeyl& o) const {
        if (lambda != o.lambda) return lambda < o.lambda;
        return sigma < o.sigma;
    }
    bool operator==(const AffineWeyl& o) const {
        return sigma == o.sigma && lambda == o.lambda;
    }
};

AffineWeyl affine_identity(int n);
AffineWeyl affine_mul(const AffineWeyl& a, const AffineWeyl& b);
AffineWeyl affine_inverse(const AffineWeyl& a);
// simple reflections: j in [1, n-1] finite, j = 0 the affine one
AffineWeyl affine_simple(int n, int j);
int affine_length(const AffineWeyl& w);
// all elements of length <= cutoff, BFS order
std::vector<AffineWeyl> affine_elements_up_to(int n, int cutoff);

// matrix lift: one entry per column, +-t^powers, det 1
LMatGF affine_lift(const AffineWeyl& w, const GFPtr& f);

// Hessenberg point count of the coset of w: for the slope d/n the parahoric
// Levi is the torus, so this is 1 when Ad(w^-1) psi lies in Lie I_0^+ and 0
// otherwise (independent of q).
int hessenberg_points(const HomogeneousElement& psi, const AffineWeyl& w);

// |Fl_{w,psi}(F_q)|: brute force over the q^{l(w)} Schubert-cell coordinates.
long long schubert_cell_fixed_count(const HomogeneousElement& psi, const AffineWeyl& w);

struct HessenbergReconstruction {
    long long total = 0;
    bool partial = false;  // a nonempty cell at the cutoff length: increase cutoff
    std::vector<std::pair<AffineWeyl, long long>> cells;  // nonempty cells only
};

// sum of |Fl_{w,psi}(F_q)| over l(w) <= cutoff; equals count_asf_chains when
// not partial.
HessenbergReconstruction hessenberg_reconstruction(const HomogeneousElement& psi, int cutoff);

// ---- polynomiality detection ----------------------------------------------

// Exact Lagrange interpolation through (x_i, y_i); returns coefficients
// (constant first) when they are all integers and the degree is <= max_deg,
// otherwise nullopt.
std::optional<std::vector<long long>> fit_integer_polynomial(
    const std::vector<std::pair<long long, long long>>& points, int max_deg);

long long eval_polynomial(const std::vector<long long>& coeffs, long long x);

}  // namespace hb
