#include "homobraid/mpgrading.hpp"

#include <numeric>
#include <sstream>

namespace hb {

Frac::Frac(long long n, long long d) {
    if (d == 0) throw invalid_input("zero denominator");
    if (d < 0) { n = -n; d = -d; }
    long long g = std::gcd(n < 0 ? -n : n, d);
    if (g == 0) g = 1;
    num = n / g;
    den = d / g;
}

namespace {

int mod_m(long long v, int m) {
    long long r = v % m;
    if (r < 0) r += m;
    return static_cast<int>(r);
}

std::vector<int> c_dims_with_sign(const SlopeData& sd, int sign) {
    const auto& degs = sd.root_system->degrees();
    std::vector<int> c(sd.m, 0);
    for (int d : degs) c[mod_m(sign * static_cast<long long>(d - 1), sd.m)] += 1;
    return c;
}

}  // namespace

MPGrading build_grading(const SlopeData& sd) {
    const RootSystem& rs = *sd.root_system;
    const int m = sd.m;
    const int r = rs.rank();
    const int num_roots = 2 * rs.num_positive_roots();

    MPGrading gr;
    gr.slope = sd;
    gr.x_m_num.assign(r, 1);  // alpha_j(rho^vee) = 1
    gr.x_m_den = m;

    // each root alpha contributes to grade (ht(alpha) mod m); the Cartan
    // contributes r to grade 0 (affine roots alpha + n with alpha = 0)
    gr.graded_g_dims.assign(m, 0);
    for (const auto& a : rs.positive_roots()) {
        long long ht = std::accumulate(a.begin(), a.end(), 0LL);
        gr.graded_g_dims[mod_m(ht, m)] += 1;
        gr.graded_g_dims[mod_m(-ht, m)] += 1;
    }
    gr.graded_g_dims[0] += r;

    if (num_roots % m != 0)
        throw internal_invariant_error("|Phi| not divisible by regular m = " + std::to_string(m));
    const int phi_over_m = num_roots / m;

    // the paper states the eigenvalue multiset, not the index correspondence;
    // try both signs and keep the one matching dim g_i - dim c_i = |Phi|/m
    std::vector<int> c_plus = c_dims_with_sign(sd, +1);
    std::vector<int> c_minus = c_dims_with_sign(sd, -1);
    auto matches = [&](const std::vector<int>& c) {
        for (int i = 0; i < m; ++i)
            if (gr.graded_g_dims[i] - c[i] != phi_over_m) return false;
        return true;
    };
    if (matches(c_plus))
        gr.graded_c_dims = c_plus;
    else if (matches(c_minus))
        gr.graded_c_dims = c_minus;
    else
        throw internal_invariant_error("neither index convention for c satisfies g_i - c_i = |Phi|/m (" +
                                       rs.cartan().name() + ", m = " + std::to_string(m) + ")");

    int sum_g = std::accumulate(gr.graded_g_dims.begin(), gr.graded_g_dims.end(), 0);
    int sum_c = std::accumulate(gr.graded_c_dims.begin(), gr.graded_c_dims.end(), 0);
    if (sum_g != num_roots + r)
        throw internal_invariant_error("sum of graded g dims != dim g");
    if (sum_c != r)
        throw internal_invariant_error("sum of graded c dims != rank");
    if (gr.graded_c_dims[0] != fixed_space_dim(sd))
        throw internal_invariant_error("dim c_0 != dim t^w");
    return gr;
}

ModuliDims moduli_dims(const SlopeData& sd) {
    const RootSystem& rs = *sd.root_system;
    const long long num_roots = 2LL * rs.num_positive_roots();
    const int r = rs.rank();
    const int tw = fixed_space_dim(sd);

    if ((sd.d * num_roots) % sd.m != 0) {
        std::ostringstream os;
        os << "dim M non-integral: d|Phi|/m = " << sd.d * num_roots << "/" << sd.m;
        throw internal_invariant_error(os.str());
    }
    ModuliDims out;
    out.dim_t_w = tw;
    out.dim_M = static_cast<int>(sd.d * num_roots / sd.m) - r + tw;
    long long a = 0;
    for (int deg : rs.degrees()) a += (static_cast<long long>(sd.d) * (deg - 1)) / sd.m;
    out.dim_A = static_cast<int>(a);
    out.dim_M_flat = out.dim_M - 2 * tw;
    if (out.dim_M != 2 * out.dim_A) {
        std::ostringstream os;
        os << "dim M = " << out.dim_M << " != 2 dim A = " << 2 * out.dim_A << " for "
           << rs.cartan().name() << " slope " << sd.d << "/" << sd.m;
        throw internal_invariant_error(os.str());
    }
    return out;
}

std::pair<Frac, Frac> fractional_identity_check(const SlopeData& sd) {
    const RootSystem& rs = *sd.root_system;
    long long frac_sum_num = 0;  // in units of 1/m
    for (int d : rs.degrees()) frac_sum_num += (d - 1) % sd.m;
    Frac lhs(frac_sum_num, sd.m);
    Frac rhs(rs.rank() - fixed_space_dim(sd), 2);
    return {lhs, rhs};
}

}  // namespace hb
