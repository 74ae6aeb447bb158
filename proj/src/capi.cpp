#include "homobraid.h"

#include <cstring>
#include <numeric>
#include <string>

#include <json.hpp>

#include "homobraid/asf.hpp"
#include "homobraid/betti.hpp"
#include "homobraid/braid.hpp"
#include "homobraid/gauge.hpp"
#include "homobraid/mpgrading.hpp"
#include "homobraid/rootsys.hpp"

using nlohmann::json;

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename F>
hb_status guarded(F&& fn) {
    try {
        fn();
        return HB_OK;
    } catch (const hb::invalid_input& e) {
        g_last_error = e.what();
        return HB_ERR_INVALID;
    } catch (const hb::budget_exceeded& e) {
        g_last_error = e.what();
        return HB_ERR_BUDGET;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return HB_ERR_INTERNAL;
    }
}

std::vector<int> to_internal_letters(const int* letters, int len) {
    std::vector<int> out;
    out.reserve(len);
    for (int i = 0; i < len; ++i) {
        if (letters[i] < 1) throw hb::invalid_input("braid letters are 1-based");
        out.push_back(letters[i] - 1);
    }
    return out;
}

json count_report_json(const hb::CountReport& rep) {
    json j;
    j["raw"] = rep.raw_count;
    j["group_order"] = rep.group_order;
    if (rep.stacky_den == 1)
        j["stacky"] = rep.stacky_num;
    else
        j["stacky"] = std::to_string(rep.stacky_num) + "/" + std::to_string(rep.stacky_den);
    j["divisible"] = rep.divisible;
    switch (rep.constraint) {
        case hb::CountConstraint::none: j["constraint"] = "none"; break;
        case hb::CountConstraint::unipotent_with_borel: j["constraint"] = "unipotent"; break;
        case hb::CountConstraint::formal_monodromy_class: j["constraint"] = "kappa"; break;
    }
    if (!rep.per_kappa.empty()) {
        json pk = json::object();
        for (auto& [k, v] : rep.per_kappa) pk[k] = v;
        j["per_kappa"] = pk;
    }
    return j;
}

}  // namespace

extern "C" {

const char* hb_version(void) { return "homobraid 0.1.0"; }

const char* hb_last_error(void) { return g_last_error.c_str(); }

void hb_string_free(char* s) { delete[] s; }

struct hb_root_system {
    hb::RootSystemPtr rs;
};

struct hb_slope {
    hb::SlopeData sd;
};

hb_status hb_root_system_new(char family, int rank, hb_root_system** out) {
    return guarded([&] {
        auto rs = hb::build_root_system(family, rank);
        *out = new hb_root_system{rs};
    });
}

void hb_root_system_free(hb_root_system* rs) { delete rs; }

int hb_root_system_rank(const hb_root_system* rs) { return rs->rs->rank(); }

int hb_root_system_num_positive_roots(const hb_root_system* rs) {
    return rs->rs->num_positive_roots();
}

int hb_root_system_coxeter_number(const hb_root_system* rs) {
    return rs->rs->coxeter_number();
}

long long hb_root_system_weyl_order(const hb_root_system* rs) { return rs->rs->weyl_order(); }

int hb_root_system_degrees(const hb_root_system* rs, int* out, int cap) {
    const auto& d = rs->rs->degrees();
    for (int i = 0; i < cap && i < static_cast<int>(d.size()); ++i) out[i] = d[i];
    return static_cast<int>(d.size());
}

int hb_regular_numbers(const hb_root_system* rs, int* out, int cap) {
    auto regs = hb::regular_numbers(*rs->rs);
    int i = 0;
    for (int m : regs) {
        if (i < cap) out[i] = m;
        ++i;
    }
    return i;
}

hb_status hb_slope_new(const hb_root_system* rs, int d, int m, uint64_t seed,
                       hb_slope** out) {
    return guarded([&] { *out = new hb_slope{hb::make_slope_data(rs->rs, d, m, seed)}; });
}

void hb_slope_free(hb_slope* sd) { delete sd; }

int hb_slope_fixed_space_dim(const hb_slope* sd) { return hb::fixed_space_dim(sd->sd); }

hb_status hb_moduli_dims(const hb_slope* sd, int* dim_M, int* dim_A, int* dim_M_flat,
                         int* dim_t_w) {
    return guarded([&] {
        auto md = hb::moduli_dims(sd->sd);
        *dim_M = md.dim_M;
        *dim_A = md.dim_A;
        *dim_M_flat = md.dim_M_flat;
        *dim_t_w = md.dim_t_w;
    });
}

hb_status hb_grading(const hb_slope* sd, int* g_dims, int* c_dims) {
    return guarded([&] {
        auto gr = hb::build_grading(sd->sd);
        for (int i = 0; i < sd->sd.m; ++i) {
            g_dims[i] = gr.graded_g_dims[i];
            c_dims[i] = gr.graded_c_dims[i];
        }
    });
}

hb_status hb_fractional_identity(const hb_slope* sd, long long* lhs_num,
                                 long long* lhs_den, long long* rhs_num,
                                 long long* rhs_den) {
    return guarded([&] {
        auto [lhs, rhs] = hb::fractional_identity_check(sd->sd);
        *lhs_num = lhs.num;
        *lhs_den = lhs.den;
        *rhs_num = rhs.num;
        *rhs_den = rhs.den;
    });
}

hb_status hb_slope_braid(const hb_slope* sd, int* letters_out, int cap, int* len_out) {
    return guarded([&] {
        auto b = hb::slope_braid(sd->sd);
        *len_out = b.length();
        for (int i = 0; i < cap && i < b.length(); ++i) letters_out[i] = b.letters[i] + 1;
    });
}

hb_status hb_braid_normal_form(const hb_root_system* rs, const int* letters, int len,
                               char** json_out) {
    return guarded([&] {
        hb::BraidWord b{rs->rs, to_internal_letters(letters, len)};
        auto nf = hb::normal_form(b);
        json j;
        j["delta_power"] = nf.delta_power;
        json factors = json::array();
        for (const auto& f : nf.canonical_factors) {
            json word = json::array();
            for (int l : rs->rs->reduced_word(f)) word.push_back(l + 1);
            factors.push_back(word);
        }
        j["factors"] = factors;
        *json_out = dup_string(j.dump());
    });
}

hb_status hb_braid_nf_equal(const hb_root_system* rs, const int* a, int alen,
                            const int* b, int blen, int* equal_out) {
    return guarded([&] {
        hb::BraidWord wa{rs->rs, to_internal_letters(a, alen)};
        hb::BraidWord wb{rs->rs, to_internal_letters(b, blen)};
        *equal_out = hb::normal_form(wa) == hb::normal_form(wb) ? 1 : 0;
    });
}

hb_status hb_braid_cyclic_equal(const hb_root_system* rs, const int* a, int alen,
                                const int* b, int blen, int* equal_out) {
    return guarded([&] {
        hb::BraidWord wa{rs->rs, to_internal_letters(a, alen)};
        hb::BraidWord wb{rs->rs, to_internal_letters(b, blen)};
        *equal_out = hb::cyclic_shift_class_equal(wa, wb) ? 1 : 0;
    });
}

hb_status hb_count_betti(int n, const int* letters, int len, int q, int constraint,
                         long long budget, char** json_out) {
    return guarded([&] {
        auto w = to_internal_letters(letters, len);
        if (budget <= 0) budget = 500000000;
        hb::CountReport rep;
        if (constraint == 0)
            rep = hb::count_msh(n, w, q, budget);
        else if (constraint == 1)
            rep = hb::count_m0bet(n, w, q, budget);
        else if (constraint == 2)
            rep = hb::fiber_count_by_kappa(n, w, q, hb::CountConstraint::none, budget);
        else
            throw hb::invalid_input("constraint must be 0, 1 or 2");
        *json_out = dup_string(count_report_json(rep).dump());
    });
}

hb_status hb_count_asf(int n, int d, int q, int window, char** json_out) {
    return guarded([&] {
        auto out = hb::count_asf(n, d, q,
                                 window <= 0 ? std::nullopt : std::optional<int>(window));
        json j;
        j["count"] = out.count;
        j["window"] = out.window;
        j["stable"] = out.stable;
        *json_out = dup_string(j.dump());
    });
}

hb_status hb_gauge_roundtrip(int n, int d, int depth, uint64_t seed, char** json_out) {
    return guarded([&] {
        if (n < 2 || n > 3) throw hb::invalid_input("gauge roundtrip implemented for n in {2,3}");
        if (std::gcd(n, d) != 1) throw hb::invalid_input("gcd(n, d) must be 1");
        if (depth < 1 || depth > 24) throw hb::invalid_input("depth must be in [1, 24]");
        int lo = -(depth + 2 * d + 2), hi = d + 1;
        auto psi = hb::companion_psi(n, d, lo, hi);
        auto h = hb::random_pro_unipotent(n, d, lo, hi, 3, seed);
        auto psi_prime = hb::ad_action(h, psi);
        auto g = hb::gauge_to(psi, psi_prime, depth);
        json j;
        j["residual_zero"] = true;  // gauge_to throws otherwise
        j["steps"] = g.factors.size();
        json factors = json::array();
        for (auto& [grade, y] : g.factors) {
            json f;
            f["grade"] = std::to_string(grade) + "/" + std::to_string(n);
            json rows = json::array();
            for (int i = 0; i < n; ++i) {
                json row = json::array();
                for (int jj = 0; jj < n; ++jj) row.push_back(hb::qlaurent_str(y.at(i, jj)));
                rows.push_back(row);
            }
            f["matrix"] = rows;
            factors.push_back(f);
        }
        j["factors"] = factors;
        *json_out = dup_string(j.dump());
    });
}

}  // extern "C"
