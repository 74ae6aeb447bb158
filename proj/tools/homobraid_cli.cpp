// homobraid command-line front end. Talks to the library exclusively through
// the C API in homobraid.h; every subcommand emits a single JSON document on
// stdout with an embedded reproducibility manifest, diagnostics go to stderr.
//
// Exit codes: 0 ok, 2 invalid input, 3 internal invariant violation,
// 4 budget exceeded.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "homobraid.h"

using nlohmann::json;

namespace {

struct Ctx {
    std::string command_line;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t seed = 0;
    bool tsv = false;

    json manifest(const json& inputs) const {
        json m;
        m["command"] = command_line;
        m["seed"] = seed;
        m["version"] = hb_version();
        long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        if (std::getenv("HOMOBRAID_FIXED_TIME")) ms = 0;
        m["wall_ms"] = ms;
        m["inputs"] = inputs;
        return m;
    }
};

[[noreturn]] void fail(hb_status st) {
    std::cerr << "error: " << hb_last_error() << "\n";
    std::exit(static_cast<int>(st));
}

void emit(const Ctx& ctx, const json& inputs, json payload) {
    payload["schema"] = 1;
    payload["manifest"] = ctx.manifest(inputs);
    std::cout << payload.dump(2) << "\n";
}

std::pair<int, int> parse_slope(const std::string& s) {
    auto pos = s.find('/');
    if (pos == std::string::npos)
        throw CLI::ValidationError("slope", "expected d/m, e.g. 3/2");
    int d = std::stoi(s.substr(0, pos));
    int m = std::stoi(s.substr(pos + 1));
    if (d < 1 || m < 1 || std::gcd(d, m) != 1)
        throw CLI::ValidationError("slope", "slope must be d/m in lowest terms, d,m >= 1");
    return {d, m};
}

std::vector<int> parse_braid(const std::string& s) {
    std::vector<int> letters;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        letters.push_back(std::stoi(tok));
    }
    return letters;
}

struct RootSystemHandle {
    hb_root_system* rs = nullptr;
    ~RootSystemHandle() { hb_root_system_free(rs); }
};

struct SlopeHandle {
    hb_slope* sd = nullptr;
    ~SlopeHandle() { hb_slope_free(sd); }
};

struct StringHandle {
    char* s = nullptr;
    ~StringHandle() { hb_string_free(s); }
};

void open_root_system(const std::string& type, int rank, RootSystemHandle& h) {
    if (type.size() != 1) {
        std::cerr << "error: --type expects a single letter A..G\n";
        std::exit(2);
    }
    hb_status st = hb_root_system_new(type[0], rank, &h.rs);
    if (st != HB_OK) fail(st);
}

void open_slope(const RootSystemHandle& rs, int d, int m, std::uint64_t seed,
                SlopeHandle& h) {
    hb_status st = hb_slope_new(rs.rs, d, m, seed, &h.sd);
    if (st != HB_OK) fail(st);
}

}  // namespace

int main(int argc, char** argv) {
    Ctx ctx;
    {
        std::ostringstream os;
        for (int i = 0; i < argc; ++i) {
            if (i) os << " ";
            os << argv[i];
        }
        ctx.command_line = os.str();
    }

    CLI::App app{"finite shadows of homogeneous affine Springer fibers and braid varieties"};
    app.require_subcommand(1);

    std::string type = "A", slope_str = "1/2", braid_str, constraint = "none";
    int rank = 1, m_arg = 1, n_arg = 2, d_arg = 1, q_arg = 2, window = 0, depth = 8;
    long long budget = 500000000;
    app.add_option("--seed", ctx.seed, "seed for randomized constructions")->capture_default_str();
    app.add_flag("--tsv", ctx.tsv, "tabular output where applicable");

    auto* c_degrees = app.add_subcommand("degrees", "fundamental degrees and root counts");
    c_degrees->add_option("--type", type)->required();
    c_degrees->add_option("--rank", rank)->required();

    auto* c_regnums = app.add_subcommand("regular-numbers", "regular numbers of the Weyl group");
    c_regnums->add_option("--type", type)->required();
    c_regnums->add_option("--rank", rank)->required();

    auto* c_grading = app.add_subcommand("grading", "graded dimension table at the barycenter");
    c_grading->add_option("--type", type)->required();
    c_grading->add_option("--rank", rank)->required();
    c_grading->add_option("--slope", slope_str)->required();

    auto* c_dims = app.add_subcommand("dims", "moduli dimension formulas");
    c_dims->add_option("--type", type)->required();
    c_dims->add_option("--rank", rank)->required();
    c_dims->add_option("--slope", slope_str)->required();

    auto* c_ident = app.add_subcommand("identity-check", "fractional-part identity");
    c_ident->add_option("--type", type)->required();
    c_ident->add_option("--rank", rank)->required();
    c_ident->add_option("--m", m_arg)->required();

    auto* c_braid = app.add_subcommand("braid", "positive braid attached to a slope");
    c_braid->add_option("--type", type)->required();
    c_braid->add_option("--rank", rank)->required();
    c_braid->add_option("--slope", slope_str)->required();

    auto* c_nf = app.add_subcommand("braid-nf", "left-greedy Garside normal form");
    c_nf->add_option("--type", type)->required();
    c_nf->add_option("--rank", rank)->required();
    c_nf->add_option("--braid", braid_str, "comma-separated 1-based letters")->required();

    auto* c_count = app.add_subcommand("count", "point counts over finite fields");
    c_count->require_subcommand(1);
    auto* c_betti = c_count->add_subcommand("betti", "braid-variety counts for SL_n");
    c_betti->add_option("--n", n_arg)->required();
    c_betti->add_option("--braid", braid_str)->required();
    c_betti->add_option("--q", q_arg)->required();
    c_betti->add_option("--constraint", constraint, "none | unipotent | kappa")
        ->capture_default_str();
    c_betti->add_option("--budget", budget)->capture_default_str();
    auto* c_asf = c_count->add_subcommand("asf", "affine Springer fiber chain counts");
    c_asf->add_option("--n", n_arg)->required();
    c_asf->add_option("--d", d_arg)->required();
    c_asf->add_option("--q", q_arg)->required();
    c_asf->add_option("--window", window, "truncation bound A (default d+1)");

    auto* c_gauge = app.add_subcommand("gauge", "gauge-normalization round trip");
    c_gauge->add_option("--n", n_arg)->required();
    c_gauge->add_option("--d", d_arg)->required();
    c_gauge->add_option("--depth", depth)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*c_degrees || *c_regnums) {
            RootSystemHandle rs;
            open_root_system(type, rank, rs);
            int r = hb_root_system_rank(rs.rs);
            std::vector<int> degrees(r);
            hb_root_system_degrees(rs.rs, degrees.data(), r);
            json inputs{{"type", type}, {"rank", rank}};
            if (*c_degrees) {
                if (ctx.tsv) {
                    for (int d : degrees) std::cout << d << "\t";
                    std::cout << "\n";
                    return 0;
                }
                json j;
                j["type"] = type;
                j["rank"] = rank;
                j["degrees"] = degrees;
                j["num_positive_roots"] = hb_root_system_num_positive_roots(rs.rs);
                j["coxeter_number"] = hb_root_system_coxeter_number(rs.rs);
                j["weyl_order"] = hb_root_system_weyl_order(rs.rs);
                emit(ctx, inputs, j);
            } else {
                std::vector<int> regs(64);
                int cnt = hb_regular_numbers(rs.rs, regs.data(), 64);
                regs.resize(cnt);
                if (ctx.tsv) {
                    for (int m : regs) std::cout << m << "\t";
                    std::cout << "\n";
                    return 0;
                }
                json j;
                j["type"] = type;
                j["rank"] = rank;
                j["regular_numbers"] = regs;
                emit(ctx, inputs, j);
            }
            return 0;
        }

        if (*c_grading || *c_dims || *c_braid) {
            auto [d, m] = parse_slope(slope_str);
            RootSystemHandle rs;
            open_root_system(type, rank, rs);
            SlopeHandle sd;
            open_slope(rs, d, m, ctx.seed, sd);
            json inputs{{"type", type}, {"rank", rank}, {"slope", slope_str}};
            if (*c_grading) {
                std::vector<int> g(m), c(m);
                hb_status st = hb_grading(sd.sd, g.data(), c.data());
                if (st != HB_OK) fail(st);
                if (ctx.tsv) {
                    std::cout << "i\tg\tc\n";
                    for (int i = 0; i < m; ++i)
                        std::cout << i << "\t" << g[i] << "\t" << c[i] << "\n";
                    return 0;
                }
                json j;
                j["m"] = m;
                j["g_dims"] = g;
                j["c_dims"] = c;
                j["phi_over_m"] = g[0] - c[0];
                emit(ctx, inputs, j);
            } else if (*c_dims) {
                int dim_M, dim_A, dim_M_flat, dim_t_w;
                hb_status st = hb_moduli_dims(sd.sd, &dim_M, &dim_A, &dim_M_flat, &dim_t_w);
                if (st != HB_OK) fail(st);
                json j;
                j["dim_M"] = dim_M;
                j["dim_A"] = dim_A;
                j["dim_M_flat"] = dim_M_flat;
                j["dim_t_w"] = dim_t_w;
                emit(ctx, inputs, j);
            } else {
                int len = 0;
                hb_status st = hb_slope_braid(sd.sd, nullptr, 0, &len);
                if (st != HB_OK) fail(st);
                std::vector<int> letters(len);
                st = hb_slope_braid(sd.sd, letters.data(), len, &len);
                if (st != HB_OK) fail(st);
                json j;
                j["letters"] = letters;
                j["length"] = len;
                emit(ctx, inputs, j);
            }
            return 0;
        }

        if (*c_ident) {
            RootSystemHandle rs;
            open_root_system(type, rank, rs);
            SlopeHandle sd;
            open_slope(rs, 1, m_arg, ctx.seed, sd);
            long long ln, ld, rn, rd;
            hb_status st = hb_fractional_identity(sd.sd, &ln, &ld, &rn, &rd);
            if (st != HB_OK) fail(st);
            json j;
            j["lhs"] = std::to_string(ln) + "/" + std::to_string(ld);
            j["rhs"] = std::to_string(rn) + "/" + std::to_string(rd);
            j["equal"] = (ln == rn && ld == rd);
            emit(ctx, {{"type", type}, {"rank", rank}, {"m", m_arg}}, j);
            if (!(ln == rn && ld == rd)) {
                std::cerr << "error: fractional identity failed\n";
                return 3;
            }
            return 0;
        }

        if (*c_nf) {
            RootSystemHandle rs;
            open_root_system(type, rank, rs);
            auto letters = parse_braid(braid_str);
            StringHandle out;
            hb_status st =
                hb_braid_normal_form(rs.rs, letters.data(),
                                     static_cast<int>(letters.size()), &out.s);
            if (st != HB_OK) fail(st);
            json j = json::parse(out.s);
            emit(ctx, {{"type", type}, {"rank", rank}, {"braid", braid_str}}, j);
            return 0;
        }

        if (*c_betti) {
            auto letters = parse_braid(braid_str);
            int cons = constraint == "none" ? 0
                       : constraint == "unipotent" ? 1
                       : constraint == "kappa" ? 2
                                               : -1;
            if (cons < 0) {
                std::cerr << "error: --constraint must be none, unipotent or kappa\n";
                return 2;
            }
            StringHandle out;
            hb_status st = hb_count_betti(n_arg, letters.data(),
                                          static_cast<int>(letters.size()), q_arg, cons,
                                          budget, &out.s);
            if (st != HB_OK) fail(st);
            json j = json::parse(out.s);
            emit(ctx,
                 {{"n", n_arg}, {"braid", braid_str}, {"q", q_arg}, {"constraint", constraint}},
                 j);
            return 0;
        }

        if (*c_asf) {
            StringHandle out;
            hb_status st = hb_count_asf(n_arg, d_arg, q_arg, window, &out.s);
            if (st != HB_OK) fail(st);
            json j = json::parse(out.s);
            emit(ctx, {{"n", n_arg}, {"d", d_arg}, {"q", q_arg}, {"window", window}}, j);
            return 0;
        }

        if (*c_gauge) {
            StringHandle out;
            hb_status st = hb_gauge_roundtrip(n_arg, d_arg, depth, ctx.seed, &out.s);
            if (st != HB_OK) fail(st);
            json j = json::parse(out.s);
            emit(ctx, {{"n", n_arg}, {"d", d_arg}, {"depth", depth}}, j);
            return 0;
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
