// Command-line front end for the paracalc engines.  Reports are JSON by
// default (insertion-ordered keys) or CSV with --format csv.  Exit codes:
// 0 success, 2 validation error, 3 when --strict is set and a symbolic
// verdict comes back Open.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "paracalc/grid.hpp"
#include "paracalc/norms.hpp"
#include "paracalc/paraproduct.hpp"
#include "paracalc/spaces.hpp"
#include "paracalc/witness.hpp"

using json = nlohmann::ordered_json;
using namespace paracalc;

namespace {

struct Options {
    std::string format = "json";
    bool strict = false;
    std::uint64_t seed = 0;
};

double parse_real(const std::string& tok) {
    if (tok == "inf" || tok == "Inf" || tok == "INF") return INFINITY;
    std::size_t pos = 0;
    double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw CLI::ValidationError("bad number: " + tok);
    return v;
}

std::vector<double> parse_reals(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(parse_real(tok));
    if (out.empty()) throw CLI::ValidationError("empty list");
    return out;
}

std::vector<int> parse_ints(const std::string& csv) {
    std::vector<int> out;
    for (double v : parse_reals(csv)) out.push_back(static_cast<int>(v));
    return out;
}

/** SCALE:s:p:q with `inf` for infinity, e.g. B:1:2:2 or F:0.5:2:inf. */
SpaceParam parse_space(const std::string& text, double mtot) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    if (parts.size() != 4 || (parts[0] != "B" && parts[0] != "F"))
        throw CLI::ValidationError("space parameter must be SCALE:s:p:q with SCALE in {B, F}: " +
                                   text);
    Scale sc = parts[0] == "B" ? Scale::B : Scale::F;
    try {
        return SpaceParam::make(sc, parse_real(parts[1]), parse_real(parts[2]),
                                parse_real(parts[3]), mtot);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(std::string(e.what()) + ": " + text);
    }
}

const char* status_name(Status st) {
    switch (st) {
        case Status::Bounded: return "Bounded";
        case Status::Unbounded: return "Unbounded";
        default: return "Open";
    }
}

json verdict_json(const Verdict& v) {
    return json{{"status", status_name(v.status)}, {"rules", v.rules}};
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
    }
}

int emit(const Options& opt, const json& report) {
    if (opt.format == "csv") {
        std::vector<std::pair<std::string, std::string>> rows;
        flatten(report, "", rows);
        std::cout << "key,value\n";
        for (const auto& [k, v] : rows) std::cout << k << "," << v << "\n";
    } else {
        std::cout << report.dump() << "\n";
    }
    if (opt.strict && report.contains("status") && report["status"] == "Open") return 3;
    return 0;
}

struct GridFlags {
    std::string weights = "1";
    std::string sizes;
    std::string periods;

    void attach(CLI::App* cmd) {
        cmd->add_option("--M", weights, "weight vector, comma separated (default 1)");
        cmd->add_option("--N", sizes, "grid points per axis, comma separated");
        cmd->add_option("--L", periods, "period per axis, comma separated (default 64pi)");
    }

    GridPtr build() const {
        std::vector<double> m = parse_reals(weights);
        if (sizes.empty() && periods.empty() && m.size() == 1 && m[0] == 1.0)
            return default_grid();
        std::vector<int> n = sizes.empty() ? std::vector<int>(m.size(), 4096) : parse_ints(sizes);
        std::vector<double> l = periods.empty()
                                    ? std::vector<double>(m.size(), 64.0 * std::numbers::pi)
                                    : parse_reals(periods);
        try {
            return make_grid(Weight::of(m), n, l);
        } catch (const std::invalid_argument& e) {
            throw CLI::ValidationError(e.what());
        }
    }
};

json grid_json(const TorusGrid& g) {
    json j;
    j["weights"] = g.weight().m;
    j["sizes"] = g.sizes();
    j["periods"] = g.periods();
    j["max_level"] = g.max_level();
    return j;
}

json run_modulus(const std::string& weights, const std::string& point) {
    Weight w = Weight::of(parse_reals(weights));
    Point x = parse_reals(point);
    json j;
    j["M"] = w.m;
    j["point"] = x;
    j["modulus"] = aniso_modulus(x, w);
    return j;
}

json run_partition(const GridFlags& gf, int J, bool alternative) {
    GridPtr g = gf.build();
    CutoffProfile prof = alternative ? CutoffProfile::alternative() : CutoffProfile::standard();
    BandSystem sys = g->bands(prof);
    if (J < 0) J = g->max_level();
    double defect = 0.0, plateau_err = 0.0;
    for (std::size_t k = 0; k < g->total(); ++k) {
        double m = g->modulus()[k];
        double sum = 0.0;
        for (int j = 0; j <= J; ++j) sum += sys.phi_r(j, m);
        defect = std::max(defect, std::fabs(sum - sys.psi_r(J, m)));
        if (m <= prof.a * std::exp2(J))
            plateau_err = std::max(plateau_err, std::fabs(sys.psi_r(J, m) - 1.0));
    }
    json j;
    j["grid"] = grid_json(*g);
    j["profile"] = alternative ? "alternative" : "standard";
    j["J"] = J;
    j["telescoping_defect"] = defect;
    j["plateau_error"] = plateau_err;
    return j;
}

json run_norm(const std::string& file, const std::string& scale, double s, double p, double q) {
    GridFunction u = read_alpg(file);
    BandSystem sys = u.grid->bands();
    double val = scale == "F" ? tl_norm(u, sys, s, p, q) : besov_norm(u, sys, s, p, q);
    json j;
    j["grid"] = grid_json(*u.grid);
    j["levels"] = u.grid->max_level() + 1;
    j["scale"] = scale;
    j["s"] = s;
    j["p"] = std::isinf(p) ? json("inf") : json(p);
    j["q"] = std::isinf(q) ? json("inf") : json(q);
    j["norm"] = val;
    return j;
}

GridFunction random_band_limited(const GridPtr& g, double radius, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    std::vector<cplx> spec(g->total(), cplx{0.0, 0.0});
    for (std::size_t k = 0; k < g->total(); ++k)
        if (g->modulus()[k] <= radius) spec[k] = {gauss(rng), gauss(rng)};
    return from_spectrum(g, spec);
}

json run_paraprod(const Options& opt, const GridFlags& gf, const std::string& file_u,
                  const std::string& file_v) {
    GridFunction u, v;
    GridPtr g;
    if (!file_u.empty() || !file_v.empty()) {
        if (file_u.empty() || file_v.empty())
            throw CLI::ValidationError("paraprod needs both --u and --v, or neither");
        u = read_alpg(file_u);
        v = read_alpg(file_v);
        g = u.grid;
    } else {
        g = gf.build();
        std::mt19937_64 rng(opt.seed);
        double radius = 0.6 * std::exp2(g->max_level());
        u = random_band_limited(g, radius, rng);
        v = random_band_limited(g, radius, rng);
    }
    BandSystem sys = g->bands();
    ParaproductResult r = decompose(u, v, sys);
    GridFunction sum = r.pi1 + r.pi2 + r.pi3;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < sum.v.size(); ++k) {
        num = std::max(num, std::abs(sum.v[k] - r.total.v[k]));
        den = std::max(den, std::abs(r.total.v[k]));
    }
    double leak = 0.0;
    for (const SupportRow& row : spectral_support_report(u, v, sys))
        leak = std::max(leak, std::max(row.low_high_leak, row.diagonal_leak));
    json j;
    j["grid"] = grid_json(*g);
    j["level"] = r.level;
    j["seed"] = opt.seed;
    j["decomposition_residual"] = den > 0.0 ? num / den : 0.0;
    j["max_window_leak"] = leak;
    return j;
}

WitnessSpec witness_flags(CLI::App* cmd, std::shared_ptr<WitnessSpec> spec) {
    cmd->add_option("--kind", spec->kind, "witness kind")->required();
    cmd->add_option("--k", spec->k, "member index");
    cmd->add_option("--l", spec->l, "family offset");
    cmd->add_option("--family-size", spec->N, "family size N");
    cmd->add_option("--t", spec->t, "family decay exponent");
    return *spec;
}

json run_witness(const GridFlags& gf, const WitnessSpec& spec, const std::string& out) {
    GridPtr g = gf.build();
    GridFunction u = make_witness(g, spec);
    json j;
    j["grid"] = grid_json(*g);
    j["kind"] = spec.kind;
    j["k"] = spec.k;
    j["family_size"] = spec.N;
    j["t"] = spec.t;
    j["sup"] = lp_norm(u, INFINITY);
    j["l2"] = lp_norm(u, 2.0);
    if (!out.empty()) {
        write_alpg(out, u);
        j["out"] = out;
    }
    return j;
}

json run_oracle_verify(const GridFlags& gf, const WitnessSpec& spec, const std::string& scale,
                       double s, double p, double q) {
    GridPtr g = gf.build();
    char sc = scale == "F" ? 'F' : 'B';
    GridFunction u = make_witness(g, spec);
    BandSystem sys = g->bands();
    double computed = sc == 'F' ? tl_norm(u, sys, s, p, q) : besov_norm(u, sys, s, p, q);
    double oracle = oracle_norm(g, spec, sc, s, p, q);
    json j;
    j["grid"] = grid_json(*g);
    j["witness"] = spec.kind;
    j["k"] = spec.k;
    j["scale"] = scale;
    j["s"] = s;
    j["p"] = std::isinf(p) ? json("inf") : json(p);
    j["q"] = std::isinf(q) ? json("inf") : json(q);
    j["computed"] = computed;
    j["oracle"] = oracle;
    j["ratio"] = computed / oracle;
    return j;
}

json run_receiving(const SpaceParam& a0, const SpaceParam& a1, const std::string& a2_text,
                   double mtot, bool iso) {
    ReceivingRegion r = receiving_region(a0, a1, iso);
    json j;
    j["s2_max"] = r.s2_max();
    j["h_star"] = r.h_star();
    j["h_cap"] = r.h_cap();
    j["diag"] = r.diag();
    j["q_min"] = std::isinf(r.q_min()) ? json("inf") : json(r.q_min());
    j["generic"] = r.generic();
    j["open_flags"] = r.open_flags();
    if (!a2_text.empty()) {
        std::vector<std::string> why;
        Member m = r.member(parse_space(a2_text, mtot), &why);
        j["member"] = m == Member::yes ? "yes" : (m == Member::no ? "no" : "open");
        j["why"] = why;
        if (m == Member::open) j["status"] = "Open";
    }
    return j;
}

json run_demo_divergence(int K) {
    // pairing values phi(0) H_k, phi(0) = 1; least-squares slope of v against ln k
    std::vector<double> h(static_cast<std::size_t>(K));
    double acc = 0.0;
    for (int k = 1; k <= K; ++k) {
        acc += 1.0 / static_cast<double>(k);
        h[static_cast<std::size_t>(k - 1)] = acc;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int n = 0;
    for (int k = 2; k <= K; ++k) {
        double x = std::log(static_cast<double>(k)), y = h[static_cast<std::size_t>(k - 1)];
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++n;
    }
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    json j;
    j["K"] = K;
    j["first_values"] = std::vector<double>(h.begin(), h.begin() + std::min<std::size_t>(8, h.size()));
    j["final_value"] = h.back();
    j["log_slope"] = slope;
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"anisotropic Littlewood-Paley / para-multiplication toolkit"};
    app.require_subcommand(1);

    Options opt;
    app.add_option("--format", opt.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_flag("--strict", opt.strict, "exit 3 when the verdict is Open");
    app.add_option("--seed", opt.seed, "seed for randomized sweeps (default 0)");

    double mtot = 1.0;
    bool iso = false;

    // modulus
    auto* c_mod = app.add_subcommand("modulus", "anisotropic modulus of a point");
    std::string mod_w = "1", mod_pt;
    c_mod->add_option("--M", mod_w, "weight vector");
    c_mod->add_option("--point", mod_pt, "point, comma separated")->required();

    // partition
    auto* c_part = app.add_subcommand("partition", "Littlewood-Paley partition diagnostics");
    auto part_gf = std::make_shared<GridFlags>();
    part_gf->attach(c_part);
    int part_J = -1;
    bool part_alt = false;
    c_part->add_option("--J", part_J, "truncation level (default grid max)");
    c_part->add_flag("--alternative", part_alt, "use the alternative cutoff profile");

    // norm
    auto* c_norm = app.add_subcommand("norm", "quasi-norm of an ALPG1 field");
    std::string norm_file, norm_scale = "B";
    double norm_s = 0.0, norm_p = 2.0, norm_q = 2.0;
    std::string norm_ptxt = "2", norm_qtxt = "2";
    c_norm->add_option("--file", norm_file, "ALPG1 input file")->required();
    c_norm->add_option("--scale", norm_scale, "B or F")->check(CLI::IsMember({"B", "F"}));
    c_norm->add_option("--s", norm_s, "smoothness index");
    c_norm->add_option("--p", norm_ptxt, "integral exponent (inf allowed)");
    c_norm->add_option("--q", norm_qtxt, "sum exponent (inf allowed)");

    // paraprod
    auto* c_pp = app.add_subcommand("paraprod", "para-product decomposition diagnostics");
    auto pp_gf = std::make_shared<GridFlags>();
    pp_gf->attach(c_pp);
    std::string pp_u, pp_v;
    c_pp->add_option("--u", pp_u, "ALPG1 first factor");
    c_pp->add_option("--v", pp_v, "ALPG1 second factor");

    // witness
    auto* c_wit = app.add_subcommand("witness", "build a witness function");
    auto wit_gf = std::make_shared<GridFlags>();
    wit_gf->attach(c_wit);
    auto wit_spec = std::make_shared<WitnessSpec>();
    witness_flags(c_wit, wit_spec);
    std::string wit_out;
    c_wit->add_option("--out", wit_out, "write samples to an ALPG1 file");

    // oracle-verify
    auto* c_ov = app.add_subcommand("oracle-verify", "computed norm against its closed form");
    auto ov_gf = std::make_shared<GridFlags>();
    ov_gf->attach(c_ov);
    auto ov_spec = std::make_shared<WitnessSpec>();
    c_ov->add_option("--witness", ov_spec->kind, "witness kind")->required();
    c_ov->add_option("--k", ov_spec->k, "member index");
    c_ov->add_option("--l", ov_spec->l, "family offset");
    c_ov->add_option("--family-size", ov_spec->N, "family size N");
    c_ov->add_option("--t", ov_spec->t, "family decay exponent");
    std::string ov_scale = "B";
    double ov_s = 0.0;
    std::string ov_ptxt = "2", ov_qtxt = "2";
    c_ov->add_option("--scale", ov_scale, "B or F")->check(CLI::IsMember({"B", "F"}));
    c_ov->add_option("--s", ov_s, "smoothness index");
    c_ov->add_option("--p", ov_ptxt, "integral exponent");
    c_ov->add_option("--q", ov_qtxt, "sum exponent");

    // check-mult
    auto* c_cm = app.add_subcommand("check-mult", "does the factor pair admit any receiver");
    std::string cm_a0, cm_a1;
    c_cm->add_option("--a0", cm_a0, "first factor, SCALE:s:p:q")->required();
    c_cm->add_option("--a1", cm_a1, "second factor, SCALE:s:p:q")->required();
    c_cm->add_option("--Mtot", mtot, "total weight |M| (default 1)");

    // receiving
    auto* c_rc = app.add_subcommand("receiving", "receiving-region geometry and membership");
    std::string rc_a0, rc_a1, rc_a2;
    c_rc->add_option("--a0", rc_a0, "first factor")->required();
    c_rc->add_option("--a1", rc_a1, "second factor")->required();
    c_rc->add_option("--a2", rc_a2, "candidate receiver");
    c_rc->add_option("--Mtot", mtot, "total weight |M|");
    c_rc->add_flag("--iso", iso, "isotropic weight");

    // embed
    auto* c_em = app.add_subcommand("embed", "full-space embedding");
    std::string em_a, em_b;
    c_em->add_option("--a", em_a, "source space")->required();
    c_em->add_option("--b", em_b, "target space, SCALE:s:p:q or Linf")->required();
    c_em->add_option("--Mtot", mtot, "total weight |M|");
    c_em->add_flag("--iso", iso, "isotropic weight");

    // domain-embed
    auto* c_de = app.add_subcommand("domain-embed", "embedding on a bounded domain");
    std::string de_a, de_b;
    c_de->add_option("--a", de_a, "source space")->required();
    c_de->add_option("--b", de_b, "target space")->required();
    c_de->add_option("--Mtot", mtot, "total weight |M|");
    c_de->add_flag("--iso", iso, "isotropic weight");

    // demo-divergence
    auto* c_dd = app.add_subcommand("demo-divergence", "harmonic pairing growth demo");
    int dd_K = 1024;
    c_dd->add_option("--K", dd_K, "number of terms")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_mod) return emit(opt, run_modulus(mod_w, mod_pt));
        if (*c_part) return emit(opt, run_partition(*part_gf, part_J, part_alt));
        if (*c_norm) {
            norm_p = parse_real(norm_ptxt);
            norm_q = parse_real(norm_qtxt);
            return emit(opt, run_norm(norm_file, norm_scale, norm_s, norm_p, norm_q));
        }
        if (*c_pp) return emit(opt, run_paraprod(opt, *pp_gf, pp_u, pp_v));
        if (*c_wit) return emit(opt, run_witness(*wit_gf, *wit_spec, wit_out));
        if (*c_ov)
            return emit(opt, run_oracle_verify(*ov_gf, *ov_spec, ov_scale, ov_s,
                                               parse_real(ov_ptxt), parse_real(ov_qtxt)));
        if (*c_cm)
            return emit(opt, verdict_json(domain_check(parse_space(cm_a0, mtot),
                                                       parse_space(cm_a1, mtot))));
        if (*c_rc)
            return emit(opt, run_receiving(parse_space(rc_a0, mtot), parse_space(rc_a1, mtot),
                                           rc_a2, mtot, iso));
        if (*c_em) {
            SpaceParam a = parse_space(em_a, mtot);
            Verdict v = em_b == "Linf" ? linf_embedding_check(a, iso)
                                       : embedding_check(a, parse_space(em_b, mtot), iso);
            return emit(opt, verdict_json(v));
        }
        if (*c_de)
            return emit(opt, verdict_json(bounded_domain_embedding_check(
                                 parse_space(de_a, mtot), parse_space(de_b, mtot), iso)));
        if (*c_dd) return emit(opt, run_demo_divergence(dd_K));
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NotBounded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
