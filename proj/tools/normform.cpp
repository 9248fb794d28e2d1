// Command-line front end: sieving with cache, exponential-sum tables,
// spectrum grid scans, arc experiments, Vaughan and residue checks,
// variation reports. All outputs are machine readable (CSV or JSON).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "normform/averages.hpp"
#include "normform/ideals.hpp"
#include "normform/spectrum.hpp"
#include "normform/varops.hpp"

using namespace normform;
using nlohmann::json;

namespace {

struct Output {
    std::string path = "-";
    std::string format = "csv";
    std::ostringstream buffer;

    void flush() {
        if (path == "-") {
            std::cout << buffer.str();
            std::cout.flush();
        } else {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            if (!out) throw invalid_input_error("cannot open output file: " + path);
            out << buffer.str();
        }
    }
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void emit_json(Output& out, const json& j) { out.buffer << j.dump(2) << "\n"; }

std::vector<i64> parse_int_list(const std::string& text, const char* what) {
    std::vector<i64> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            values.push_back(std::stoll(item));
        } catch (const std::exception&) {
            throw invalid_input_error(std::string("bad integer in ") + what + ": " + item);
        }
    }
    if (values.empty()) throw invalid_input_error(std::string("empty list for ") + what);
    return values;
}

std::string cache_dir_from(const std::string& flag_value) {
    if (const char* env = std::getenv("NORMFORM_CACHE")) return env;
    return flag_value.empty() ? "./cache" : flag_value;
}

IntPolynomial parse_poly(const std::string& text) {
    return IntPolynomial(parse_int_list(text, "--poly"));
}

// Signal spec entries look like "idx:re" or "idx:re:im".
std::function<cplx(i64)> parse_point_values(const std::string& text, const ToySystem& sys) {
    std::map<i64, cplx> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::stringstream part(item);
        std::string idx, re, im;
        std::getline(part, idx, ':');
        std::getline(part, re, ':');
        std::getline(part, im, ':');
        if (idx.empty() || re.empty()) throw invalid_input_error("bad --f entry: " + item);
        values[std::stoll(idx)] = cplx(std::stod(re), im.empty() ? 0.0 : std::stod(im));
    }
    bool cyclic = sys.kind == ToySystem::Kind::cyclic;
    i64 modulus = sys.modulus;
    return [values, cyclic, modulus](i64 x) {
        if (cyclic) x = ((x % modulus) + modulus) % modulus;
        auto it = values.find(x);
        return it == values.end() ? cplx(0.0) : it->second;
    };
}

int run_sieve(i64 n, u64 x, const std::string& cache_dir, Output& out) {
    SieveConfig cfg;
    cfg.cache_dir = cache_dir;
    auto sieve = build_sieve(n, x, cfg);
    if (out.format == "json") {
        json j{{"n", n}, {"x", x}, {"count", sieve.members.size()}, {"members", sieve.members}};
        emit_json(out, j);
    } else {
        out.buffer << "p\n";
        for (u64 p : sieve.members) out.buffer << p << "\n";
    }
    return 0;
}

int run_expsum(i64 n, const std::string& poly_text, i64 a, i64 q, i64 qmax, Output& out) {
    auto field = build_field(n);
    auto poly = parse_poly(poly_text);
    if (qmax > 0) {
        auto scan = decay_scan(field, poly, qmax);
        if (out.format == "json") {
            json rows = json::array();
            for (const auto& row : scan.rows)
                rows.push_back({{"q", row.q}, {"max_abs_S_over_q2", row.max_abs_over_q2}});
            emit_json(out, json{{"rows", rows}, {"fitted_slope", scan.fitted_slope}});
        } else {
            out.buffer << "q,max_abs_S_over_q2\n";
            for (const auto& row : scan.rows)
                out.buffer << row.q << "," << fmt_double(row.max_abs_over_q2) << "\n";
        }
        return 0;
    }
    auto frac = make_fraction(a, q);
    cplx s = weyl_sum(field, poly, frac);
    cplx c = coefficient(field, poly, frac);
    if (out.format == "json") {
        emit_json(out, json{{"a", frac.a},
                            {"q", frac.q},
                            {"re", s.real()},
                            {"im", s.imag()},
                            {"abs", std::abs(s)},
                            {"coefficient_re", c.real()},
                            {"coefficient_im", c.imag()}});
    } else {
        out.buffer << "a,q,re,im,abs\n";
        out.buffer << frac.a << "," << frac.q << "," << fmt_double(s.real()) << ","
                   << fmt_double(s.imag()) << "," << fmt_double(std::abs(s)) << "\n";
    }
    return 0;
}

int run_spectrum_scan(i64 n, const std::string& poly_text, u64 m, double B, u64 grid,
                      const std::string& kind, const std::string& cache_dir, Output& out) {
    auto field = build_field(n);
    auto poly = parse_poly(poly_text);
    SieveConfig cfg;
    cfg.cache_dir = cache_dir;
    auto sieve = build_sieve(n, std::max<u64>(m, 2), cfg);
    if (kind == "superr") {
        auto scan = sup_error_scan(sieve, field, poly, m, B, grid);
        if (out.format == "json") {
            emit_json(out, json{{"sup_err", scan.sup_err},
                                {"argmax_alpha", scan.argmax_alpha},
                                {"grid", grid}});
        } else {
            out.buffer << "alpha,err\n";
            for (u64 j = 0; j < grid; ++j)
                out.buffer << fmt_double(double(j) / double(grid)) << ","
                           << fmt_double(scan.errors[j]) << "\n";
        }
        return 0;
    }
    std::vector<cplx> values(grid);
    if (kind == "khat") {
        values = kernel_transform_grid(sieve, poly, m, grid);
    } else if (kind == "lhat" || kind == "lhatwide") {
        CoefficientCache cache(field, poly);
        for (u64 j = 0; j < grid; ++j) {
            double alpha = double(j) / double(grid);
            values[j] = kind == "lhat" ? approximant_transform(cache, m, B, alpha)
                                       : approximant_transform_wide(cache, m, alpha);
        }
    } else {
        throw invalid_input_error("spectrum-scan: unknown kind " + kind);
    }
    if (out.format == "json") {
        json rows = json::array();
        for (u64 j = 0; j < grid; ++j)
            rows.push_back({{"alpha", double(j) / double(grid)},
                            {"re", values[j].real()},
                            {"im", values[j].imag()}});
        emit_json(out, json{{"kind", kind}, {"m", m}, {"rows", rows}});
    } else {
        out.buffer << "alpha,re,im,abs\n";
        for (u64 j = 0; j < grid; ++j)
            out.buffer << fmt_double(double(j) / double(grid)) << "," << fmt_double(values[j].real())
                       << "," << fmt_double(values[j].imag()) << ","
                       << fmt_double(std::abs(values[j])) << "\n";
    }
    return 0;
}

int run_major_arc(i64 n, const std::string& poly_text, const std::string& xs_text, i64 a, i64 q,
                  double alpha, bool alpha_set, double B, const std::string& cache_dir,
                  Output& out) {
    auto field = build_field(n);
    auto poly = parse_poly(poly_text);
    auto frac = make_fraction(a, q);
    if (!alpha_set) alpha = frac.value();
    auto xs = parse_int_list(xs_text, "--xs");
    u64 xmax = 2;
    for (i64 x : xs) xmax = std::max<u64>(xmax, u64(x));
    SieveConfig cfg;
    cfg.cache_dir = cache_dir;
    auto sieve = build_sieve(n, xmax, cfg);
    json jrows = json::array();
    out.buffer << "x,alpha,a,q,lhs_re,lhs_im,main_re,main_im,residual_over_x\n";
    for (i64 x : xs) {
        auto res = major_arc_residual(sieve, field, poly, u64(x), frac, alpha, B);
        if (out.format == "json") {
            jrows.push_back({{"x", x},
                             {"alpha", alpha},
                             {"residual_over_x", res.residual_over_x}});
        } else {
            out.buffer << x << "," << fmt_double(alpha) << "," << frac.a << "," << frac.q << ","
                       << fmt_double(res.lhs.real()) << "," << fmt_double(res.lhs.imag()) << ","
                       << fmt_double(res.main.real()) << "," << fmt_double(res.main.imag()) << ","
                       << fmt_double(res.residual_over_x) << "\n";
        }
    }
    if (out.format == "json") {
        out.buffer.str("");
        emit_json(out, json{{"rows", jrows}});
    }
    return 0;
}

int run_minor_arc(i64 n, const std::string& poly_text, const std::vector<double>& alphas,
                  const std::string& xs_text, double B, const std::string& cache_dir, Output& out) {
    auto poly = parse_poly(poly_text);
    auto xs_list = parse_int_list(xs_text, "--xs");
    std::vector<u64> xs(xs_list.begin(), xs_list.end());
    u64 xmax = 2;
    for (u64 x : xs) xmax = std::max(xmax, x);
    SieveConfig cfg;
    cfg.cache_dir = cache_dir;
    auto sieve = build_sieve(n, xmax, cfg);
    auto rows = minor_arc_scan(sieve, poly, alphas, xs, B);
    if (out.format == "json") {
        json jrows = json::array();
        for (const auto& r : rows)
            jrows.push_back(
                {{"alpha", r.alpha}, {"x", r.x}, {"value", r.value}, {"major", r.major}});
        emit_json(out, json{{"rows", jrows}});
    } else {
        out.buffer << "alpha,x,value,major\n";
        for (const auto& r : rows)
            out.buffer << fmt_double(r.alpha) << "," << r.x << "," << fmt_double(r.value) << ","
                       << (r.major ? 1 : 0) << "\n";
    }
    return 0;
}

int run_vaughan(i64 n, u64 U, u64 V, u64 norm_max, Output& out) {
    auto field = build_field(n);
    auto ideals = enumerate_ideals(field, norm_max);
    double max_residual = 0;
    json jrows = json::array();
    out.buffer << "norm,s1,s2,s3,lambda,residual\n";
    for (const auto& ideal : ideals) {
        if (ideal.norm <= U) continue;
        auto check = vaughan_check(field, ideal, U, V);
        max_residual = std::max(max_residual, std::abs(check.residual));
        if (out.format == "json") continue;
        out.buffer << ideal.norm << "," << fmt_double(check.s1) << "," << fmt_double(check.s2)
                   << "," << fmt_double(check.s3) << "," << fmt_double(check.lambda) << ","
                   << fmt_double(check.residual) << "\n";
    }
    if (out.format == "json") {
        out.buffer.str("");
        emit_json(out, json{{"n", n},
                            {"U", U},
                            {"V", V},
                            {"norm_max", norm_max},
                            {"max_abs_residual", max_residual}});
    }
    return 0;
}

int run_residue(i64 n, i64 p, i64 b, i64 Q, u64 x, const std::string& cache_dir, Output& out) {
    if (Q > 0) {
        SieveConfig cfg;
        cfg.cache_dir = cache_dir;
        auto sieve = build_sieve(n, x, cfg);
        double density = pn_residue_density(sieve, Q, b, x);
        double reference = 1.0 / double(euler_phi(u64(Q)));
        if (out.format == "json") {
            emit_json(out, json{{"n", n},
                                {"Q", Q},
                                {"b", b},
                                {"x", x},
                                {"density", density},
                                {"reference", reference}});
        } else {
            out.buffer << "n,Q,b,x,density,reference\n";
            out.buffer << n << "," << Q << "," << b << "," << x << "," << fmt_double(density) << ","
                       << fmt_double(reference) << "\n";
        }
        return 0;
    }
    u64 count = residue_form_count(n, p, b);
    if (out.format == "json") {
        emit_json(out, json{{"n", n}, {"p", p}, {"b", b}, {"count", count}});
    } else {
        out.buffer << "n,p,b,count\n";
        out.buffer << n << "," << p << "," << b << "," << count << "\n";
    }
    return 0;
}

int run_avg(i64 n, const std::string& poly_text, const std::string& system, i64 N, i64 c, i64 x0,
            const std::string& scales_text, const std::string& f_text,
            const std::string& weighting, const std::string& cache_dir, Output& out) {
    auto poly = parse_poly(poly_text);
    ToySystem sys = system == "cyclic" ? ToySystem::cyclic(N, c) : ToySystem::shift();
    auto f = parse_point_values(f_text, sys);
    auto scales_list = parse_int_list(scales_text, "--scales");
    std::vector<u64> scales(scales_list.begin(), scales_list.end());
    SieveConfig cfg;
    cfg.cache_dir = cache_dir;
    auto sieve = build_sieve(n, scales.back(), cfg);
    auto seq = avg_sequence(sieve, poly, sys, f, x0, scales);
    const auto& values = weighting == "unweighted" ? seq.unweighted : seq.weighted;
    if (out.format == "json") {
        json rows = json::array();
        for (std::size_t i = 0; i < scales.size(); ++i)
            rows.push_back({{"m", scales[i]}, {"re", values[i].real()}, {"im", values[i].imag()}});
        emit_json(out, json{{"weighting", weighting}, {"rows", rows}});
    } else {
        out.buffer << "m,re,im\n";
        for (std::size_t i = 0; i < scales.size(); ++i)
            out.buffer << scales[i] << "," << fmt_double(values[i].real()) << ","
                       << fmt_double(values[i].imag()) << "\n";
    }
    return 0;
}

int run_varcheck(u64 seed, u64 count, u64 len_max, Output& out) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> len_dist(2, std::max<u64>(4, len_max));
    std::map<std::string, InequalityResult> merged;
    auto absorb = [&](const InequalityReport& report) {
        for (const auto& res : report.results) {
            auto& slot = merged[res.name];
            slot.name = res.name;
            slot.checked += res.checked;
            slot.violations += res.violations;
            slot.max_slack = std::max(slot.max_slack, res.max_slack);
        }
    };
    for (u64 trial = 0; trial < count; ++trial) {
        std::size_t L = len_dist(rng);
        if (trial % 7 == 0) L = std::size_t(1) << (2 + trial % 5); // dyadic lengths
        FiniteSeq seq(L), other(L);
        for (auto& z : seq) z = cplx(gauss(rng), gauss(rng));
        for (auto& z : other) z = cplx(gauss(rng), gauss(rng));
        absorb(inequality_suite(seq, other, {}));

        std::vector<std::size_t> blocks{1};
        std::uniform_int_distribution<std::size_t> gap(1, 7);
        while (true) {
            std::size_t g = gap(rng);
            if (blocks.back() + g > L) break;
            blocks.push_back(blocks.back() + g);
        }
        std::vector<std::size_t> anchors{1};
        while (anchors.back() * 2 <= L) anchors.push_back(anchors.back() * 2);
        absorb(long_short_split(seq, blocks, 3.0, 0.5, anchors).inequalities);

        if (L >= 2) {
            std::vector<double> w(L, 1.0), wp(L);
            for (std::size_t i = 0; i < L; ++i) wp[i] = std::log(double(i + 2));
            absorb(weight_transfer(w, wp, seq).checks);
        }
    }
    u64 violations_total = 0;
    json rows = json::array();
    for (const auto& [name, res] : merged) {
        violations_total += res.violations;
        rows.push_back({{"name", name},
                        {"checked", res.checked},
                        {"violations", res.violations},
                        {"max_slack", res.max_slack}});
    }
    if (out.format == "csv") {
        out.buffer << "name,checked,violations,max_slack\n";
        for (const auto& [name, res] : merged)
            out.buffer << name << "," << res.checked << "," << res.violations << ","
                       << fmt_double(res.max_slack) << "\n";
    } else {
        emit_json(out, json{{"seed", seed},
                            {"count", count},
                            {"inequalities", rows},
                            {"violations_total", violations_total}});
    }
    return 0;
}

int run_iw(double rho, u64 N, u64 qcap, const std::string& kind, Output& out) {
    IWConfig cfg;
    cfg.rho = rho;
    cfg.N = N;
    cfg.q_cap = qcap;
    if (kind == "base") {
        auto base = iw_base_set(cfg);
        if (out.format == "json") {
            emit_json(out, json{{"rho", rho}, {"N", N}, {"elements", base}});
        } else {
            out.buffer << "element\n";
            for (u64 v : base) out.buffer << v << "\n";
        }
        return 0;
    }
    if (kind != "freqs") throw invalid_input_error("iw: unknown kind " + kind);
    auto fracs = iw_frequencies(cfg);
    if (out.format == "json") {
        json rows = json::array();
        for (const auto& f : fracs)
            rows.push_back({{"a", f.a}, {"q", f.q}, {"height", iw_height(rho, f)}});
        emit_json(out, json{{"rho", rho}, {"N", N}, {"q_cap", qcap}, {"rows", rows}});
    } else {
        out.buffer << "a,q,height\n";
        for (const auto& f : fracs)
            out.buffer << f.a << "," << f.q << "," << iw_height(rho, f) << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"norm-form prime sieving, circle-method scans and variation reports"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand name

    std::string out_path = "-", format = "csv", cache_flag;
    app.add_option("--out", out_path, "output path or - for stdout");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--cache-dir", cache_flag, "sieve cache directory (default ./cache)");

    i64 n = 1;
    u64 x = 1000;
    std::string poly_text = "0,1";
    double B = 2.0;

    auto* sieve_cmd = app.add_subcommand("sieve", "list members of P_n up to x");
    sieve_cmd->add_option("--n", n)->required();
    sieve_cmd->add_option("--x", x)->required();

    i64 exp_a = 1, exp_q = 1, exp_qmax = 0;
    auto* expsum_cmd = app.add_subcommand("expsum", "complete exponential sums S(a,q)");
    expsum_cmd->add_option("--n", n)->required();
    expsum_cmd->add_option("--poly", poly_text);
    expsum_cmd->add_option("--a", exp_a);
    expsum_cmd->add_option("--q", exp_q);
    expsum_cmd->add_option("--qmax", exp_qmax, "emit the decay table for q <= qmax");

    u64 scan_m = 1 << 14, scan_grid = 4096;
    std::string scan_kind = "khat";
    auto* scan_cmd = app.add_subcommand("spectrum-scan", "kernel/approximant grid scans");
    scan_cmd->add_option("--n", n)->required();
    scan_cmd->add_option("--poly", poly_text);
    scan_cmd->add_option("--m", scan_m)->required();
    scan_cmd->add_option("--B", B);
    scan_cmd->add_option("--grid", scan_grid);
    scan_cmd->add_option("--kind", scan_kind)
        ->check(CLI::IsMember({"khat", "lhat", "lhatwide", "superr"}));

    std::string xs_text = "1000000";
    i64 arc_a = 1, arc_q = 2;
    double arc_alpha = 0.0;
    auto* major_cmd = app.add_subcommand("major-arc", "main-term residuals at a fraction");
    major_cmd->add_option("--n", n)->required();
    major_cmd->add_option("--poly", poly_text);
    major_cmd->add_option("--xs", xs_text, "comma list of scales");
    major_cmd->add_option("--a", arc_a)->required();
    major_cmd->add_option("--q", arc_q)->required();
    auto* alpha_opt = major_cmd->add_option("--alpha", arc_alpha, "frequency (default a/q)");
    major_cmd->add_option("--B", B);

    std::vector<double> minor_alphas;
    auto* minor_cmd = app.add_subcommand("minor-arc", "normalized prime-power sums at frequencies");
    minor_cmd->add_option("--n", n)->required();
    minor_cmd->add_option("--poly", poly_text);
    minor_cmd->add_option("--alpha", minor_alphas, "frequencies (repeatable)")->required();
    minor_cmd->add_option("--xs", xs_text, "comma list of scales");
    minor_cmd->add_option("--B", B);

    u64 vU = 12, vV = 12, v_norm_max = 3000;
    auto* vaughan_cmd = app.add_subcommand("vaughan", "three-sum identity residuals over ideals");
    vaughan_cmd->add_option("--n", n)->required();
    vaughan_cmd->add_option("--U", vU);
    vaughan_cmd->add_option("--V", vV);
    vaughan_cmd->add_option("--norm-max", v_norm_max);

    i64 res_p = 5, res_b = 1, res_Q = 0;
    u64 res_x = 1'000'000;
    auto* residue_cmd = app.add_subcommand("residue", "residue counts and member densities");
    residue_cmd->add_option("--n", n)->required();
    residue_cmd->add_option("--p", res_p);
    residue_cmd->add_option("--b", res_b);
    residue_cmd->add_option("--Q", res_Q, "density mode: modulus Q");
    residue_cmd->add_option("--x", res_x);

    std::string avg_system = "cyclic", avg_scales = "8,20", avg_f = "0:1",
                avg_weighting = "log";
    i64 avg_N = 8, avg_c = 1, avg_x0 = 0;
    auto* avg_cmd = app.add_subcommand("avg", "ergodic averages on toy systems");
    avg_cmd->add_option("--n", n)->required();
    avg_cmd->add_option("--poly", poly_text);
    avg_cmd->add_option("--system", avg_system)->check(CLI::IsMember({"shift", "cyclic"}));
    avg_cmd->add_option("--N", avg_N);
    avg_cmd->add_option("--c", avg_c);
    avg_cmd->add_option("--x0", avg_x0);
    avg_cmd->add_option("--scales", avg_scales);
    avg_cmd->add_option("--f", avg_f, "point masses idx:re[:im], comma separated");
    avg_cmd->add_option("--weighting", avg_weighting)
        ->check(CLI::IsMember({"log", "unweighted"}));

    u64 vc_seed = 0, vc_count = 1000, vc_len = 128;
    auto* varcheck_cmd = app.add_subcommand("varcheck", "randomized variation-layer verification");
    varcheck_cmd->add_option("--seed", vc_seed);
    varcheck_cmd->add_option("--count", vc_count);
    varcheck_cmd->add_option("--len-max", vc_len);

    double iw_rho = 0.5;
    u64 iw_N = 32, iw_qcap = 0;
    std::string iw_kind = "base";
    auto* iw_cmd = app.add_subcommand("iw", "Ionescu-Wainger frequency sets and heights");
    iw_cmd->add_option("--rho", iw_rho);
    iw_cmd->add_option("--N", iw_N);
    iw_cmd->add_option("--qcap", iw_qcap);
    iw_cmd->add_option("--kind", iw_kind)->check(CLI::IsMember({"base", "freqs"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    Output out;
    out.path = out_path;
    out.format = format;
    std::string cache_dir = cache_dir_from(cache_flag);

    try {
        int rc = 0;
        if (sieve_cmd->parsed()) rc = run_sieve(n, x, cache_dir, out);
        else if (expsum_cmd->parsed()) rc = run_expsum(n, poly_text, exp_a, exp_q, exp_qmax, out);
        else if (scan_cmd->parsed())
            rc = run_spectrum_scan(n, poly_text, scan_m, B, scan_grid, scan_kind, cache_dir, out);
        else if (major_cmd->parsed())
            rc = run_major_arc(n, poly_text, xs_text, arc_a, arc_q, arc_alpha,
                               alpha_opt->count() > 0, B, cache_dir, out);
        else if (minor_cmd->parsed())
            rc = run_minor_arc(n, poly_text, minor_alphas, xs_text, B, cache_dir, out);
        else if (vaughan_cmd->parsed()) rc = run_vaughan(n, vU, vV, v_norm_max, out);
        else if (residue_cmd->parsed())
            rc = run_residue(n, res_p, res_b, res_Q, res_x, cache_dir, out);
        else if (avg_cmd->parsed())
            rc = run_avg(n, poly_text, avg_system, avg_N, avg_c, avg_x0, avg_scales, avg_f,
                         avg_weighting == "log" ? "log" : "unweighted", cache_dir, out);
        else if (varcheck_cmd->parsed()) rc = run_varcheck(vc_seed, vc_count, vc_len, out);
        else if (iw_cmd->parsed()) rc = run_iw(iw_rho, iw_N, iw_qcap, iw_kind, out);
        out.flush();
        return rc;
    } catch (const resource_limit_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
