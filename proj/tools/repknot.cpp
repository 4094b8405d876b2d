// Command-line front end: certificates for two-bridge and torus knot
// representation computations.
//
// Exit codes: 0 success; 1 reproduce-suite failure; 2 invalid arguments;
// 3 computation failed (no solution at the requested tolerances); 4 I/O error.
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "repknot/acceptance.hpp"
#include "repknot/pairing.hpp"
#include "repknot/tb_variety.hpp"
#include "repknot/torus_variety.hpp"
#include "repknot/words.hpp"

using json = nlohmann::json;
using namespace repknot;

namespace {

struct Options {
    bool emit_json = false;
    double tol_residual = 1e-8;
    int samples = 1024;
    int max_steps = 100000;
};

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json quat_json(const Quat& q) { return json::array({q.w, q.x, q.y, q.z}); }

json base_certificate(const std::string& command, const Options& opt) {
    json cert;
    cert["schema_version"] = 1;
    cert["command"] = command;
    cert["tolerances"] = {{"tol_residual", opt.tol_residual},
                          {"samples", opt.samples},
                          {"max_steps", opt.max_steps}};
    return cert;
}

void emit(const json& cert, const Options& opt) {
    if (opt.emit_json) {
        std::cout << cert.dump(2) << "\n";
        return;
    }
    // Human-readable flat dump of the outputs block.
    std::cout << cert["command"].get<std::string>() << "\n";
    for (auto& [key, val] : cert["outputs"].items())
        std::cout << "  " << key << ": " << val.dump() << "\n";
}

std::pair<long, long> parse_slope(const std::string& text) {
    long m = 0, n = 1;
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            m = std::stol(text);
        } else {
            m = std::stol(text.substr(0, slash));
            n = std::stol(text.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw CLI::ValidationError("slope must be m or m/n");
    }
    return {m, n};
}

const char* verdict_name(VerdictKind k) {
    switch (k) {
        case VerdictKind::IrreducibleSU2: return "IrreducibleSU2";
        case VerdictKind::NonabelianSO3Only: return "NonabelianSO3Only";
        case VerdictKind::AllSO3Abelian: return "AllSO3Abelian";
        case VerdictKind::MeridianExcluded: return "MeridianExcluded";
    }
    return "?";
}

json witness_json(const Witness& w) {
    return {{"qx", quat_json(w.qx)},
            {"qy", quat_json(w.qy)},
            {"arc", {w.arc.a, w.arc.b}},
            {"endpoints", {w.arc.c, w.arc.d}},
            {"psi", w.psi},
            {"theta", w.theta},
            {"alpha_error", w.alpha_error},
            {"commutator_dist", w.commutator_dist}};
}

// --- twobridge subcommands ---------------------------------------------

int cmd_tb_word(const TwoBridgeKnot& K, json& out) {
    GroupWord W = build_W(K);
    out["W"] = W.str();
    out["beta"] = beta(K).str();
    out["longitude"] = longitude(K).str();
    out["exponent_sum_W"] = W.exponent_sum();
    out["identity_inverted_generators"] =
        (W.invert_generators() == W.star().inverse());
    out["identity_star_inverted"] = (W.star().invert_generators() == W.inverse());
    return 0;
}

int cmd_tb_dihedral(const TwoBridgeKnot& K, const Options& opt, json& out) {
    auto pts = find_dihedral(K, std::max(opt.samples, 64));
    json list = json::array();
    for (const SlicePoint& s : pts)
        list.push_back({{"psi", s.psi}, {"residual", residual(K, s).norm()}});
    out["dihedral_points"] = list;
    out["count"] = pts.size();
    return 0;
}

ClosedLoop build_loop(const TwoBridgeKnot& K, const Options& opt) {
    TrackOptions topt;
    topt.max_steps = opt.max_steps;
    return build_gamma(K, topt);
}

int cmd_tb_loop(const TwoBridgeKnot& K, const Options& opt, const std::string& cmdline,
                json& out) {
    ClosedLoop gamma = build_loop(K, opt);
    RepLoop loop = peripheral_restriction(K, gamma);
    long e = build_W(K).exponent_sum();

    std::string csv_name = "tb_loop_" + fnv1a(cmdline) + ".csv";
    std::ofstream csv(csv_name);
    if (!csv) throw std::ios_base::failure("cannot open " + csv_name);
    csv << "index,t,phi,psi,theta_beta,residual\n";
    double max_res = 0;
    for (std::size_t i = 0; i < gamma.pts.size(); ++i) {
        double t = double(i) / double(gamma.pts.size() - 1);
        double theta_beta = loop.theta_lambda[i] + 2.0 * double(e) * loop.theta_mu[i];
        double res = residual(K, gamma.pts[i]).norm();
        max_res = std::max(max_res, res);
        csv << i << "," << t << "," << gamma.pts[i].phi << "," << gamma.pts[i].psi
            << "," << theta_beta << "," << res << "\n";
    }

    const SlicePoint& a = gamma.pts.front();
    const SlicePoint& b = gamma.pts.back();
    out["samples"] = gamma.pts.size();
    out["arc_samples"] = gamma.arc_samples;
    out["closure_error"] = std::hypot(a.phi - b.phi, a.psi - b.psi);
    out["max_residual"] = max_res;
    out["residual_ok"] = max_res < 1e-8;
    out["trace_csv"] = csv_name;
    return 0;
}

int cmd_tb_pair(const TwoBridgeKnot& K, const Options& opt, json& out) {
    ClosedLoop gamma = build_loop(K, opt);
    RepLoop loop = peripheral_restriction(K, gamma);
    long e = build_W(K).exponent_sum();

    WindingCertificate mu = nu(loop, {1, 0});
    WindingCertificate lam = nu(loop, {0, 1});
    KernelClass kc = kernel_classify(loop);
    out["nu_mu"] = mu.value;
    out["nu_lambda"] = lam.value;
    out["nu_beta"] = nu(loop, {2 * e, 1}).value;
    out["kernel"] = kc.full_kernel ? "FullKernel" : "MeridianOnly";
    out["kernel_c"] = kc.c;
    return 0;
}

int cmd_tb_fill(const TwoBridgeKnot& K, const Options& opt, long m, long n, json& out) {
    ClosedLoop gamma = build_loop(K, opt);
    RepLoop loop = peripheral_restriction(K, gamma);
    FilledRep f = dehn_fill_solve(loop, {m, n});
    out["slope"] = std::to_string(m) + "/" + std::to_string(n);
    out["t"] = f.t;
    out["qx"] = quat_json(f.qx);
    out["qy"] = quat_json(f.qy);
    out["alpha_error"] = f.alpha_error;
    out["commutator_dist"] = f.commutator_dist;
    out["alpha_ok"] = f.alpha_error < opt.tol_residual;
    return 0;
}

// --- torus subcommands -------------------------------------------------

int cmd_torus_arcs(const TorusKnot& T, json& out) {
    json list = json::array();
    for (const ArcDescriptor& arc : enumerate_arcs(T))
        list.push_back({{"a", arc.a}, {"b", arc.b}, {"c", arc.c}, {"d", arc.d}});
    out["arcs"] = list;
    out["count"] = list.size();
    return 0;
}

int cmd_torus_loop(const TorusKnot& T, const Options& opt, int a, int b,
                   const std::string& cmdline, json& out) {
    ArcDescriptor arc;
    bool found = false;
    for (const ArcDescriptor& cand : enumerate_arcs(T))
        if (cand.a == a && cand.b == b) {
            arc = cand;
            found = true;
        }
    if (!found) throw InvalidInput("no arc with that (a, b) label");

    RepLoop loop = build_zeta_loop(T, arc, std::max(opt.samples, 64));
    long pq = long(T.p) * T.q;
    out["arc"] = {arc.a, arc.b};
    out["endpoints"] = {arc.c, arc.d};
    out["nu_zeta"] = nu(loop, {pq, 1}).value;
    out["nu_mu"] = nu(loop, {1, 0}).value;
    out["expected_nu_zeta"] = (arc.d - arc.c) / 2;

    std::string csv_name = "torus_loop_" + fnv1a(cmdline) + ".csv";
    std::ofstream csv(csv_name);
    if (!csv) throw std::ios_base::failure("cannot open " + csv_name);
    csv << "index,t,theta_mu,theta_lambda\n";
    for (std::size_t i = 0; i < loop.samples(); ++i)
        csv << i << "," << double(i) / double(loop.samples() - 1) << ","
            << loop.theta_mu[i] << "," << loop.theta_lambda[i] << "\n";
    out["trace_csv"] = csv_name;
    return 0;
}

int cmd_torus_classify(const TorusKnot& T, long m, long n, json& out) {
    TorusSlope slope = TorusSlope::make(T, m, n);
    SurgeryVerdict v = classify_surgery(T, slope);
    out["slope"] = std::to_string(slope.m) + "/" + std::to_string(slope.n);
    out["g"] = slope.g;
    out["h"] = slope.h;
    out["case"] = v.case_number;
    out["verdict"] = verdict_name(v.kind);
    if (v.witness) out["witness"] = witness_json(*v.witness);
    return 0;
}

int cmd_torus_witness(const TorusKnot& T, long m, long n, json& out) {
    TorusSlope slope = TorusSlope::make(T, m, n);
    Witness w = construct_witness(T, slope);
    out["slope"] = std::to_string(slope.m) + "/" + std::to_string(slope.n);
    out["g"] = slope.g;
    out["h"] = slope.h;
    out["witness"] = witness_json(w);
    return 0;
}

// --- reproduce ---------------------------------------------------------

int cmd_reproduce(const Options& opt, json& out) {
    auto results = acceptance::run_all();
    bool all = true;
    json list = json::array();
    for (const auto& r : results) {
        list.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"detail", r.detail}});
        all = all && r.pass;
        if (!opt.emit_json)
            std::printf("[%s] %d %-20s%s%s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.detail.empty() ? "" : " : ",
                        r.detail.c_str());
    }
    out["criteria"] = list;
    out["all_pass"] = all;
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{
        "SU(2) representation certificates for two-bridge and torus knot groups.\n"
        "Exit codes: 0 success, 1 reproduce-suite failure, 2 invalid arguments,\n"
        "3 computation failed, 4 I/O error."};
    app.require_subcommand(1);
    app.add_flag("--json", opt.emit_json, "emit a JSON certificate on stdout");
    app.add_option("--tol-residual", opt.tol_residual, "residual tolerance")
        ->capture_default_str();
    app.add_option("--samples", opt.samples, "scan/loop sample count")
        ->capture_default_str();
    app.add_option("--max-steps", opt.max_steps, "tracker step limit")
        ->capture_default_str();

    int tb_n = 0, tb_k = 0;
    std::string tb_sub, tb_slope;
    auto* tb = app.add_subcommand("twobridge", "two-bridge knot b(2n+1, k)");
    tb->fallthrough();
    tb->add_option("n", tb_n, "half relator length")->required();
    tb->add_option("k", tb_k, "odd parameter coprime to 2n+1")->required();
    tb->add_option("action", tb_sub, "word | dihedral | loop | pair | fill")
        ->required()
        ->check(CLI::IsMember({"word", "dihedral", "loop", "pair", "fill"}));
    tb->add_option("slope", tb_slope, "m/n (fill only)");

    int to_p = 0, to_q = 0, to_a = 0, to_b = 0;
    std::string to_sub, to_slope;
    auto* to = app.add_subcommand("torus", "(p,q) torus knot");
    to->fallthrough();
    to->add_option("p", to_p, "p")->required();
    to->add_option("q", to_q, "q")->required();
    to->add_option("action", to_sub, "arcs | loop | classify | witness")
        ->required()
        ->check(CLI::IsMember({"arcs", "loop", "classify", "witness"}));
    to->add_option("arg1", to_slope, "m/n for classify/witness; a for loop");
    to->add_option("arg2", to_b, "b for loop");

    auto* rep = app.add_subcommand("reproduce", "run the full verification suite");
    rep->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    std::string cmdline;
    for (int i = 1; i < argc; ++i) {
        if (i > 1) cmdline += " ";
        cmdline += argv[i];
    }

    auto t0 = std::chrono::steady_clock::now();
    json cert = base_certificate(cmdline, opt);
    json& out = cert["outputs"] = json::object();
    int rc = 0;
    try {
        if (tb->parsed()) {
            TwoBridgeKnot K(tb_n, tb_k);
            cert["inputs"] = {{"n", tb_n}, {"k", tb_k}, {"action", tb_sub}};
            if (tb_sub == "word") {
                rc = cmd_tb_word(K, out);
            } else if (tb_sub == "dihedral") {
                rc = cmd_tb_dihedral(K, opt, out);
            } else if (tb_sub == "loop") {
                rc = cmd_tb_loop(K, opt, cmdline, out);
            } else if (tb_sub == "pair") {
                rc = cmd_tb_pair(K, opt, out);
            } else {
                if (tb_slope.empty())
                    throw CLI::ValidationError("fill needs a slope m/n");
                auto [m, n] = parse_slope(tb_slope);
                rc = cmd_tb_fill(K, opt, m, n, out);
            }
        } else if (to->parsed()) {
            TorusKnot T(to_p, to_q);
            cert["inputs"] = {{"p", to_p}, {"q", to_q}, {"action", to_sub}};
            if (to_sub == "arcs") {
                rc = cmd_torus_arcs(T, out);
            } else if (to_sub == "loop") {
                if (to_slope.empty())
                    throw CLI::ValidationError("loop needs the arc label: a b");
                to_a = std::stoi(to_slope);
                rc = cmd_torus_loop(T, opt, to_a, to_b, cmdline, out);
            } else {
                if (to_slope.empty())
                    throw CLI::ValidationError(to_sub + " needs a slope m/n");
                auto [m, n] = parse_slope(to_slope);
                rc = to_sub == "classify" ? cmd_torus_classify(T, m, n, out)
                                          : cmd_torus_witness(T, m, n, out);
            }
        } else if (rep->parsed()) {
            rc = cmd_reproduce(opt, out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "computation failed: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }

    emit(cert, opt);
    // Timing goes to stderr so certificates stay byte-identical across runs.
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::fprintf(stderr, "wall_clock_s %.3f\n", secs);
    return rc;
}
