#include "repknot/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "repknot/pairing.hpp"
#include "repknot/quat.hpp"
#include "repknot/tb_variety.hpp"
#include "repknot/torus_variety.hpp"
#include "repknot/words.hpp"

namespace repknot::acceptance {

namespace {

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (detail.tellp() > 0) detail << "; ";
            detail << what;
        }
    }
};

std::vector<TwoBridgeKnot> all_twobridge_upto(int max_det) {
    std::vector<TwoBridgeKnot> out;
    for (int n = 1; 2 * n + 1 <= max_det; ++n)
        for (int k = 1; k < 2 * n + 1; k += 2)
            if (std::gcd(k, 2 * n + 1) == 1) out.push_back(TwoBridgeKnot(n, k));
    return out;
}

std::vector<TorusKnot> all_torus_upto(int max_q) {
    std::vector<TorusKnot> out;
    for (int p = 2; p <= max_q; ++p)
        for (int q = p + 1; q <= max_q; ++q)
            if (std::gcd(p, q) == 1) out.push_back(TorusKnot(p, q));
    return out;
}

double wrap_to_pi(double a) {
    double r = std::fmod(a + M_PI, 2 * M_PI);
    if (r < 0) r += 2 * M_PI;
    return r - M_PI;
}

// --- criterion bodies -----------------------------------------------------

void c1_word_identities(Check& c) {
    for (const TwoBridgeKnot& K : all_twobridge_upto(15)) {
        GroupWord W = build_W(K);
        const auto& L = W.letters();
        // exponent symmetry e(2n+1-i) = e(i)
        for (std::size_t i = 1; i <= L.size(); ++i) {
            if (L[i - 1].exp != L[L.size() - i].exp) {
                std::ostringstream os;
                os << "epsilon symmetry fails for b(" << K.determinant() << "," << K.k << ")";
                c.require(false, os.str());
                break;
            }
        }
        c.require(W.invert_generators() == W.star().inverse(),
                  "W(x^-1,y^-1) != W(y,x)^-1 for b(" + std::to_string(K.determinant()) +
                      "," + std::to_string(K.k) + ")");
        c.require(W.star().invert_generators() == W.inverse(),
                  "W*(x^-1,y^-1) != W^-1 for b(" + std::to_string(K.determinant()) + "," +
                      std::to_string(K.k) + ")");
    }
}

void c2_torus_arcs(Check& c) {
    for (const TorusKnot& T : all_torus_upto(9)) {
        auto arcs = enumerate_arcs(T);
        long expected = long(T.p - 1) * (T.q - 1) / 2;
        c.require(long(arcs.size()) == expected,
                  "arc count mismatch for (" + std::to_string(T.p) + "," +
                      std::to_string(T.q) + ")");
        long pq = long(T.p) * T.q;
        for (const ArcDescriptor& arc : arcs) {
            // Independent brute-force residue scan.
            std::vector<long> brute;
            for (long s = 1; s <= pq - 1; ++s) {
                long rp = s % (2 * T.p), rq = s % (2 * T.q);
                bool okp = rp == arc.a % (2 * T.p) || rp == (2 * T.p - arc.a) % (2 * T.p);
                bool okq = rq == arc.b % (2 * T.q) || rq == (2 * T.q - arc.b) % (2 * T.q);
                if (okp && okq) brute.push_back(s);
            }
            bool match = brute.size() == 2 && brute[0] == arc.c && brute[1] == arc.d;
            if (!match) {
                std::ostringstream os;
                os << "CRT endpoints differ from brute force for (" << T.p << "," << T.q
                   << ") arc (" << arc.a << "," << arc.b << ")";
                c.require(false, os.str());
            }
        }
    }
}

void c3_zeta_winding(Check& c) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        TorusKnot T(p, q);
        long pq = long(p) * q;
        for (const ArcDescriptor& arc : enumerate_arcs(T)) {
            RepLoop loop = build_zeta_loop(T, arc);
            long nz = nu(loop, {pq, 1}).value;
            long nm = nu(loop, {1, 0}).value;
            std::ostringstream tag;
            tag << "(" << p << "," << q << ") arc (" << arc.a << "," << arc.b << ")";
            c.require(nz == (arc.d - arc.c) / 2, "nu(zeta) != (d-c)/2 on " + tag.str());
            c.require(nm == 0, "nu(mu) != 0 on " + tag.str());
        }
    }
}

void c4_surgery_classifier(Check& c) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
        TorusKnot T(p, q);
        long pq = long(p) * q;
        for (long n = 1; n <= 5; ++n) {
            for (long m = -40; m <= 40; ++m) {
                if (std::gcd(std::abs(m), n) != 1) continue;
                TorusSlope slope = TorusSlope::make(T, m, n);
                SurgeryVerdict v = classify_surgery(T, slope);
                std::ostringstream tag;
                tag << "(" << p << "," << q << ") slope " << m << "/" << n;
                long g = m - pq * n;
                int expected = (g == 0) ? (p > 2 ? 1 : 2) : (std::abs(g) == 1 ? 3 : 4);
                c.require(v.case_number == expected, "case mismatch at " + tag.str());
                if (v.case_number == 1 || v.case_number == 4) {
                    c.require(v.kind == VerdictKind::IrreducibleSU2,
                              "kind mismatch at " + tag.str());
                    c.require(v.witness && v.witness->alpha_error < 1e-9,
                              "|rho(alpha)-1| >= 1e-9 at " + tag.str());
                    c.require(v.witness && v.witness->commutator_dist > 0.1,
                              "witness not irreducible at " + tag.str());
                } else if (v.case_number == 2) {
                    c.require(v.kind == VerdictKind::NonabelianSO3Only,
                              "kind mismatch at " + tag.str());
                    c.require(v.witness && v.witness->alpha_error < 1e-9,
                              "|rho(alpha)+1| >= 1e-9 at " + tag.str());
                    c.require(v.witness && v.witness->commutator_dist > 0.1,
                              "witness abelian at " + tag.str());
                } else {
                    c.require(v.kind == VerdictKind::AllSO3Abelian && !v.witness,
                              "case-3 verdict carries a witness at " + tag.str());
                }
            }
        }
    }
}

void c5_dihedral_counts(Check& c) {
    struct Row {
        int n, k;
        std::size_t count;
    };
    for (Row r : {Row{1, 1, 1}, Row{2, 3, 2}, Row{3, 3, 3}, Row{3, 5, 3}}) {
        TwoBridgeKnot K(r.n, r.k);
        auto pts = find_dihedral(K);
        std::ostringstream tag;
        tag << "b(" << K.determinant() << "," << K.k << ")";
        c.require(pts.size() == r.count, "dihedral count mismatch for " + tag.str());
        for (const SlicePoint& s : pts)
            c.require(residual(K, s).norm() < 1e-10,
                      "dihedral residual >= 1e-10 for " + tag.str());
    }
}

void c6_gamma_loops(Check& c) {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 5}}) {
        TwoBridgeKnot K(n, k);
        std::ostringstream tag;
        tag << "b(" << K.determinant() << "," << K.k << ")";
        ClosedLoop gamma = build_gamma(K);
        RepLoop loop = peripheral_restriction(K, gamma);
        long e = build_W(K).exponent_sum();
        long nb = nu(loop, {2 * e, 1}).value;  // beta = 2e*mu + lambda
        long nm = nu(loop, {1, 0}).value;
        c.require(nb != 0, "nu(beta) = 0 for " + tag.str());
        c.require(nb % 2 == 0 && std::abs(nb / 2) % 2 == 1,
                  "nu(beta)/2 not odd for " + tag.str());
        c.require(nm == 0, "nu(mu) != 0 for " + tag.str());
        KernelClass kc = kernel_classify(loop);
        c.require(!kc.full_kernel && kc.c != 0, "kernel not MeridianOnly for " + tag.str());
    }
}

void c7_rhombus(Check& c) {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{2, 3}, {3, 3}, {3, 5}}) {
        TwoBridgeKnot K(n, k);
        GroupWord betaw = beta(K);
        std::ostringstream tag;
        tag << "b(" << K.determinant() << "," << K.k << ")";
        ClosedLoop gamma = build_gamma(K);
        RhombusData prev{};
        bool have_prev = false;
        for (std::size_t i = 1; i + 1 < gamma.arc_samples; i += 16) {
            const SlicePoint& s = gamma.pts[i];
            RhombusData r = rhombus(K, s, have_prev ? &prev : nullptr);
            prev = r;
            have_prev = true;
            auto d = [](const Vec3& u, const Vec3& v) {
                return std::acos(std::clamp(u.dot(v), -1.0, 1.0));
            };
            double ab = d(r.A, r.B), bc = d(r.B, r.C), cd = d(r.C, r.D), da = d(r.D, r.A);
            bool sides = std::abs(ab - bc) < 1e-6 && std::abs(bc - cd) < 1e-6 &&
                         std::abs(cd - da) < 1e-6;
            if (!sides) {
                c.require(false, "rhombus sides unequal on " + tag.str());
                break;
            }
            Quat qb = betaw.evaluate(slice_x(s), slice_y(s));
            double theta_b = circle_angle(qb, {1, 0, 0}, 1e-6);
            // Rotation angle of rho(beta) is twice its circle angle.
            if (std::abs(wrap_to_pi(2 * theta_b - 2 * r.theta)) >= 1e-6) {
                std::ostringstream os;
                os << "rotation angle of beta != 2*theta on " << tag.str() << " (delta="
                   << wrap_to_pi(2 * theta_b - 2 * r.theta) << ")";
                c.require(false, os.str());
                break;
            }
        }
    }
}

void c8_dehn_fill(Check& c) {
    TwoBridgeKnot K(2, 3);
    ClosedLoop gamma = build_gamma(K);
    RepLoop loop = peripheral_restriction(K, gamma);
    for (auto [m, n] : std::vector<std::pair<long, long>>{
             {1, 1}, {-1, 1}, {2, 1}, {3, 1}, {5, 2}}) {
        std::ostringstream tag;
        tag << "b(5,3) slope " << m << "/" << n;
        FilledRep f = dehn_fill_solve(loop, {m, n});
        c.require(f.alpha_error < 1e-8, "|rho(alpha)-1| >= 1e-8 at " + tag.str());
        c.require(f.commutator_dist > 0.1, "abelian image at " + tag.str());
    }

    TorusKnot T(2, 3);
    ArcDescriptor arc = enumerate_arcs(T).front();
    RepLoop zloop = build_zeta_loop(T, arc);
    FilledRep f = dehn_fill_solve(zloop, {4, 1});
    c.require(f.alpha_error < 1e-8, "|rho(alpha)-1| >= 1e-8 for torus 4/1");
    Witness w = construct_witness(T, TorusSlope::make(T, 4, 1));
    Quat muw_fill = torus_meridian(T).evaluate(f.qx, f.qy);
    Quat muw_wit = torus_meridian(T).evaluate(w.qx, w.qy);
    c.require(std::abs(trace_of(f.qx) - trace_of(w.qx)) < 1e-6 &&
                  std::abs(trace_of(f.qy) - trace_of(w.qy)) < 1e-6 &&
                  std::abs(trace_of(muw_fill) - trace_of(muw_wit)) < 1e-6,
              "torus 4/1 fill traces differ from construct_witness");
}

void c9_pairing_algebra(Check& c) {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> wind(-3, 3);
    std::uniform_int_distribution<long> coeff(-5, 5);
    std::uniform_real_distribution<double> amp(-0.3, 0.3);

    auto make_loop = [&](int samples) {
        long wm = wind(rng), wl = wind(rng);
        double a1 = amp(rng), a2 = amp(rng), b1 = amp(rng), b2 = amp(rng);
        auto mu_f = [=](double t) {
            return 2 * M_PI * wm * t + a1 * std::sin(2 * M_PI * t) +
                   a2 * std::sin(4 * M_PI * t);
        };
        auto la_f = [=](double t) {
            return 2 * M_PI * wl * t + b1 * std::sin(2 * M_PI * t) +
                   b2 * std::cos(2 * M_PI * t) - b2;
        };
        return std::make_pair(mu_f, la_f);
    };
    auto sample = [](auto f, int N) {
        std::vector<double> out(N);
        for (int i = 0; i < N; ++i) out[i] = f(double(i) / double(N - 1));
        return out;
    };

    for (int trial = 0; trial < 100; ++trial) {
        auto [mu_f, la_f] = make_loop(257);
        RepLoop loop;
        loop.theta_mu = sample(mu_f, 257);
        loop.theta_lambda = sample(la_f, 257);

        PeripheralElement a{coeff(rng), coeff(rng)};
        PeripheralElement b{coeff(rng), coeff(rng)};

        long na = nu(loop, a).value;
        long nb = nu(loop, b).value;
        long nab = nu(loop, a + b).value;
        c.require(nab == na + nb, "bilinearity fails");

        // Concatenation with itself doubles every value.
        RepLoop twice;
        auto dup = [](const std::vector<double>& v) {
            std::vector<double> out = v;
            double off = v.back() - v.front();
            for (std::size_t i = 1; i < v.size(); ++i) out.push_back(v[i] + off);
            return out;
        };
        twice.theta_mu = dup(loop.theta_mu);
        twice.theta_lambda = dup(loop.theta_lambda);
        c.require(nu(twice, a).value == 2 * na, "concatenation additivity fails");

        // Orientation reversal negates.
        RepLoop rev;
        rev.theta_mu = {loop.theta_mu.rbegin(), loop.theta_mu.rend()};
        rev.theta_lambda = {loop.theta_lambda.rbegin(), loop.theta_lambda.rend()};
        c.require(nu(rev, a).value == -na, "orientation antisymmetry fails");

        // Refinement stability.
        RepLoop fine;
        fine.theta_mu = sample(mu_f, 513);
        fine.theta_lambda = sample(la_f, 513);
        c.require(nu(fine, a).value == na, "refinement stability fails");
    }
}

}  // namespace

CriterionResult run_criterion(int id) {
    static const std::vector<std::pair<std::string, std::function<void(Check&)>>> table = {
        {"word-identities", c1_word_identities},
        {"torus-arcs", c2_torus_arcs},
        {"zeta-winding", c3_zeta_winding},
        {"surgery-classifier", c4_surgery_classifier},
        {"dihedral-counts", c5_dihedral_counts},
        {"two-bridge-loops", c6_gamma_loops},
        {"rhombus-invariants", c7_rhombus},
        {"dehn-fill-solver", c8_dehn_fill},
        {"pairing-algebra", c9_pairing_algebra},
    };
    if (id < 1 || id > int(table.size()))
        throw InvalidInput("run_criterion: id out of range");

    CriterionResult res;
    res.id = id;
    res.name = table[id - 1].first;
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
        table[id - 1].second(c);
        res.pass = c.ok;
        res.detail = c.detail.str();
    } catch (const std::exception& e) {
        res.pass = false;
        res.detail = std::string("exception: ") + e.what();
    }
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= 9; ++id) out.push_back(run_criterion(id));
    return out;
}

}  // namespace repknot::acceptance
