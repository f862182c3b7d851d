#include "gratetd/properties.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>

#include "gratetd/diagnostics.hpp"
#include "gratetd/dtn.hpp"
#include "gratetd/errors.hpp"
#include "gratetd/medium.hpp"
#include "gratetd/mesh.hpp"
#include "gratetd/oracle.hpp"
#include "gratetd/rng.hpp"
#include "gratetd/solver.hpp"

namespace gratetd {

namespace {

std::string shortest(double v) {
    char buf[40];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, p);
}

struct TestBed {
    MediumModel medium;
    StripMesh mesh;
    double theta;
};

// Small pool of admissible geometries: homogeneous, layered (period 2 pi),
// and a lamellar grating (period 1).
std::vector<TestBed> make_testbeds(int n) {
    std::vector<TestBed> beds;
    {
        const Layer layer{0.5, 1.0, 1.0};
        ExteriorMedia ext;
        TestBed b{build_layered(std::span(&layer, 1), 1.0, 0.5, -0.5, n, n, ext),
                  {}, std::numbers::pi / 2.0};
        b.mesh = build_mesh(b.medium, n, n);
        beds.push_back(std::move(b));
    }
    {
        const std::vector<Layer> layers = {{1.0, 1.0, 1.0}, {0.0, 4.0, 1.5}};
        ExteriorMedia ext{1.0, 1.0, 4.0, 1.5};
        TestBed b{build_layered(layers, 2.0 * std::numbers::pi, 1.0, -1.0, n, n, ext),
                  {}, std::numbers::pi / 3.0};
        b.mesh = build_mesh(b.medium, n, n);
        beds.push_back(std::move(b));
    }
    {
        std::vector<double> profile(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            profile[static_cast<std::size_t>(i)] = (i + 0.5) / n < 0.5 ? 0.2 : -0.2;
        ExteriorMedia ext{1.0, 1.0, 3.0, 1.0};
        TestBed b{build_binary_grating(profile, 1.0, 1.0, 3.0, 1.0, 1.0, 0.5, -0.5, n, n, ext),
                  {}, 2.0 * std::numbers::pi / 5.0};
        b.mesh = build_mesh(b.medium, n, n);
        beds.push_back(std::move(b));
    }
    return beds;
}

BoundaryTrace random_trace(Rng& rng, int side, double period, int nx) {
    BoundaryTrace t;
    t.side = side;
    t.period = period;
    t.values.resize(static_cast<std::size_t>(nx));
    for (auto& v : t.values) v = rng.complex_box(1.0);
    return t;
}

SDomainField random_field(Rng& rng, const StripMesh& mesh, cd s) {
    SDomainField f;
    f.s = s;
    f.values.resize(static_cast<std::size_t>(mesh.ndof()));
    for (auto& v : f.values) v = rng.complex_box(1.0);
    return f;
}

} // namespace

PropertyResult prop_branch_negativity(std::uint64_t seed, int symbol_samples,
                                      int trace_samples) {
    Rng rng(seed);
    PropertyResult res;
    res.name = "branch_negativity";

    double min_margin = 1e300;    // most positive Re beta observed (as -margin)
    double max_identity = 0.0;    // worst TP-1/TP-2/TP-5 relative residual
    int fails = 0;
    for (int it = 0; it < symbol_samples; ++it) {
        const double p1 = rng.log_uniform(0.25, 16.0);   // eps1*mu1
        const double pj = rng.coin() ? p1 : p1 * rng.log_uniform(1.0, 16.0);
        const double theta = rng.uniform(0.01, std::numbers::pi - 0.01);
        const double c1 = std::cos(theta) * std::sqrt(p1);
        const double period = rng.log_uniform(0.1, 100.0);
        const int n = rng.uniform_int(-(1 << 20), 1 << 20);
        const double alpha = 2.0 * std::numbers::pi * n / period;
        const double s1 = rng.log_uniform(1e-3, 1e3);
        const double s2 = (rng.coin() ? 1.0 : -1.0) * rng.log_uniform(1e-6, 1e4);
        const cd s(s1, s2);
        const double eps_j = rng.log_uniform(0.2, 8.0);
        const double mu_j = pj / eps_j;

        cd beta;
        try {
            beta = beta_symbol(s, alpha, c1, eps_j, mu_j);
        } catch (const Error&) {
            ++fails;
            continue;
        }
        if (!(beta.real() < 0.0)) ++fails;
        min_margin = std::min(min_margin, -beta.real());
        const cd bsq = beta * beta;
        if (bsq.imag() == 0.0 && bsq.real() <= 0.0) ++fails; // closed negative real axis

        const double a = beta.real(), b = beta.imag();
        const double scale = std::max(std::norm(beta), 1e-300);
        const double tp1 = std::abs((a * a - b * b) -
                                    ((pj - c1 * c1) * (s1 * s1 - s2 * s2) + alpha * alpha -
                                     2.0 * alpha * c1 * s2)) /
                           std::max(scale, std::abs(a * a - b * b));
        const double tp2 =
            std::abs(a * b - ((pj - c1 * c1) * s1 * s2 + alpha * c1 * s1)) /
            std::max(scale, std::abs(a * b));
        const double lhs5 = s1 * a + s2 * b;
        const double rhs5 = s1 / (2.0 * a) *
                            (a * a + b * b + (pj - c1 * c1) * (s1 * s1 + s2 * s2) +
                             alpha * alpha);
        const double tp5 = std::abs(lhs5 - rhs5) /
                           std::max({std::abs(lhs5), std::abs(rhs5), 1e-300});
        max_identity = std::max({max_identity, tp1, tp2, tp5});
        if (tp1 > 1e-12 || tp2 > 1e-12 || tp5 > 1e-12) ++fails;
    }

    double worst_quad = -1e300;
    const auto beds = make_testbeds(32);
    for (int it = 0; it < trace_samples; ++it) {
        const auto& bed = beds[static_cast<std::size_t>(it) % beds.size()];
        const int side = rng.coin() ? 1 : 2;
        const cd s(rng.log_uniform(1e-2, 1e2),
                   (rng.coin() ? 1.0 : -1.0) * rng.log_uniform(1e-3, 1e3));
        const auto trace = random_trace(rng, side, bed.medium.period, 32);
        const double c1 = std::cos(bed.theta) * std::sqrt(bed.medium.eps1 * bed.medium.mu1);
        const auto rep = check_lemma_tp(trace, s, bed.medium, c1);
        if (!rep.pass) ++fails;
        if (rep.rhs > 0.0) worst_quad = std::max(worst_quad, rep.lhs / rep.rhs);
    }

    res.pass = fails == 0;
    res.lines.push_back("branch_negativity " + std::string(res.pass ? "pass" : "fail") +
                        " samples=" + std::to_string(symbol_samples) +
                        " min_margin=" + shortest(min_margin) +
                        " max_tp_identity_resid=" + shortest(max_identity) +
                        " max_tp_quadform_ratio=" + shortest(worst_quad) +
                        " failures=" + std::to_string(fails));
    return res;
}

PropertyResult prop_explicit_constants(std::uint64_t seed, int fields_per_lemma,
                                       int frequencies) {
    Rng rng(seed);
    PropertyResult res;
    res.name = "explicit_constants";
    const auto beds = make_testbeds(32);

    int fails = 0;
    double worst_tt = 0.0, worst_dtn = 0.0;
    const int per_s = std::max(1, fields_per_lemma / frequencies);
    for (int fs = 0; fs < frequencies; ++fs) {
        const cd s(rng.uniform(0.1, 10.0), rng.uniform(-100.0, 100.0));
        for (int it = 0; it < per_s; ++it) {
            const auto& bed = beds[static_cast<std::size_t>(fs * per_s + it) % beds.size()];
            const double c1 =
                std::cos(bed.theta) * std::sqrt(bed.medium.eps1 * bed.medium.mu1);

            const auto field = random_field(rng, bed.mesh, s);
            for (const auto& rep : check_lemma_tt(field, bed.mesh, s)) {
                if (!rep.pass) ++fails;
                if (rep.rhs > 0.0)
                    worst_tt = std::max(worst_tt, rep.lhs / (rep.constant * rep.rhs));
            }

            const auto trace = random_trace(rng, rng.coin() ? 1 : 2, bed.medium.period, 32);
            const auto rep = check_lemma_dtn(trace, s, bed.medium, c1);
            if (!rep.pass) ++fails;
            if (rep.rhs > 0.0)
                worst_dtn = std::max(worst_dtn, rep.lhs / (rep.constant * rep.rhs));
        }
    }
    res.pass = fails == 0;
    res.lines.push_back("explicit_constants " + std::string(res.pass ? "pass" : "fail") +
                        " fields=" + std::to_string(per_s * frequencies) +
                        " worst_tt_fraction=" + shortest(worst_tt) +
                        " worst_dtn_fraction=" + shortest(worst_dtn) +
                        " failures=" + std::to_string(fails));
    return res;
}

PropertyResult prop_coercivity(std::uint64_t seed, int fields) {
    Rng rng(seed);
    PropertyResult res;
    res.name = "coercivity";
    const auto beds = make_testbeds(32);

    int fails = 0;
    double worst = 0.0; // largest RHS/LHS fraction observed
    for (int it = 0; it < fields; ++it) {
        const auto& bed = beds[static_cast<std::size_t>(it) % beds.size()];
        const double theta = rng.uniform(0.05, std::numbers::pi - 0.05);
        const double c1 = std::cos(theta) * std::sqrt(bed.medium.eps1 * bed.medium.mu1);
        const cd s(rng.uniform(0.1, 10.0), rng.uniform(-50.0, 50.0));
        const auto u = random_field(rng, bed.mesh, s);

        const double re_a = sesquilinear_apply(u, u, bed.medium, bed.mesh, s, c1).real();
        const double norm_sq = fe_grad_norm_sq(bed.mesh, u.values) +
                               std::norm(s) * fe_l2_norm_sq(bed.mesh, u.values);
        const double c = coercivity_constant(bed.medium, theta);
        const double rhs = c * s.real() / std::norm(s) * norm_sq;
        if (!(re_a >= rhs * (1.0 - 1e-10))) ++fails;
        if (re_a > 0.0) worst = std::max(worst, rhs / re_a);
    }
    res.pass = fails == 0;
    res.lines.push_back("coercivity " + std::string(res.pass ? "pass" : "fail") +
                        " fields=" + std::to_string(fields) +
                        " worst_bound_fraction=" + shortest(worst) +
                        " failures=" + std::to_string(fails));
    return res;
}

PropertyResult prop_dtn_equivalence(std::uint64_t seed, int max_nx) {
    Rng rng(seed);
    PropertyResult res;
    res.name = "dtn_equivalence";

    const Layer layer{0.5, 1.0, 1.0};
    const auto medium = build_layered(std::span(&layer, 1), 1.0, 0.5, -0.5, 4, 4,
                                      ExteriorMedia{1.0, 1.0, 1.0, 1.0});

    int fails = 0;
    double worst = 0.0;
    for (int nx = 8; nx <= max_nx; nx *= 2) {
        for (int rep = 0; rep < 4; ++rep) {
            const cd s(rng.uniform(0.1, 5.0), rng.uniform(-10.0, 10.0));
            const int side = rng.coin() ? 1 : 2;
            const double c1 = rng.uniform(-0.9, 0.9);
            const auto table = make_symbol_table(medium, c1, side, nx, s);
            const auto trace = random_trace(rng, side, medium.period, nx);
            const auto fast = apply_dtn(trace, table);
            const auto dense = oracle::dense_dtn_reference(trace, table);
            double scale = 0.0, diff = 0.0;
            for (int i = 0; i < nx; ++i) {
                scale = std::max(scale, std::abs(dense.values[i]));
                diff = std::max(diff, std::abs(dense.values[i] - fast.values[i]));
            }
            const double rel = diff / std::max(scale, 1e-300);
            worst = std::max(worst, rel);
            if (!(rel <= 1e-12)) ++fails;
        }
    }
    res.pass = fails == 0;
    res.lines.push_back("dtn_equivalence " + std::string(res.pass ? "pass" : "fail") +
                        " max_nx=" + std::to_string(max_nx) +
                        " worst_rel_diff=" + shortest(worst) +
                        " failures=" + std::to_string(fails));
    return res;
}

PropertyResult prop_norm_identities(std::uint64_t seed, int samples) {
    Rng rng(seed);
    PropertyResult res;
    res.name = "norm_identities";
    const auto beds = make_testbeds(16);

    int fails = 0;
    double worst_hsp = 0.0, worst_dual = 0.0;
    for (int it = 0; it < samples; ++it) {
        const auto& bed = beds[static_cast<std::size_t>(it) % beds.size()];
        const cd s(rng.log_uniform(0.05, 20.0), rng.uniform(-20.0, 20.0));
        const auto field = random_field(rng, bed.mesh, s);
        const double a = hsp_volume_norm(field, bed.mesh, s);
        const double b = hsp_volume_norm_nodal(field, bed.mesh, s);
        const double rel = std::abs(a - b) / std::max({a, b, 1e-300});
        worst_hsp = std::max(worst_hsp, rel);
        if (!(rel <= 1e-12)) ++fails;

        const auto u = random_trace(rng, 1, bed.medium.period, 16);
        const auto v = random_trace(rng, 1, bed.medium.period, 16);
        const auto uc = u.coefficients();
        const auto vc = v.coefficients();
        cd pair(0.0, 0.0);
        for (std::size_t k = 0; k < uc.size(); ++k) pair += uc[k] * std::conj(vc[k]);
        const double bound = hs_boundary_norm(u, s, -0.5) * hs_boundary_norm(v, s, 0.5);
        const double frac = std::abs(pair) / std::max(bound, 1e-300);
        worst_dual = std::max(worst_dual, frac);
        if (!(std::abs(pair) <= bound * (1.0 + 1e-12))) ++fails;
    }
    res.pass = fails == 0;
    res.lines.push_back("norm_identities " + std::string(res.pass ? "pass" : "fail") +
                        " samples=" + std::to_string(samples) +
                        " worst_hsp_identity=" + shortest(worst_hsp) +
                        " worst_duality_fraction=" + shortest(worst_dual) +
                        " failures=" + std::to_string(fails));
    return res;
}

std::vector<PropertyResult> run_property_suite(std::uint64_t seed) {
    std::vector<PropertyResult> out;
    out.push_back(prop_branch_negativity(seed, 100000, 1000));
    out.push_back(prop_explicit_constants(seed + 1, 1000, 20));
    out.push_back(prop_coercivity(seed + 2, 500));
    out.push_back(prop_dtn_equivalence(seed + 3, 256));
    out.push_back(prop_norm_identities(seed + 4, 200));
    return out;
}

} // namespace gratetd
