// Separation programs under the five normalizations.  Builders are checked
// structurally, optimal values are cross-checked against the independently
// assembled membership program (conic duality), the compact two-term form
// is cross-checked against the explicit general form, and the worked disc
// geometry pins the exact cuts that must come out.

#include "coniccut/separation.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

namespace {

using namespace coniccut;

// min -x1 - x2  s.t.  x0 = R, (x0,x1,x2) in Q3, x1,x2 integer.
StandardProblem disc_instance(double R) {
    StandardProblem p;
    p.c = Vector::Zero(3);
    p.c(1) = -1.0;
    p.c(2) = -1.0;
    p.A.resize(1, 3);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, R);
    p.K.push_block(Cone{ConeKind::SOC, 3});
    p.integer_mask = {false, true, true};
    p.implied_integer_mask = {false, false, false};
    return p;
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Vector vec4(double a, double b, double c, double d) {
    Vector v(4);
    v << a, b, c, d;
    return v;
}

// The relaxation optimum of the disc instance sits on the arc at 45
// degrees; both coordinates are R/sqrt(2).
Vector disc_point(double R) {
    return vec3(R, R / std::sqrt(2.0), R / std::sqrt(2.0));
}

Vector dense_row(const SparseMatrix& A, int i) {
    Vector r = Vector::Zero(A.cols());
    for (int c = 0; c < A.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(A, c); it; ++it) {
            if (it.row() == i) r(c) = it.value();
        }
    }
    return r;
}

SolveResult solve_or_fail(const ConicProgram& prog) {
    SolveResult res = solve(prog, SolveOptions{});
    REQUIRE(res.status == SolveStatus::Optimal);
    return res;
}

// Facet of the strongly feasible disc case bridging the x1 <= 0 piece at
// (0, R) and the x1 >= 1 piece at (1, sqrt(R^2-1)):
//   (R - sqrt(R^2-1)) x1 + x2 <= R.
struct BridgeFacet {
    double slope;      // coefficient of x1 when x2's is 1
    double rhs;        // R
    double violation;  // Euclidean violation at the 45-degree arc point
};

BridgeFacet bridge_facet(double R) {
    BridgeFacet f;
    f.slope = R - std::sqrt(R * R - 1.0);
    f.rhs = R;
    Vector xb = disc_point(R);
    double unnorm = f.slope * xb(1) + xb(2) - R;
    f.violation = unnorm / std::hypot(f.slope, 1.0);
    return f;
}

struct RandomSplit {
    StandardProblem problem;
    Vector xbar;
    Disjunction disjunction;
};

// A random mixed cone product with equality rows manufactured to pass
// through xbar and a split on a coordinate whose value was forced safely
// fractional.  When `on_boundary` is set and a second-order block exists,
// xbar is pushed onto that block's boundary so the split usually has real
// cutting to do; otherwise xbar stays strictly interior (and frequently
// inside the disjunctive hull, making zero the right optimal value).
RandomSplit random_split_instance(std::mt19937& rng, bool on_boundary) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    RandomSplit out;
    StandardProblem& p = out.problem;

    int num_blocks = 1 + static_cast<int>(unif(rng) * 2.0);
    std::vector<double> coords;
    std::vector<int> splittable;
    for (int bidx = 0; bidx < num_blocks; ++bidx) {
        if (unif(rng) < 0.4) {
            int dim = 1 + static_cast<int>(unif(rng) * 3.0);
            p.K.push_block(Cone{ConeKind::NonNeg, dim});
            for (int k = 0; k < dim; ++k) {
                splittable.push_back(static_cast<int>(coords.size()));
                coords.push_back(0.3 + 1.3 * unif(rng));
            }
        } else {
            p.K.push_block(Cone{ConeKind::SOC, 3});
            coords.push_back(1.2 + 0.8 * unif(rng));
            for (int k = 0; k < 2; ++k) {
                splittable.push_back(static_cast<int>(coords.size()));
                coords.push_back(0.8 * unif(rng) - 0.4);
            }
        }
    }
    const int n = static_cast<int>(coords.size());
    out.xbar = Eigen::Map<Vector>(coords.data(), n);

    int j = splittable[static_cast<int>(unif(rng) * splittable.size()) %
                       splittable.size()];
    double base = std::floor(out.xbar(j));
    out.xbar(j) = base + 0.3 + 0.4 * unif(rng);

    if (on_boundary) {
        for (std::size_t bidx = 0; bidx < p.K.blocks().size(); ++bidx) {
            if (p.K.blocks()[bidx].kind != ConeKind::SOC) continue;
            int off = p.K.block_offset(static_cast<int>(bidx));
            out.xbar(off) = out.xbar.segment(off + 1, 2).norm();
            break;
        }
    }

    const int m = 1 + (unif(rng) < 0.5 ? 1 : 0);
    p.A.resize(m, n);
    std::vector<Triplet> trips;
    for (int i = 0; i < m; ++i) {
        for (int col = 0; col < n; ++col) {
            trips.emplace_back(i, col, 2.0 * unif(rng) - 1.0);
        }
    }
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = p.A * out.xbar;
    p.c = Vector::Zero(n);
    p.integer_mask.assign(n, false);
    p.implied_integer_mask.assign(n, false);

    Vector pi = Vector::Zero(n);
    pi(j) = 1.0;
    long long pi0 = static_cast<long long>(std::floor(out.xbar(j)));
    out.disjunction = split_from_direction(pi, pi0);
    out.disjunction.split_tag = SplitTag{j, pi0, pi};
    return out;
}

}  // namespace

TEST_SUITE("separation") {

TEST_CASE("normalization names, parsing, and factories agree") {
    CHECK(std::string(normalization_name(Normalization::Kind::Alpha)) ==
          "alpha");
    CHECK(std::string(normalization_name(Normalization::Kind::Polar)) ==
          "polar");
    CHECK(std::string(normalization_name(Normalization::Kind::Standard)) ==
          "standard");
    CHECK(std::string(normalization_name(Normalization::Kind::Trivial)) ==
          "trivial");
    CHECK(std::string(normalization_name(Normalization::Kind::Uniform)) ==
          "uniform");
    for (auto kind :
         {Normalization::Kind::Alpha, Normalization::Kind::Polar,
          Normalization::Kind::Standard, Normalization::Kind::Trivial,
          Normalization::Kind::Uniform}) {
        auto back = normalization_from_name(normalization_name(kind));
        REQUIRE(back.has_value());
        CHECK(*back == kind);
    }
    CHECK_FALSE(normalization_from_name("euclidean").has_value());

    CHECK(alpha_normalization().kind == Normalization::Kind::Alpha);
    CHECK(trivial_normalization().kind == Normalization::Kind::Trivial);
    CHECK(standard_normalization().kind == Normalization::Kind::Standard);
    CHECK_FALSE(standard_normalization().rho.has_value());
    CHECK(uniform_normalization().kind == Normalization::Kind::Uniform);
    Normalization polar = polar_normalization(vec3(0.0, 1.0, 2.0));
    CHECK(polar.kind == Normalization::Kind::Polar);
    REQUIRE(polar.gamma.has_value());
    CHECK(polar.gamma->isApprox(vec3(0.0, 1.0, 2.0)));
}

TEST_CASE("compact split program exposes the documented layout") {
    StandardProblem p = disc_instance(1.1);
    Vector xb = disc_point(1.1);
    Disjunction disj = elementary_split(p, 1, xb(1));

    SUBCASE("scalar-slack normalizations use 2n+m+5 variables") {
        for (auto kind :
             {Normalization::Kind::Standard, Normalization::Kind::Trivial,
              Normalization::Kind::Uniform}) {
            Normalization norm;
            norm.kind = kind;
            CgcpProgram cgcp = build_cgcp(p, disj, xb, norm);
            CHECK(cgcp.compact);
            CHECK(cgcp.program.cones.total_dim() == 12);  // 2*3 + 1 + 4 + 1
            CHECK(cgcp.program.A.rows() == 5);            // n + 1 + norm
            CHECK(cgcp.u2_offset == 0);
            CHECK(cgcp.lambda1_offset == 1);
            CHECK(cgcp.lambda2_offset == 4);
            CHECK(cgcp.v_offset == 7);
        }
    }
    SUBCASE("ball normalization instead appends a second-order block") {
        CgcpProgram cgcp = build_cgcp(p, disj, xb, alpha_normalization());
        CHECK(cgcp.program.cones.total_dim() == 15);  // 11 + (n+1)
        CHECK(cgcp.program.A.rows() == 8);            // n + 1 + (n+1)
        const auto& blocks = cgcp.program.cones.blocks();
        CHECK(blocks.back().kind == ConeKind::SOC);
        CHECK(blocks.back().dim == 4);
    }
    SUBCASE("trivial normalization bounds only the term multipliers") {
        CgcpProgram cgcp = build_cgcp(p, disj, xb, trivial_normalization());
        Vector row = dense_row(cgcp.program.A, 4);
        Vector expected = Vector::Zero(12);
        expected(cgcp.v_offset + 0) = 1.0;  // sigma_1 = 1
        expected(cgcp.v_offset + 1) = 1.0;  // sigma_2 = 1
        expected(11) = 1.0;                 // slack
        CHECK(row.isApprox(expected));
        CHECK(cgcp.program.b(4) == 1.0);
    }
    SUBCASE("uniform normalization bounds only the cone multipliers") {
        CgcpProgram cgcp = build_cgcp(p, disj, xb, uniform_normalization());
        Vector row = dense_row(cgcp.program.A, 4);
        Vector expected = Vector::Zero(12);
        expected(cgcp.lambda1_offset + 0) = 1.0;  // rho = (1, 0, 0)
        expected(cgcp.lambda2_offset + 0) = 1.0;
        expected(11) = 1.0;
        CHECK(row.isApprox(expected));
    }
    SUBCASE("objective prices the first term at xbar") {
        CgcpProgram cgcp = build_cgcp(p, disj, xb, standard_normalization());
        const Vector& c = cgcp.program.c;
        CHECK(c.segment(cgcp.lambda1_offset, 3).isApprox(xb));
        double frac = xb(1) - std::floor(xb(1));
        CHECK(c(cgcp.v_offset + 0) == doctest::Approx(-frac));
        CHECK(c(cgcp.v_offset + 2) == 1.0);
        CHECK(c(cgcp.v_offset + 1) == 0.0);
        CHECK(c(cgcp.v_offset + 3) == 0.0);
    }
}

TEST_CASE("general and compact builders agree on split disjunctions") {
    StandardProblem p = disc_instance(1.1);
    // Strictly inside the cone (the trivial normalization is degenerate on
    // the boundary) but well outside the split hull.
    Vector xb = vec3(1.1, 0.5, 0.9);
    Disjunction tagged = elementary_split(p, 1, xb(1));
    Disjunction untagged = tagged;
    untagged.split_tag.reset();

    SUBCASE("shift-invariant normalizations give identical values") {
        for (auto kind :
             {Normalization::Kind::Standard, Normalization::Kind::Uniform,
              Normalization::Kind::Trivial}) {
            std::string nname = normalization_name(kind);
            CAPTURE(nname);
            Normalization norm;
            norm.kind = kind;
            CgcpProgram compact = build_cgcp(p, tagged, xb, norm);
            CgcpProgram general = build_cgcp(p, untagged, xb, norm);
            CHECK(compact.compact);
            CHECK_FALSE(general.compact);

            SolveResult rc = solve_or_fail(compact.program);
            SolveResult rg = solve_or_fail(general.program);
            CHECK(std::abs(rc.obj - rg.obj) <=
                  1e-6 * (1.0 + std::abs(rc.obj)));

            CutCandidate cc = reconstruct_cut(compact, rc.x, xb);
            CutCandidate cg = reconstruct_cut(general, rg.x, xb);
            CHECK(cut_certificate_ok(p, tagged, cc));
            CHECK(cut_certificate_ok(p, untagged, cg));
            CHECK(cc.violation ==
                  doctest::Approx(cg.violation).epsilon(1e-5));
        }
    }
    SUBCASE("the ball normalization sees the row-space shift") {
        // Pinning the first-term row multipliers restricts which
        // representative of each cut the ball can measure, so the compact
        // value may be shallower -- but it still finds the same facet.
        CgcpProgram compact = build_cgcp(p, tagged, xb, alpha_normalization());
        CgcpProgram general =
            build_cgcp(p, untagged, xb, alpha_normalization());
        SolveResult rc = solve_or_fail(compact.program);
        SolveResult rg = solve_or_fail(general.program);
        CHECK(rg.obj <= rc.obj + 1e-8);

        CutCandidate cc = reconstruct_cut(compact, rc.x, xb);
        CutCandidate cg = reconstruct_cut(general, rg.x, xb);
        CHECK(cut_certificate_ok(p, tagged, cc));
        CHECK(cut_certificate_ok(p, untagged, cg));
        // Same restricted line: alpha1/alpha2 ratios agree.
        CHECK(cc.alpha(1) / cc.alpha(2) ==
              doctest::Approx(cg.alpha(1) / cg.alpha(2)).epsilon(1e-4));
    }
}

TEST_CASE("strongly feasible disc: the standard normalization certifies a "
          "conditional cut") {
    StandardProblem p = disc_instance(1.1);
    Vector xb = disc_point(1.1);
    Disjunction disj = elementary_split(p, 1, xb(1));

    SeparationOutcome out = separate(p, disj, xb, standard_normalization());
    CHECK_FALSE(out.solver_failed);
    CHECK_FALSE(out.shortcut_used);  // xbar is conic-feasible
    CHECK(out.status == SolveStatus::Optimal);
    REQUIRE(out.cut.has_value());
    CHECK(out.cut->classification == CutClass::LiftAndProject);
    CHECK(out.cut->violation < -1e-3);
    CHECK(out.cgcp_obj <= -1e-4);
    CHECK(cut_certificate_ok(p, disj, *out.cut));
    CHECK(out.cut->normalization == "standard");
}

TEST_CASE("strongly feasible disc: the ball normalization recovers the "
          "bridge facet") {
    const double R = 1.1;
    StandardProblem p = disc_instance(R);
    Vector xb = disc_point(R);
    Disjunction disj = elementary_split(p, 1, xb(1));
    BridgeFacet facet = bridge_facet(R);

    SeparationOutcome out = separate(p, disj, xb, alpha_normalization());
    REQUIRE(out.cut.has_value());
    const CutCandidate& cut = *out.cut;

    // alpha'x >= beta restricted to x0 = R must be the bridge line
    //   slope*x1 + x2 <= R  (so alpha ~ -(0, slope, 1) after the shift).
    double s = -cut.alpha(2);
    REQUIRE(s > 0.0);
    CHECK(std::abs(cut.alpha(1) / s + facet.slope) <=
          1e-5 * (1.0 + facet.slope));
    CHECK(std::abs((cut.beta - R * cut.alpha(0)) / s + facet.rhs) <=
          1e-5 * (1.0 + facet.rhs));
    // The depth cannot beat the Euclidean distance to the hull, and the
    // first-term pinning can cost at most the cone-ballast factor.
    CHECK(cut.violation >= -facet.violation - 1e-6);
    CHECK(cut.violation <= -0.1);
    CHECK(out.cut->classification == CutClass::LiftAndProject);
}

TEST_CASE("empty-side disc: the ball normalization recovers the facet "
          "x1 <= 0") {
    const double R = 0.9;
    StandardProblem p = disc_instance(R);
    Vector xb = disc_point(R);
    Disjunction disj = elementary_split(p, 1, xb(1));

    SeparationOutcome out = separate(p, disj, xb, alpha_normalization());
    CHECK_FALSE(out.solver_failed);
    REQUIRE(out.cut.has_value());
    const CutCandidate& cut = *out.cut;

    double s = -cut.alpha(1);
    REQUIRE(s > 0.0);
    CHECK(std::abs(cut.alpha(2)) / s <= 1e-5);
    CHECK(std::abs(cut.beta - R * cut.alpha(0)) / s <= 1e-5);
    // Euclidean violation is the distance x̄1 to the x1 = 0 plane.
    CHECK(std::abs(cut.violation + R / std::sqrt(2.0)) <= 1e-5);
    CHECK(cut_certificate_ok(p, disj, cut));
}

TEST_CASE("weakly feasible disc neither crashes nor claims the point is "
          "uncuttable") {
    const double R = 1.0;
    StandardProblem p = disc_instance(R);
    Vector xb = disc_point(R);
    Disjunction disj = elementary_split(p, 1, xb(1));

    SUBCASE("ball normalization") {
        SeparationOutcome out = separate(p, disj, xb, alpha_normalization());
        CHECK_FALSE(out.solver_failed);
        bool resolved =
            out.status != SolveStatus::Optimal || out.cut.has_value();
        CHECK(resolved);
        if (out.cut) {
            CHECK(out.cut->violation <= -1e-2);
            CHECK(cut_certificate_ok(p, disj, *out.cut));
        }
    }
    SUBCASE("polar normalization from the analytic center") {
        auto polar = polar_from_center(p, xb);
        REQUIRE(polar.has_value());
        SeparationOutcome out = separate(p, disj, xb, *polar);
        CHECK_FALSE(out.solver_failed);
        bool resolved =
            out.status != SolveStatus::Optimal || out.cut.has_value();
        CHECK(resolved);
        if (out.cut) {
            CHECK(out.cut->violation <= -1e-2);
            CHECK(cut_certificate_ok(p, disj, *out.cut));
        }
    }
}

TEST_CASE("all five normalizations satisfy conic duality against the "
          "membership program") {
    StandardProblem p = disc_instance(1.1);
    // Strictly interior but outside the disjunctive hull: at x1 = 0.5 the
    // hull allows x2 only up to (1.1 + sqrt(0.21))/2 ~ 0.779.
    Vector xb = vec3(1.1, 0.5, 0.9);
    Disjunction disj = elementary_split(p, 1, xb(1));

    auto polar = polar_from_center(p, xb);
    REQUIRE(polar.has_value());
    std::vector<Normalization> norms{
        alpha_normalization(), *polar, standard_normalization(),
        trivial_normalization(), uniform_normalization()};

    for (const Normalization& norm : norms) {
        std::string nname = normalization_name(norm.kind);
        CAPTURE(nname);
        CgcpProgram cgcp = build_cgcp(p, disj, xb, norm);
        McpProgram mcp = build_mcp(p, disj, xb, norm);
        SolveResult sep = solve_or_fail(cgcp.program);
        SolveResult mem = solve_or_fail(mcp.program);

        CHECK(sep.obj <= -1e-4);  // genuinely separates this query point
        CHECK(std::abs(sep.obj + mem.obj) <= 1e-6 * (1.0 + std::abs(sep.obj)));

        CutCandidate cut = reconstruct_cut(cgcp, sep.x, xb);
        CHECK(cut_certificate_ok(p, disj, cut));

        if (norm.kind == Normalization::Kind::Alpha) {
            // The hull point produced by the membership side is tight.
            Vector point = mcp_point(mcp, mem.x);
            CHECK(std::abs(cut.alpha.dot(point) - cut.beta) <= 1e-6);
        }
        if (norm.kind == Normalization::Kind::Polar) {
            double eta = mcp_eta(mcp, mem.x);
            Vector support = xb + eta * *norm.gamma;
            CHECK(mcp_point(mcp, mem.x).isApprox(support, 1e-6));
            CHECK(std::abs(cut.alpha.dot(support) - cut.beta) <= 1e-6);
        }
        if (norm.kind == Normalization::Kind::Standard ||
            norm.kind == Normalization::Kind::Uniform ||
            norm.kind == Normalization::Kind::Trivial) {
            // The membership side reconstructs xbar itself.
            CHECK(mcp_point(mcp, mem.x).isApprox(xb, 1e-5));
        }
    }
}

TEST_CASE("randomized split instances: separation and membership values "
          "are negatives of each other") {
    std::mt19937 rng(2026);
    int optimal_pairs = 0;
    int infeasible_pairs = 0;
    int separating = 0;
    for (int trial = 0; trial < 50; ++trial) {
        RandomSplit inst = random_split_instance(rng, trial % 2 == 1);
        CAPTURE(trial);
        for (auto kind :
             {Normalization::Kind::Standard, Normalization::Kind::Uniform}) {
            std::string nname = normalization_name(kind);
            CAPTURE(nname);
            Normalization norm;
            norm.kind = kind;
            CgcpProgram cgcp =
                build_cgcp(inst.problem, inst.disjunction, inst.xbar, norm);
            McpProgram mcp =
                build_mcp(inst.problem, inst.disjunction, inst.xbar, norm);
            SolveResult sep = solve(cgcp.program, SolveOptions{});
            SolveResult mem = solve(mcp.program, SolveOptions{});
            if (sep.status == SolveStatus::DualInfeasible ||
                mem.status == SolveStatus::PrimalInfeasible) {
                // An unbounded separation pairs with an empty-hull
                // membership side (the degenerate duality case); on such
                // draws the iterative solver occasionally stops at its
                // limits instead of producing the unboundedness ray.
                CHECK(mem.status == SolveStatus::PrimalInfeasible);
                CHECK((sep.status == SolveStatus::DualInfeasible ||
                       sep.status == SolveStatus::IterLimit ||
                       sep.status == SolveStatus::Stalled));
                ++infeasible_pairs;
                continue;
            }
            REQUIRE(sep.status == SolveStatus::Optimal);
            REQUIRE(mem.status == SolveStatus::Optimal);
            CHECK(std::abs(sep.obj + mem.obj) <=
                  1e-6 * (1.0 + std::abs(sep.obj)));
            CHECK(sep.obj <= 1e-8);
            ++optimal_pairs;
            if (sep.obj < -1e-4) ++separating;
        }
    }
    CHECK(optimal_pairs + infeasible_pairs == 100);
    CHECK(optimal_pairs >= 80);  // degenerate draws must stay rare
    CHECK(separating >= 15);     // and plenty of draws really separate
}

TEST_CASE("standard membership stays strongly feasible at conic-infeasible "
          "points and matches the closed-form optimum") {
    StandardProblem p = disc_instance(0.9);
    Vector xb = vec3(0.9, 1.5, 0.3);  // outside Q3: ||(1.5,0.3)|| > 0.9
    Disjunction disj = elementary_split(p, 1, xb(1));
    const double eta = std::hypot(1.5, 0.3) - 0.9;
    REQUIRE(eta > 0.0);

    InteriorPoint rho = default_interior_point(p.K);

    SUBCASE("shortcut fires with value -eta/2 and a supported certificate") {
        auto cut = kstar_shortcut(p, disj, xb, rho);
        REQUIRE(cut.has_value());
        CHECK(cut->violation == doctest::Approx(-eta / 2.0).epsilon(1e-9));
        CHECK(cut->classification == CutClass::KStar);
        CHECK(cut->beta == 0.0);
        CHECK(cut_certificate_ok(p, disj, *cut));
        // Normalization holds with equality: rho'alpha = 1/H.
        CHECK(rho.rho.dot(cut->alpha) == doctest::Approx(0.5));
    }
    SUBCASE("solving the program reproduces the closed form") {
        CgcpProgram cgcp = build_cgcp(p, disj, xb, standard_normalization());
        SolveResult res = solve_or_fail(cgcp.program);
        CHECK(std::abs(res.obj + eta / 2.0) <= 1e-6);

        McpProgram mcp = build_mcp(p, disj, xb, standard_normalization());
        SolveResult mem = solve_or_fail(mcp.program);
        CHECK(std::abs(mem.obj - eta / 2.0) <= 1e-6);
    }
    SUBCASE("separate() takes the shortcut and disaggregates") {
        SeparationOutcome out =
            separate(p, disj, xb, standard_normalization());
        CHECK(out.shortcut_used);
        REQUIRE(out.cut.has_value());
        CHECK(out.cut->classification == CutClass::KStar);
        CHECK(out.cgcp_obj == doctest::Approx(-eta / 2.0).epsilon(1e-9));
        REQUIRE(out.disaggregated_kstar.size() == 1);  // single cone block
        CHECK(out.disaggregated_kstar[0].isApprox(out.cut->alpha));
    }
    SUBCASE("disabling the shortcut still yields an equivalent trivial cut") {
        SeparationConfig config;
        config.try_shortcut = false;
        SeparationOutcome out =
            separate(p, disj, xb, standard_normalization(), config);
        CHECK_FALSE(out.shortcut_used);
        REQUIRE(out.cut.has_value());
        CHECK(out.cut->violation == doctest::Approx(-eta / 2.0).epsilon(1e-4));
    }
}

TEST_CASE("closed-form shortcut arithmetic on scalar cones") {
    // Two nonnegative variables, no equality rows; the split is on the
    // second coordinate whose value 0.5 has fractional part 1/2.
    StandardProblem p;
    p.c = Vector::Zero(2);
    p.A.resize(0, 2);
    p.b = Vector::Zero(0);
    p.K.push_block(Cone{ConeKind::NonNeg, 2});
    p.integer_mask = {false, true};
    p.implied_integer_mask = {false, false};
    InteriorPoint rho = default_interior_point(p.K);

    Vector pi = vec2(0.0, 1.0);
    Disjunction disj = split_from_direction(pi, 0);

    SUBCASE("per-term slack distances are the fractional parts") {
        Vector xb = vec2(-0.3, 0.5);
        const DisjunctiveTerm& t1 = disj.terms[0];
        const DisjunctiveTerm& t2 = disj.terms[1];
        CHECK(tau_bar(t1.D, t1.d, t1.Q, t1.sigma, xb) ==
              doctest::Approx(0.5));
        CHECK(tau_bar(t2.D, t2.d, t2.Q, t2.sigma, xb) ==
              doctest::Approx(0.5));
        CHECK(eta_bar(p.K, xb, rho) == doctest::Approx(0.3));
    }
    SUBCASE("depth 0.3 >= 0.5/2 fires with value -0.15") {
        auto cut = kstar_shortcut(p, disj, vec2(-0.3, 0.5), rho);
        REQUIRE(cut.has_value());
        CHECK(cut->alpha.isApprox(vec2(0.5, 0.0)));
        CHECK(cut->violation == doctest::Approx(-0.15));
        CHECK(cut_certificate_ok(p, disj, *cut));
    }
    SUBCASE("depth 0.2 < 0.5/2 does not fire") {
        CHECK_FALSE(kstar_shortcut(p, disj, vec2(-0.2, 0.5), rho).has_value());
    }
    SUBCASE("conic-feasible points never fire") {
        CHECK_FALSE(kstar_shortcut(p, disj, vec2(0.2, 0.5), rho).has_value());
    }
}

TEST_CASE("trivial normalization surrenders to recession directions at "
          "conic-infeasible points") {
    StandardProblem p = disc_instance(0.9);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int emitted = 0;
    for (int trial = 0; trial < 10; ++trial) {
        // Outside the cone by at least 0.1, split coordinate fractional.
        double a = 1.2 + 0.8 * unif(rng);
        double b = 0.2 + 0.5 * unif(rng);
        Vector xb = vec3(0.9, std::floor(a) + 0.3 + 0.4 * unif(rng), b);
        if (std::hypot(xb(1), xb(2)) < 1.0 + 1e-3) continue;
        Disjunction disj = elementary_split(p, 1, xb(1));

        SeparationOutcome out = separate(p, disj, xb, trivial_normalization());
        CHECK_FALSE(out.solver_failed);
        if (out.cut) {
            ++emitted;
            CHECK(out.cut->classification == CutClass::KStar);
            CHECK_FALSE(out.disaggregated_kstar.empty());
            CHECK(cut_certificate_ok(p, disj, *out.cut));
            // Every piece stays in the dual cone; together they cut xbar.
            for (const Vector& piece : out.disaggregated_kstar) {
                CHECK(dual_membership(p.K, piece, 1e-6));
            }
        }
    }
    CHECK(emitted >= 8);
}

TEST_CASE("uniform membership detects the shifted-simplex example as "
          "infeasible") {
    // Two nonnegative variables on the simplex x1 + x2 = 1, disjunction
    // x1 = 0 or x1 = 1 written with two-row terms, queried at (-1, 2).
    StandardProblem p;
    p.c = Vector::Zero(2);
    p.A.resize(1, 2);
    std::vector<Triplet> trips{{0, 0, 1.0}, {0, 1, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, 1.0);
    p.K.push_block(Cone{ConeKind::NonNeg, 2});
    p.integer_mask = {true, false};
    p.implied_integer_mask = {false, false};

    auto two_row_term = [](double lo, double hi) {
        DisjunctiveTerm term;
        term.D.resize(2, 2);
        std::vector<Triplet> dt{{0, 0, 1.0}, {1, 0, -1.0}};
        term.D.setFromTriplets(dt.begin(), dt.end());
        term.d = vec2(lo, -hi);  // lo <= x1 <= hi
        term.Q.push_block(Cone{ConeKind::NonNeg, 2});
        term.sigma = InteriorPoint{vec2(1.0, 1.0)};
        return term;
    };
    Disjunction disj;
    disj.terms.push_back(two_row_term(0.0, 0.0));
    disj.terms.push_back(two_row_term(1.0, 1.0));

    Vector xb = vec2(-1.0, 2.0);
    REQUIRE((p.A * xb - p.b).cwiseAbs().maxCoeff() == 0.0);

    McpProgram mcp = build_mcp(p, disj, xb, uniform_normalization());
    SolveResult mem = solve(mcp.program, SolveOptions{});
    REQUIRE(mem.status == SolveStatus::PrimalInfeasible);

    // Re-verify the infeasibility certificate by hand: b'y = 1 and
    // -A'y in the dual of the (all nonnegative/free-less) variable cone.
    REQUIRE(mem.farkas_y.has_value());
    const Vector& y = *mem.farkas_y;
    CHECK(mcp.program.b.dot(y) == doctest::Approx(1.0).epsilon(1e-6));
    Vector reduced = -(mcp.program.A.transpose() * y);
    const ConeProduct& cones = mcp.program.cones;
    for (std::size_t i = 0; i < cones.blocks().size(); ++i) {
        int off = cones.block_offset(static_cast<int>(i));
        CHECK(dual_block_infeasibility(
                  cones.blocks()[i],
                  reduced.segment(off, cones.blocks()[i].dim)) <= 1e-7);
    }

    // The separation side is accordingly unbounded (or effectively so) and
    // must not crash; any harvested cut has to carry its certificate.
    SeparationOutcome out = separate(p, disj, xb, uniform_normalization());
    CHECK_FALSE(out.solver_failed);
    if (out.cut) {
        CHECK(out.cgcp_obj <= -1e-4);
        CHECK(cut_certificate_ok(p, disj, *out.cut));
    }
}

TEST_CASE("trivial membership is infeasible exactly when xbar leaves the "
          "cone") {
    StandardProblem p = disc_instance(0.9);

    SUBCASE("conic-infeasible query") {
        Vector xb = vec3(0.9, 1.2, 0.3);
        Disjunction disj = elementary_split(p, 1, xb(1));
        McpProgram mcp = build_mcp(p, disj, xb, trivial_normalization());
        SolveResult mem = solve(mcp.program, SolveOptions{});
        CHECK(mem.status == SolveStatus::PrimalInfeasible);
    }
    SUBCASE("conic-feasible query") {
        Vector xb = vec3(0.9, 0.45, 0.2);
        Disjunction disj = elementary_split(p, 1, xb(1));
        McpProgram mcp = build_mcp(p, disj, xb, trivial_normalization());
        SolveResult mem = solve(mcp.program, SolveOptions{});
        CHECK(mem.status == SolveStatus::Optimal);
    }
}

TEST_CASE("disaggregation splits certificates block by block") {
    ConeProduct K;
    K.push_block(Cone{ConeKind::SOC, 3});
    K.push_block(Cone{ConeKind::NonNeg, 1});

    SUBCASE("two active blocks give two sparse pieces") {
        Vector lambda(4);
        lambda << 1.0, 0.5, 0.5, 2.0;
        auto pieces = disaggregate_kstar(lambda, K);
        REQUIRE(pieces.size() == 2);
        CHECK(pieces[0].isApprox(vec4(1.0, 0.5, 0.5, 0.0)));
        CHECK(pieces[1].isApprox(vec4(0.0, 0.0, 0.0, 2.0)));
        CHECK((pieces[0] + pieces[1]).isApprox(lambda));
        for (const Vector& piece : pieces) {
            CHECK(dual_membership(K, piece, 1e-12));
        }
    }
    SUBCASE("a single active block returns the certificate unchanged") {
        Vector lambda(4);
        lambda << 1.0, 0.0, 0.5, 0.0;
        auto pieces = disaggregate_kstar(lambda, K);
        REQUIRE(pieces.size() == 1);
        CHECK(pieces[0].isApprox(lambda));
    }
    SUBCASE("the zero certificate disaggregates to nothing") {
        CHECK(disaggregate_kstar(Vector::Zero(4), K).empty());
    }
}

TEST_CASE("hull members are reported uncuttable instead of being cut") {
    StandardProblem p = disc_instance(1.1);
    Vector xb = vec3(1.1, 0.0, 0.4);  // x1 = 0: inside the first piece
    Disjunction disj = split_from_direction(vec3(0.0, 1.0, 0.0), 0);

    for (auto kind :
         {Normalization::Kind::Alpha, Normalization::Kind::Standard}) {
        CAPTURE(normalization_name(kind));
        Normalization norm;
        norm.kind = kind;
        SeparationOutcome out = separate(p, disj, xb, norm);
        CHECK_FALSE(out.solver_failed);
        CHECK_FALSE(out.cut.has_value());
        CHECK(out.cgcp_obj >= -1e-4);
        CHECK_FALSE(out.message.empty());
    }
}

TEST_CASE("builders refuse ill-posed inputs") {
    StandardProblem p = disc_instance(1.1);
    Vector xb = disc_point(1.1);
    Disjunction disj = elementary_split(p, 1, xb(1));

    CHECK_THROWS_AS(build_cgcp(p, disj, vec2(1.0, 2.0),
                               standard_normalization()),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_cgcp(p, disj, vec3(2.0, 0.1, 0.1),
                               standard_normalization()),
                    std::invalid_argument);  // violates x0 = 1.1
    Normalization bare_polar;
    bare_polar.kind = Normalization::Kind::Polar;
    CHECK_THROWS_AS(build_cgcp(p, disj, xb, bare_polar),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_mcp(p, disj, xb, bare_polar), std::invalid_argument);
    CHECK_THROWS_AS(build_cgcp(p, Disjunction{}, xb, standard_normalization()),
                    std::invalid_argument);

    SUBCASE("polar direction is refused when no strict interior exists") {
        StandardProblem hollow;
        hollow.c = Vector::Zero(2);
        hollow.A.resize(1, 2);
        std::vector<Triplet> trips{{0, 0, 1.0}, {0, 1, 1.0}};
        hollow.A.setFromTriplets(trips.begin(), trips.end());
        hollow.b = Vector::Zero(1);  // x1 + x2 = 0 on the nonnegant
        hollow.K.push_block(Cone{ConeKind::NonNeg, 2});
        hollow.integer_mask = {false, false};
        hollow.implied_integer_mask = {false, false};
        CHECK_FALSE(polar_from_center(hollow, Vector::Zero(2)).has_value());
    }
}

}  // TEST_SUITE
