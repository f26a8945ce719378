// Cutting-plane driver: relaxation bounds may only tighten, stored rows
// must never cut off integer-feasible points, outer-approximation
// refinement must make measurable progress, budgets must short-circuit
// cleanly, and identical configurations must reproduce identical cut
// ledgers and serialized tables.

#include "coniccut/cutloop.hpp"
#include "coniccut/report.hpp"

#include <doctest.h>

#include <Eigen/Dense>
#include <json.hpp>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace coniccut;

Vector vecn(std::initializer_list<double> vals) {
    Vector v(static_cast<Eigen::Index>(vals.size()));
    Eigen::Index i = 0;
    for (double x : vals) v(i++) = x;
    return v;
}

// min -x1 - x2  s.t.  x0 = R, (x0,x1,x2) in Q3, x1,x2 integer.
StandardProblem disc_instance(double R) {
    StandardProblem p;
    p.c = vecn({0.0, -1.0, -1.0});
    p.A.resize(1, 3);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, R);
    p.K.push_block(Cone{ConeKind::SOC, 3});
    p.integer_mask = {false, true, true};
    p.implied_integer_mask = {false, false, false};
    return p;
}

// Two integer variables boxed strictly inside the unit interval by slack
// rows:  min -x - y  s.t.  x + s1 = 0.3,  y + s2 = 0.45,  all >= 0.
// The only integer point fixes both at zero, so one vertical cut per
// variable closes the whole gap.
StandardProblem box_pair_instance() {
    StandardProblem p;
    p.c = vecn({-1.0, -1.0, 0.0, 0.0});
    p.A.resize(2, 4);
    std::vector<Triplet> trips{{0, 0, 1.0}, {0, 2, 1.0}, {1, 1, 1.0},
                               {1, 3, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = vecn({0.3, 0.45});
    p.K.push_block(Cone{ConeKind::NonNeg, 4});
    p.integer_mask = {true, true, false, false};
    p.implied_integer_mask = {false, false, false, false};
    return p;
}

// min x  s.t.  x = 1, x >= 0, x integer: the relaxation optimum is already
// integral, so the loop has nothing to do.
StandardProblem integral_instance() {
    StandardProblem p;
    p.c = vecn({1.0});
    p.A.resize(1, 1);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, 1.0);
    p.K.push_block(Cone{ConeKind::NonNeg, 1});
    p.integer_mask = {true};
    p.implied_integer_mask = {false};
    return p;
}

LoopConfig base_config(Normalization norm) {
    LoopConfig cfg;
    cfg.norm = std::move(norm);
    return cfg;
}

// All integer-feasible points of the disc instance with R in (1, sqrt(2)).
std::vector<Vector> disc_integer_points(double R) {
    return {vecn({R, 0.0, 0.0}), vecn({R, 1.0, 0.0}), vecn({R, -1.0, 0.0}),
            vecn({R, 0.0, 1.0}), vecn({R, 0.0, -1.0})};
}

// No stored row may cut off any of the given feasible points.
void check_safety(const Report& report, const std::vector<Vector>& points) {
    for (std::size_t i = 0; i < report.cuts.size(); ++i) {
        const CutRecord& cut = report.cuts[i];
        for (const Vector& p : points) {
            CAPTURE(i);
            CAPTURE(cut.origin);
            CHECK(cut.alpha.dot(p) >= cut.beta - 1e-6);
        }
    }
}

// Bounds and gap percentages never move backwards across rounds.
void check_monotone(const Report& report) {
    for (std::size_t i = 1; i < report.rounds.size(); ++i) {
        CAPTURE(i);
        CHECK(report.rounds[i].z_bound >=
              report.rounds[i - 1].z_bound - 1e-9);
        if (report.rounds[i].gap_pct && report.rounds[i - 1].gap_pct) {
            CHECK(*report.rounds[i].gap_pct >=
                  *report.rounds[i - 1].gap_pct - 1e-9);
        }
    }
}

// Drop the trailing (seconds) column of every CSV line.
std::string strip_seconds_column(const std::string& csv) {
    std::string out;
    std::size_t start = 0;
    while (start < csv.size()) {
        std::size_t end = csv.find('\n', start);
        if (end == std::string::npos) end = csv.size();
        const std::string line = csv.substr(start, end - start);
        const std::size_t comma = line.rfind(',');
        out += comma == std::string::npos ? line : line.substr(0, comma);
        out += '\n';
        start = end + 1;
    }
    return out;
}

void scrub_seconds(nlohmann::ordered_json& j) {
    if (j.is_object()) {
        for (auto& item : j.items()) {
            if (item.key() == "seconds") {
                item.value() = 0.0;
            } else {
                scrub_seconds(item.value());
            }
        }
    } else if (j.is_array()) {
        for (auto& item : j) scrub_seconds(item);
    }
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t end = line.find(sep, start);
        fields.push_back(line.substr(start, end == std::string::npos
                                                ? std::string::npos
                                                : end - start));
        if (end == std::string::npos) break;
        start = end + 1;
    }
    return fields;
}

}  // namespace

TEST_SUITE("cutloop") {

TEST_CASE("clean zeroes small entries with an inclusive boundary") {
    const Vector v = vecn({1e-9, 0.5, -1e-7, 0.0, -2e-7});
    const Vector out = clean(v, 1e-7);
    CHECK(out(0) == 0.0);
    CHECK(out(1) == 0.5);
    CHECK(out(2) == 0.0);  // |entry| equal to the threshold is cleaned too
    CHECK(out(3) == 0.0);
    CHECK(out(4) == -2e-7);  // strictly above the threshold survives
    CHECK(v(0) == 1e-9);     // the input is copied, not modified
}

TEST_CASE("gap_closed ratio, clamping, and undefined cases") {
    REQUIRE(gap_closed(0.0, 10.0, 4.0).has_value());
    CHECK(*gap_closed(0.0, 10.0, 4.0) == doctest::Approx(40.0));
    CHECK(*gap_closed(0.0, 10.0, 0.0) == doctest::Approx(0.0));
    CHECK(*gap_closed(0.0, 10.0, 10.0) == doctest::Approx(100.0));
    CHECK(*gap_closed(0.0, 10.0, 12.0) == 100.0);  // clamped from above
    CHECK(*gap_closed(0.0, 10.0, -3.0) == 0.0);    // clamped from below
    CHECK_FALSE(gap_closed(1.0, 1.0, 1.0).has_value());
    CHECK_FALSE(gap_closed(5.0, 3.0, 4.0).has_value());

    // Disc geometry: the two symmetric facets move the bound from
    // -R*sqrt(2) to -2R/(1 + R - sqrt(R^2 - 1)) while the best integer
    // point sits at -1.
    const double R = 1.1;
    const double z_cp = -R * std::sqrt(2.0);
    const double s = R - std::sqrt(R * R - 1.0);
    const double z_facets = -2.0 * R / (1.0 + s);
    REQUIRE(gap_closed(z_cp, -1.0, z_facets).has_value());
    CHECK(*gap_closed(z_cp, -1.0, z_facets) ==
          doctest::Approx(38.801).epsilon(1e-3));
}

TEST_CASE("status and mode names are stable strings") {
    CHECK(std::string(loop_status_name(LoopStatus::NoViolatedCuts)) ==
          "no-violated-cuts");
    CHECK(std::string(loop_status_name(LoopStatus::RoundLimit)) ==
          "round-limit");
    CHECK(std::string(loop_status_name(LoopStatus::TimeLimit)) ==
          "time-limit");
    CHECK(std::string(relaxation_mode_name(RelaxationMode::OuterApprox)) ==
          "outer-approximation");
    CHECK(std::string(relaxation_mode_name(RelaxationMode::Conic)) ==
          "conic");
}

TEST_CASE("config validation rejects bad tolerances and rotated blocks") {
    const StandardProblem p = disc_instance(1.1);

    LoopConfig cfg = base_config(standard_normalization());
    cfg.eps_K = 1e-8;  // below the point-cleaning threshold
    CHECK_THROWS_AS(init_loop(p, cfg), std::invalid_argument);

    cfg = base_config(standard_normalization());
    cfg.violation_threshold = 0.0;
    CHECK_THROWS_AS(init_loop(p, cfg), std::invalid_argument);

    cfg = base_config(standard_normalization());
    cfg.clean_beta = -1.0;
    CHECK_THROWS_AS(init_loop(p, cfg), std::invalid_argument);

    cfg = base_config(standard_normalization());
    cfg.max_rounds = -1;
    CHECK_THROWS_AS(init_loop(p, cfg), std::invalid_argument);

    cfg = base_config(standard_normalization());
    cfg.refine_cap = -1;
    CHECK_THROWS_AS(init_loop(p, cfg), std::invalid_argument);

    StandardProblem rotated;
    rotated.c = vecn({0.0, 0.0, 0.0});
    rotated.A.resize(1, 3);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    rotated.A.setFromTriplets(trips.begin(), trips.end());
    rotated.b = Vector::Constant(1, 1.0);
    rotated.K.push_block(Cone{ConeKind::RSOC, 3});
    rotated.integer_mask = {false, false, false};
    rotated.implied_integer_mask = {false, false, false};
    CHECK_THROWS_AS(init_loop(rotated, base_config(standard_normalization())),
                    std::invalid_argument);
}

TEST_CASE("init_loop seeds the outer approximation and pins the conic bound") {
    const StandardProblem p = disc_instance(1.1);
    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);

    // The conic baseline is the arc optimum; the seeded LP sits below it.
    CHECK(s.z_cp == doctest::Approx(-1.1 * std::sqrt(2.0)).epsilon(1e-6));
    CHECK(s.z_star == doctest::Approx(-2.2).epsilon(1e-6));
    CHECK(s.z_star < s.z_cp);

    // Seed rows for one second-order block of dimension 3: the head bound
    // plus head +/- tail for each tail coordinate, all dual-cone members.
    REQUIRE(s.cuts.size() == 5);
    CHECK(s.cuts[0].alpha == vecn({1.0, 0.0, 0.0}));
    CHECK(s.cuts[1].alpha == vecn({1.0, 1.0, 0.0}));
    CHECK(s.cuts[2].alpha == vecn({1.0, -1.0, 0.0}));
    CHECK(s.cuts[3].alpha == vecn({1.0, 0.0, 1.0}));
    CHECK(s.cuts[4].alpha == vecn({1.0, 0.0, -1.0}));
    for (const CutRecord& cut : s.cuts) {
        CHECK(cut.origin == "seed");
        CHECK(cut.round == 0);
        CHECK(cut.beta == 0.0);
        CHECK(cut.kind == CutClass::KStar);
        CHECK(dual_membership(p.K, cut.alpha, 1e-9));
    }
    CHECK(s.xbar(0) == doctest::Approx(1.1).epsilon(1e-6));
    CHECK(s.xbar(1) == doctest::Approx(1.1).epsilon(1e-6));
    CHECK(s.xbar(2) == doctest::Approx(1.1).epsilon(1e-6));
}

TEST_CASE("init_loop in conic mode starts from the relaxation optimum") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.relaxation = RelaxationMode::Conic;
    LoopState s = init_loop(p, cfg);
    REQUIRE(s.status == LoopStatus::Running);
    CHECK(s.cuts.empty());
    CHECK(s.z_star == doctest::Approx(s.z_cp).epsilon(1e-9));
    const double t = 1.1 / std::sqrt(2.0);
    CHECK(s.xbar(0) == doctest::Approx(1.1).epsilon(1e-5));
    CHECK(s.xbar(1) == doctest::Approx(t).epsilon(1e-4));
    CHECK(s.xbar(2) == doctest::Approx(t).epsilon(1e-4));
}

TEST_CASE("refine adds the bound row of a violated nonnegative block") {
    StandardProblem p;
    p.c = vecn({1.0, 0.0});
    p.A.resize(1, 2);
    std::vector<Triplet> trips{{0, 0, 1.0}, {0, 1, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, 1.0);
    p.K.push_block(Cone{ConeKind::NonNeg, 1});
    p.K.push_block(Cone{ConeKind::NonNeg, 1});
    p.integer_mask = {false, false};
    p.implied_integer_mask = {false, false};

    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);
    CHECK(s.cuts.empty());  // scalar blocks need no seeds

    s.xbar = vecn({-0.5, 1.5});
    const RefineResult out = refine(s);
    CHECK(out.iterations == 1);
    CHECK(out.cuts_added == 1);
    CHECK(out.eta <= 0.05);
    CHECK_FALSE(out.capped);
    REQUIRE(s.cuts.size() == 1);
    CHECK(s.cuts[0].origin == "refine");
    CHECK(s.cuts[0].round == 1);
    CHECK(s.cuts[0].alpha == vecn({1.0, 0.0}));
    CHECK(s.cuts[0].beta == 0.0);
    CHECK(s.xbar(0) >= -1e-7);
}

TEST_CASE("refine drives a second-order violation below the trigger") {
    const StandardProblem p = disc_instance(1.1);
    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);
    const std::size_t seeds = s.cuts.size();

    s.xbar = vecn({0.0, 0.8, 0.6});
    const double eta0 = eta_bar(p.K, s.xbar, s.rho);
    CHECK(eta0 == doctest::Approx(1.0));

    const RefineResult out = refine(s);
    CHECK(out.iterations >= 1);
    CHECK(out.cuts_added >= 1);
    CHECK(out.eta <= 0.05);
    CHECK(out.eta < eta0);
    CHECK_FALSE(out.capped);
    REQUIRE(s.cuts.size() == seeds + static_cast<std::size_t>(out.cuts_added));
    for (std::size_t i = seeds; i < s.cuts.size(); ++i) {
        CHECK(s.cuts[i].origin == "refine");
        CHECK(s.cuts[i].beta == 0.0);
        CHECK(dual_membership(p.K, s.cuts[i].alpha, 1e-7));
    }
}

TEST_CASE("refine reports a cap when no iterations are allowed") {
    const StandardProblem p = disc_instance(1.1);
    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);
    s.config.refine_cap = 0;
    s.xbar = vecn({0.0, 0.8, 0.6});
    const RefineResult out = refine(s);
    CHECK(out.iterations == 0);
    CHECK(out.cuts_added == 0);
    CHECK(out.capped);
    CHECK(out.eta == doctest::Approx(1.0));
}

TEST_CASE("refine suppresses duplicate supporting rows") {
    const StandardProblem p = disc_instance(1.1);
    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);

    s.xbar = vecn({0.0, 0.8, 0.6});
    const RefineResult first = refine(s);
    CHECK(first.cuts_added >= 1);
    const std::size_t after_first = s.cuts.size();

    // The same point wants the same supporting row; nothing new may enter
    // and the phase must stop rather than spin.
    s.xbar = vecn({0.0, 0.8, 0.6});
    const RefineResult second = refine(s);
    CHECK(second.cuts_added == 0);
    CHECK(second.iterations == 0);
    CHECK(second.capped);
    CHECK(s.cuts.size() == after_first);
}

TEST_CASE("refine is a no-op in conic mode") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.relaxation = RelaxationMode::Conic;
    LoopState s = init_loop(p, cfg);
    REQUIRE(s.status == LoopStatus::Running);
    s.xbar = vecn({0.0, 0.8, 0.6});
    const RefineResult out = refine(s);
    CHECK(out.iterations == 0);
    CHECK(out.cuts_added == 0);
    CHECK(out.eta == doctest::Approx(1.0));
    CHECK(s.cuts.empty());
}

TEST_CASE("an unbounded outer approximation is repaired by cutting the ray") {
    // min x0 - 0.6 x1 - 0.6 x2 with x1 = x2 is bounded on the cone (the
    // head always wins) but unbounded over the seeded box rows along the
    // diagonal ray; the driver must cut the certified ray and recover.
    StandardProblem p;
    p.c = vecn({1.0, -0.6, -0.6});
    p.A.resize(1, 3);
    std::vector<Triplet> trips{{0, 1, 1.0}, {0, 2, -1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, 0.0);
    p.K.push_block(Cone{ConeKind::SOC, 3});
    p.integer_mask = {false, false, false};
    p.implied_integer_mask = {false, false, false};

    LoopState s = init_loop(p, base_config(standard_normalization()));
    REQUIRE(s.status == LoopStatus::Running);
    CHECK(std::isfinite(s.z_star));
    CHECK(s.z_cp == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
    CHECK(s.z_star <= 1e-6);
    CHECK(s.z_star >= -1e-4);
    bool any_ray_row = false;
    for (const CutRecord& cut : s.cuts) {
        if (cut.origin == "refine") any_ray_row = true;
    }
    CHECK(any_ray_row);
}

TEST_CASE("two one-sided splits close the whole gap on the boxed pair") {
    const StandardProblem p = box_pair_instance();
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 10;
    cfg.z_micp = 0.0;

    const Report rep = run(p, cfg, "box-pair");
    CHECK(rep.status == "no-violated-cuts");
    REQUIRE(rep.rounds.size() == 2);
    CHECK(rep.z_cp == doctest::Approx(-0.75).epsilon(1e-6));
    CHECK(std::abs(rep.z_star) <= 1e-6);
    REQUIRE(rep.gap_pct.has_value());
    CHECK(*rep.gap_pct == doctest::Approx(100.0).epsilon(1e-6));

    CHECK(rep.total_landp == 2);
    CHECK(rep.rounds[0].landp == 2);
    CHECK(rep.rounds[0].kstar == 0);
    CHECK(rep.rounds[1].landp == 0);
    CHECK(rep.rounds[1].kstar == 0);
    CHECK(rep.rounds[1].refine_cuts == 0);

    // Most fractional coordinate first: y at 0.45 before x at 0.3.
    REQUIRE(rep.cuts.size() == 2);
    CHECK(rep.cuts[0].coordinate == 1);
    CHECK(rep.cuts[1].coordinate == 0);
    CHECK(rep.cuts[0].kind == CutClass::LiftAndProject);
    CHECK(rep.cuts[1].kind == CutClass::LiftAndProject);
    CHECK(rep.cuts[0].round == 1);

    check_safety(rep, {vecn({0.0, 0.0, 0.3, 0.45})});
    check_monotone(rep);
}

TEST_CASE("one standard round on the disc separates both coordinates") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 1;
    cfg.z_micp = -1.0;

    const Report rep = run(p, cfg, "disc");
    CHECK(rep.status == "round-limit");
    REQUIRE(rep.rounds.size() == 1);
    const RoundStats& r = rep.rounds[0];
    CHECK(r.refine_cuts >= 1);  // the seeded box solution is off the cone
    CHECK(r.eta <= 0.05);
    CHECK_FALSE(r.refine_capped);
    CHECK(r.landp == 2);
    CHECK(r.kstar == 0);
    CHECK(r.density_pct > 0.0);
    CHECK(r.density_pct <= 100.0);
    REQUIRE(r.gap_pct.has_value());
    CHECK(*r.gap_pct > 20.0);
    CHECK(*r.gap_pct < 99.0);

    CHECK(rep.z_star >= rep.z_cp - 1e-9);
    CHECK(rep.total_landp == 2);
    CHECK(rep.total_kstar == 0);
    REQUIRE(rep.z_micp.has_value());
    CHECK(*rep.z_micp == doctest::Approx(-1.0));
    CHECK(rep.gap_pct == r.gap_pct);
    CHECK(rep.normalization == "standard");
    CHECK(rep.relaxation == "outer-approximation");
    CHECK(rep.instance == "disc");

    std::set<int> coords;
    for (const CutRecord& cut : rep.cuts) {
        if (cut.kind == CutClass::LiftAndProject) {
            coords.insert(cut.coordinate);
            CHECK(cut.origin == "cgcp");
            CHECK(cut.round == 1);
        }
    }
    CHECK(coords == std::set<int>{1, 2});

    check_safety(rep, disc_integer_points(1.1));
}

TEST_CASE("ten uniform rounds tighten monotonically and spare the optima") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(uniform_normalization());
    cfg.max_rounds = 10;
    cfg.z_micp = -1.0;

    const Report rep = run(p, cfg, "disc");
    const bool finished = rep.status == "no-violated-cuts" ||
                          rep.status == "round-limit";
    CHECK(finished);
    REQUIRE(!rep.rounds.empty());
    check_monotone(rep);
    CHECK(rep.z_star >= rep.z_cp - 1e-9);
    REQUIRE(rep.gap_pct.has_value());
    CHECK(*rep.gap_pct > 20.0);
    check_safety(rep, disc_integer_points(1.1));

    // The ledger never stores the same normalized row twice.
    for (std::size_t i = 0; i < rep.cuts.size(); ++i) {
        const double si = rep.cuts[i].alpha.cwiseAbs().maxCoeff();
        REQUIRE(si > 0.0);
        for (std::size_t j = i + 1; j < rep.cuts.size(); ++j) {
            const double sj = rep.cuts[j].alpha.cwiseAbs().maxCoeff();
            const double diff =
                (rep.cuts[i].alpha / si - rep.cuts[j].alpha / sj)
                    .cwiseAbs()
                    .maxCoeff() +
                std::abs(rep.cuts[i].beta / si - rep.cuts[j].beta / sj);
            CAPTURE(i);
            CAPTURE(j);
            CHECK(diff > 1e-9);
        }
    }

    // Dual-cone records really are dual-cone members with nonpositive rhs.
    for (const CutRecord& cut : rep.cuts) {
        if (cut.kind == CutClass::KStar) {
            CHECK(dual_membership(p.K, cut.alpha, 1e-6));
            CHECK(cut.beta <= 1e-12);
        }
    }
}

TEST_CASE("identical configurations reproduce ledgers and tables exactly") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 3;
    cfg.z_micp = -1.0;

    const Report a = run(p, cfg, "disc");
    const Report b = run(p, cfg, "disc");

    REQUIRE(a.cuts.size() == b.cuts.size());
    for (std::size_t i = 0; i < a.cuts.size(); ++i) {
        CAPTURE(i);
        CHECK(a.cuts[i].origin == b.cuts[i].origin);
        CHECK(a.cuts[i].round == b.cuts[i].round);
        CHECK(a.cuts[i].coordinate == b.cuts[i].coordinate);
        CHECK(a.cuts[i].kind == b.cuts[i].kind);
        CHECK(a.cuts[i].beta == b.cuts[i].beta);
        CHECK((a.cuts[i].alpha - b.cuts[i].alpha).cwiseAbs().maxCoeff() ==
              0.0);
    }
    CHECK(a.rounds.size() == b.rounds.size());
    CHECK(strip_seconds_column(report_csv(a)) ==
          strip_seconds_column(report_csv(b)));

    auto ja = nlohmann::ordered_json::parse(report_json(a));
    auto jb = nlohmann::ordered_json::parse(report_json(b));
    scrub_seconds(ja);
    scrub_seconds(jb);
    CHECK(ja == jb);
}

TEST_CASE("an integral relaxation optimum stops the loop in one round") {
    const StandardProblem p = integral_instance();
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 5;
    cfg.z_micp = 1.0;

    const Report rep = run(p, cfg, "integral");
    CHECK(rep.status == "no-violated-cuts");
    REQUIRE(rep.rounds.size() == 1);
    CHECK(rep.cuts.empty());
    CHECK(rep.z_cp == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.z_star == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(rep.rounds[0].landp == 0);
    CHECK(rep.rounds[0].kstar == 0);
    CHECK(rep.rounds[0].refine_cuts == 0);
    CHECK(rep.rounds[0].eta <= 1e-7);
    REQUIRE(rep.z_micp.has_value());
    CHECK(*rep.z_micp == doctest::Approx(1.0));
}

TEST_CASE("round and time budgets short-circuit before any separation") {
    const StandardProblem p = disc_instance(1.1);

    LoopConfig cfg = base_config(standard_normalization());
    cfg.relaxation = RelaxationMode::Conic;
    cfg.max_rounds = 0;
    cfg.z_micp = -1.0;
    const Report rounds0 = run(p, cfg, "disc");
    CHECK(rounds0.status == "round-limit");
    CHECK(rounds0.rounds.empty());
    CHECK(rounds0.cuts.empty());
    CHECK(rounds0.z_star == doctest::Approx(rounds0.z_cp).epsilon(1e-9));

    cfg.max_rounds = 5;
    cfg.time_limit_seconds = 0.0;
    const Report time0 = run(p, cfg, "disc");
    CHECK(time0.status == "time-limit");
    CHECK(time0.rounds.empty());
}

TEST_CASE("conic relaxation mode separates without refinement rows") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.relaxation = RelaxationMode::Conic;
    cfg.max_rounds = 5;
    cfg.z_micp = -1.0;

    const Report rep = run(p, cfg, "disc");
    const bool finished = rep.status == "no-violated-cuts" ||
                          rep.status == "round-limit";
    CHECK(finished);
    REQUIRE(!rep.rounds.empty());
    CHECK(rep.relaxation == "conic");
    CHECK(rep.rounds[0].landp == 2);
    for (const RoundStats& r : rep.rounds) CHECK(r.refine_cuts == 0);
    for (const CutRecord& cut : rep.cuts) {
        CHECK(cut.origin != "seed");
        CHECK(cut.origin != "refine");
    }
    check_monotone(rep);
    CHECK(rep.z_star >= rep.z_cp - 1e-9);
    REQUIRE(rep.gap_pct.has_value());
    CHECK(*rep.gap_pct > 20.0);
    check_safety(rep, disc_integer_points(1.1));
}

TEST_CASE("gap percentages are invariant under objective sign and offset") {
    StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 2;

    cfg.z_micp = -1.0;
    const Report base = run(p, cfg, "disc");

    // The same model expressed as a maximization: original value 1 maps to
    // the same standardized incumbent -1.
    p.obj_sign = -1.0;
    cfg.z_micp = 1.0;
    const Report negated = run(p, cfg, "disc");

    // And shifted by a constant: original value 4 with offset 5.
    p.obj_sign = 1.0;
    p.obj_offset = 5.0;
    cfg.z_micp = 4.0;
    const Report shifted = run(p, cfg, "disc");

    REQUIRE(base.gap_pct.has_value());
    REQUIRE(negated.gap_pct.has_value());
    REQUIRE(shifted.gap_pct.has_value());
    CHECK(*negated.gap_pct == doctest::Approx(*base.gap_pct).epsilon(1e-12));
    CHECK(*shifted.gap_pct == doctest::Approx(*base.gap_pct).epsilon(1e-12));
    REQUIRE(negated.z_micp.has_value());
    REQUIRE(shifted.z_micp.has_value());
    CHECK(*negated.z_micp == doctest::Approx(-1.0));
    CHECK(*shifted.z_micp == doctest::Approx(-1.0));
    CHECK(negated.obj_sign == -1.0);
    CHECK(shifted.obj_offset == 5.0);
}

TEST_CASE("csv and json carry the run record") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg = base_config(standard_normalization());
    cfg.max_rounds = 2;
    cfg.z_micp = -1.0;
    const Report rep = run(p, cfg, "disc");

    const std::string csv = report_csv(rep);
    const std::string header = "round,kstar,landp,density_pct,gap_pct,seconds";
    REQUIRE(csv.substr(0, header.size()) == header);
    std::size_t newlines = 0;
    for (char c : csv) {
        if (c == '\n') ++newlines;
    }
    CHECK(newlines == rep.rounds.size() + 1);

    const auto j = nlohmann::ordered_json::parse(report_json(rep));
    CHECK(j["instance"] == "disc");
    CHECK(j["normalization"] == "standard");
    CHECK(j["relaxation"] == "outer-approximation");
    CHECK(j["status"] == rep.status);
    CHECK(j["z_cp"].get<double>() == doctest::Approx(rep.z_cp));
    CHECK(j["rounds"].size() == rep.rounds.size());
    CHECK(j["cuts"].size() == rep.cuts.size());
    REQUIRE(!rep.cuts.empty());
    CHECK(j["cuts"][0]["origin"] == rep.cuts[0].origin);

    // Sparse coefficients round-trip to the stored dense row.
    Vector rebuilt = Vector::Zero(rep.cuts[0].alpha.size());
    for (const auto& pair : j["cuts"][0]["alpha"]) {
        rebuilt(pair[0].get<int>()) = pair[1].get<double>();
    }
    CHECK((rebuilt - rep.cuts[0].alpha).cwiseAbs().maxCoeff() == 0.0);

    // Without an incumbent the gap column is empty and the JSON null.
    LoopConfig nogap = base_config(standard_normalization());
    nogap.max_rounds = 1;
    const Report rep2 = run(p, nogap, "disc");
    const auto j2 = nlohmann::ordered_json::parse(report_json(rep2));
    CHECK(j2["gap_pct"].is_null());
    CHECK(j2["z_micp"].is_null());
    const std::string csv2 = report_csv(rep2);
    const std::size_t line_start = csv2.find('\n') + 1;
    const std::size_t line_end = csv2.find('\n', line_start);
    const auto fields =
        split(csv2.substr(line_start, line_end - line_start), ',');
    REQUIRE(fields.size() == 6);
    CHECK(fields[4].empty());
}

TEST_CASE("polar normalization anchors at the analytic center") {
    const StandardProblem p = disc_instance(1.1);
    Normalization polar;
    polar.kind = Normalization::Kind::Polar;
    LoopConfig cfg = base_config(polar);
    cfg.max_rounds = 2;
    cfg.z_micp = -1.0;

    LoopState s = init_loop(p, cfg);
    REQUIRE(s.status == LoopStatus::Running);
    REQUIRE(s.polar_center.has_value());
    CHECK(eta_bar(p.K, *s.polar_center, s.rho) == 0.0);

    const Report rep = run(p, cfg, "disc");
    CHECK(rep.normalization == "polar");
    CHECK(rep.total_landp >= 1);
    REQUIRE(rep.gap_pct.has_value());
    CHECK(*rep.gap_pct > 0.0);
    check_safety(rep, disc_integer_points(1.1));
}

TEST_CASE("a fixed polar direction skips the center computation") {
    const StandardProblem p = disc_instance(1.1);
    LoopConfig cfg =
        base_config(polar_normalization(vecn({0.0, -0.78, -0.78})));
    cfg.max_rounds = 1;
    cfg.z_micp = -1.0;

    LoopState s = init_loop(p, cfg);
    REQUIRE(s.status == LoopStatus::Running);
    CHECK_FALSE(s.polar_center.has_value());

    const Report rep = run(p, cfg, "disc");
    CHECK(rep.total_landp >= 1);
    check_safety(rep, disc_integer_points(1.1));
}

TEST_CASE("polar without an interior point reports a solver failure") {
    StandardProblem p;
    p.c = vecn({1.0});
    p.A.resize(1, 1);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    p.A.setFromTriplets(trips.begin(), trips.end());
    p.b = Vector::Constant(1, 0.0);  // the only feasible point is boundary
    p.K.push_block(Cone{ConeKind::NonNeg, 1});
    p.integer_mask = {false};
    p.implied_integer_mask = {false};

    Normalization polar;
    polar.kind = Normalization::Kind::Polar;
    const LoopConfig cfg = base_config(polar);

    LoopState s = init_loop(p, cfg);
    CHECK(s.status == LoopStatus::SolverFailure);
    CHECK(!s.message.empty());

    const Report rep = run(p, cfg, "point");
    CHECK(rep.status == "solver-failure");
    CHECK(rep.rounds.empty());
}

TEST_CASE("infeasible and unbounded relaxations are reported, not thrown") {
    StandardProblem infeasible;
    infeasible.c = vecn({1.0});
    infeasible.A.resize(1, 1);
    std::vector<Triplet> trips{{0, 0, 1.0}};
    infeasible.A.setFromTriplets(trips.begin(), trips.end());
    infeasible.b = Vector::Constant(1, -1.0);
    infeasible.K.push_block(Cone{ConeKind::NonNeg, 1});
    infeasible.integer_mask = {false};
    infeasible.implied_integer_mask = {false};

    const Report bad = run(infeasible, base_config(standard_normalization()),
                           "infeasible");
    CHECK(bad.status == "infeasible");
    CHECK(bad.rounds.empty());

    StandardProblem unbounded;
    unbounded.c = vecn({-1.0, 0.0});
    unbounded.A.resize(1, 2);
    std::vector<Triplet> trips2{{0, 0, 1.0}, {0, 1, -1.0}};
    unbounded.A.setFromTriplets(trips2.begin(), trips2.end());
    unbounded.b = Vector::Constant(1, 0.0);
    unbounded.K.push_block(Cone{ConeKind::NonNeg, 1});
    unbounded.K.push_block(Cone{ConeKind::Free, 1});
    unbounded.integer_mask = {false, false};
    unbounded.implied_integer_mask = {false, false};

    const Report ray = run(unbounded, base_config(standard_normalization()),
                           "unbounded");
    CHECK(ray.status == "unbounded");
    CHECK(ray.rounds.empty());
}

}  // TEST_SUITE
