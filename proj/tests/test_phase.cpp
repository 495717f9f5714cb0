#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "affsol/phase.hpp"
#include "affsol/rng.hpp"

using namespace affsol;
using Catch::Approx;

TEST_CASE("vector fields") {
    CHECK(phase_rhs(PhaseSystemTag::sys_1c, {2.0, 1.0}).x == 1.0);
    CHECK(phase_rhs(PhaseSystemTag::sys_1c, {2.0, 1.0}).y == 1.0);   // (2-1)^3
    CHECK(phase_rhs(PhaseSystemTag::sys_1e, {1.0, 1.0}).y == -8.0);  // -(1+1)^3
    CHECK(phase_rhs(PhaseSystemTag::sys_1c_wv, {2.0, 1.0}).x == Approx(1.0 - 8.0));
    CHECK(phase_rhs(PhaseSystemTag::sys_1e_wv, {0.0, 8.0}).y == Approx(-3.0 * 4.0 * 8.0));
}

TEST_CASE("the non-Lipschitz lifted system is never integrated directly") {
    StopCondition stop;
    CHECK_THROWS_AS(integrate(PhaseSystemTag::sys_1e_wv, {1.0, 1.0}, +1, stop), Error);
}

TEST_CASE("starting at the origin singularity is rejected") {
    StopCondition stop;
    CHECK_THROWS_AS(integrate(PhaseSystemTag::sys_1e, {0.0, 0.0}, +1, stop),
                    SingularStart);
}

TEST_CASE("inward spiral with monotone Lyapunov values") {
    StopCondition stop;
    stop.max_span = 120.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1e, {1.0, 0.0}, +1, stop);
    REQUIRE(traj.states.size() > 100);

    double prev = lyapunov_1e(traj.states.front().uv);
    double prev_lifted = lyapunov_1e_lifted(traj.states.front().uv);
    for (const PhaseState& s : traj.states) {
        const double e = lyapunov_1e(s.uv);
        const double el = lyapunov_1e_lifted(s.uv);
        CHECK(e <= prev + 1e-8);
        CHECK(el <= prev_lifted + 1e-8);
        prev = e;
        prev_lifted = el;
    }
    // it spirals: many alternating extrema, amplitude shrinking
    CHECK(lyapunov_1e(traj.states.back().uv) < 0.05);
    CHECK(traj.events.size() > 10);
}

TEST_CASE("sector trajectories of the expansion-translation system blow up") {
    // u0 - v0 > 0, v0 > 0: both u and v grow along the forward trajectory
    StopCondition stop;
    stop.max_span = 50.0;
    stop.max_radius = 300.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1c, {1.0, 0.5}, +1, stop);
    CHECK(traj.stop_reason == "radius");
    const Vec2 last = traj.states.back().uv;
    CHECK(last.x > 100.0);
    CHECK(last.y > 100.0);
    // u stays monotone increasing
    for (std::size_t i = 1; i < traj.states.size(); ++i)
        CHECK(traj.states[i].uv.x >= traj.states[i - 1].uv.x);
}

TEST_CASE("centrosymmetry: negated starts give pointwise-negated trajectories") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const PhaseSystemTag sys =
            trial % 2 == 0 ? PhaseSystemTag::sys_1e : PhaseSystemTag::sys_1c;
        Vec2 start{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        if (start.norm() < 0.2) start = {0.5, -0.3};
        StopCondition stop;
        stop.max_span = 6.0;
        stop.max_radius = 50.0;
        TrajectorySegment a = integrate(sys, start, +1, stop);
        TrajectorySegment b = integrate(sys, -start, +1, stop);
        REQUIRE(a.states.size() == b.states.size());
        for (std::size_t i = 0; i < a.states.size(); ++i) {
            CHECK(std::abs(a.states[i].uv.x + b.states[i].uv.x) <= 1e-9);
            CHECK(std::abs(a.states[i].uv.y + b.states[i].uv.y) <= 1e-9);
        }
    }
}

TEST_CASE("event locations are refined below 1e-9 residual") {
    StopCondition stop;
    stop.max_span = 40.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1e, {1.0, 0.0}, +1, stop);
    REQUIRE(traj.events.size() > 5);
    for (const PhaseEvent& e : traj.events)
        CHECK(std::abs(event_value(e.kind, e.uv)) < 1e-9);
    // events come out ordered along the trajectory
    for (std::size_t i = 1; i < traj.events.size(); ++i)
        CHECK(traj.events[i].x > traj.events[i - 1].x);
}

TEST_CASE("first-return map of the contraction-translation system") {
    // phi is decreasing in u0 and bounded by 2
    const double f1 = first_return_positive_u(-0.5);
    const double f2 = first_return_positive_u(-1.0);
    const double f3 = first_return_positive_u(-2.0);
    CHECK(f3 > f2);
    CHECK(f2 > f1);
    CHECK(f3 <= 2.0);
    CHECK(f1 > 0.0);
}

TEST_CASE("gap-bound constants") {
    auto [a, b] = bound_constants();
    CHECK(a == Approx(1.5590847497554112).epsilon(1e-10));
    CHECK(b == Approx(1.8540746773013719).epsilon(1e-10));
    CHECK(a > 0.0);
    CHECK(std::isfinite(b));
}

TEST_CASE("oscillation report from the reference trajectory") {
    StopCondition stop;
    stop.max_span = 200.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1e, {1.0, 0.0}, +1, stop);
    OscillationReport rep = oscillation_sequences(traj);

    CHECK(rep.interleaving_ok);
    CHECK(rep.alternation_ok);
    CHECK(rep.amplitude_decreasing);
    REQUIRE(rep.x_extrema.size() >= 5);

    // the start is the first extremum: a maximum with positive value
    CHECK(rep.f_at_x.front() == Approx(1.0));

    REQUIRE(rep.claim6_ok.size() >= 5);
    REQUIRE(rep.claim7_ok.size() >= 4);
    for (bool ok : rep.claim6_ok) CHECK(ok);
    for (bool ok : rep.claim7_ok) CHECK(ok);

    // |f'| at inflections and |f| at extrema decay toward zero
    CHECK(std::abs(rep.fp_at_y.back()) < std::abs(rep.fp_at_y.front()));
    CHECK(std::abs(rep.f_at_x.back()) < 0.5 * std::abs(rep.f_at_x.front()));

    // inter-extremum gaps x_{n+1} - y_n grow over the computed range
    const std::size_t n = rep.claim6_ok.size();
    const double first_gap = rep.x_extrema[1] - rep.y_inflections[0];
    const double last_gap = rep.x_extrema[n] - rep.y_inflections[n - 1];
    CHECK(last_gap > first_gap);
}

TEST_CASE("too-short trajectories are refused") {
    StopCondition stop;
    stop.max_span = 2.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1e, {1.0, 0.0}, +1, stop);
    CHECK_THROWS_AS(oscillation_sequences(traj), TooFewOscillations);
    TrajectorySegment wrong = integrate(PhaseSystemTag::sys_1c, {1.0, 0.5}, +1, stop);
    CHECK_THROWS_AS(oscillation_sequences(wrong), WrongRegime);
}

TEST_CASE("separatrix search") {
    SeparatrixResult sep = find_separatrix(0.1, 1e-9);
    CHECK(sep.initial.x == 0.1);
    CHECK(sep.initial.y > 0.0);
    CHECK(sep.initial.y < 0.1);
    CHECK(sep.bracket_hi - sep.bracket_lo <= 1e-9);

    SECTION("bracket endpoints classify to distinct routes") {
        CHECK(classify_backward_route({0.1, 0.0}, 60.0, 0.1) == EscapeRoute::phi_axis);
        CHECK(classify_backward_route({0.1, 0.1}, 60.0, 0.1) ==
              EscapeRoute::psi_diagonal);
    }
    SECTION("the backward separatrix trajectory hugs the origin for a long span") {
        StopCondition stop;
        stop.max_span = 50.0;
        stop.origin_ball = 1e-30;
        TrajectorySegment traj =
            integrate(PhaseSystemTag::sys_1c, sep.initial, -1, stop);
        CHECK(traj.stop_reason == "span");
        for (const PhaseState& s : traj.states) CHECK(s.uv.norm() < 0.2);
    }
    SECTION("a span budget too small to commit raises BracketFailure") {
        CHECK_THROWS_AS(find_separatrix(0.1, 1e-3, 1e-4, 1e-4), BracketFailure);
    }
}

TEST_CASE("tail bound along the unbounded backward trajectory") {
    const double u0 = find_unbounded_start(1e-12);
    CHECK(u0 <= 2.0 + 1e-6);

    StopCondition stop;
    stop.max_span = 400.0;
    stop.max_radius = 60.0;
    TrajectorySegment traj = integrate(PhaseSystemTag::sys_1e, {u0, 0.0}, -1, stop);
    Claim5Report rep = claim5_check(traj);
    CHECK(rep.regime_ok);
    CHECK(rep.all_hold);
    CHECK(rep.n_checked > 20);
    CHECK(rep.worst_margin >= 0.0);

    SECTION("arithmetic of the bound at a sample point") {
        const double v = 1.01;
        CHECK(-v + 2.0 * std::cbrt(v) == Approx(0.99664).epsilon(1e-3));
        CHECK(-v + 2.0 * std::cbrt(v) > 0.0);
    }
    SECTION("inward spirals are rejected as the wrong regime") {
        StopCondition s2;
        s2.max_span = 60.0;
        TrajectorySegment spiral = integrate(PhaseSystemTag::sys_1e, {1.0, 0.0}, +1, s2);
        CHECK_FALSE(claim5_check(spiral).regime_ok);
    }
}
