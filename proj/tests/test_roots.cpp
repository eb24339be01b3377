#include "cubic/error.hpp"
#include "cubic/roots.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace cubic;

namespace {
bool brackets(const MonicCubic& f, const IsolatedRoot& r) {
    if (r.exact) return oracle::eval(f, r.lo) == 0;
    return oracle::sign_at(f, r.lo) * oracle::sign_at(f, r.hi) < 0;
}
}  // namespace

TEST_CASE("isolation of x^3 - 3x - 1") {
    MonicCubic f(0, -3, -1);
    auto roots = isolate_real_roots(f);
    auto ref = oracle::trig_roots(f, 128);
    for (int i = 0; i < 3; ++i) {
        CHECK(brackets(f, roots[i]));
        Rational x = ref[i].to_rational();
        CHECK(roots[i].lo <= x);
        CHECK(x <= roots[i].hi);
    }
    CHECK(roots[0].hi <= roots[1].lo);
    CHECK(roots[1].hi <= roots[2].lo);
    CHECK(abs(ref[0] - Real(-1.532)) < Real(1e-3));
    CHECK(abs(ref[1] - Real(-0.347)) < Real(1e-3));
    CHECK(abs(ref[2] - Real(1.879)) < Real(1e-3));
}

TEST_CASE("isolation of a one-unit member") {
    // x(x - 2)(x + 100) + 1
    MonicCubic f(98, -200, 1);
    auto r = refined_roots(f, {96, 4096});
    CHECK(abs(r[0].value - Real(-100)) < Real(0.01));
    CHECK(abs(r[1].value - Real(0.005)) < Real(0.001));
    CHECK(abs(r[2].value - Real(2)) < Real(0.01));
}

TEST_CASE("reducible input with an integer root") {
    MonicCubic f(-2, 0, 1);
    auto roots = isolate_real_roots(f);
    int hits = 0;
    for (auto& r : roots) {
        CHECK(brackets(f, r));
        IsolatedRoot x = refine_root(f, r, {64, 4096});
        if (x.lo <= 1 && 1 <= x.hi) ++hits;
    }
    CHECK(hits == 1);
}

TEST_CASE("non totally real input is rejected") {
    CHECK_THROWS_AS(isolate_real_roots(MonicCubic(0, 1, 1)), Error);
    CHECK_THROWS_AS(isolate_real_roots(MonicCubic(0, 0, 0)), Error);
}

TEST_CASE("refinement reaches the target") {
    MonicCubic f(0, -3, -1);
    auto r = refined_roots(f, {128, 4096});
    auto ref = oracle::trig_roots(f, 512);
    for (int i = 0; i < 3; ++i) {
        CHECK(r[i].certified_bits >= 128);
        CHECK(r[i].err <= pow2(-128));
        CHECK(abs(r[i].value - ref[i]) <= r[i].err);
        CHECK(brackets(f, r[i]));
        CHECK(r[i].hi - r[i].lo <= Rational(Integer(1), ipow(2, 128)));
    }
    CHECK(r[2].value.to_string(14) == "1.8793852415718e+0");
    // refining again changes nothing
    IsolatedRoot again = refine_root(f, r[2], {128, 4096});
    CHECK(again.lo == r[2].lo);
    CHECK(again.hi == r[2].hi);
}

TEST_CASE("Vieta relations and discriminant on random totally real cubics") {
    oracle::Rng rng(41);
    const Bits target = 192;
    for (int i = 0; i < 300; ++i) {
        MonicCubic f = oracle::random_totally_real(rng, 1000000);
        auto r = refined_roots(f, {target, 8192});
        PrecisionGuard g(512);
        Real a = r[0].value, b = r[1].value, c = r[2].value;
        Real tol = pow2(-static_cast<long>(target) + 8 + 40);  // relative, with room for the coefficient sizes
        auto rel_ok = [&](const Real& got, const Integer& want) {
            if (want == 0) return abs(got) < tol;
            return abs(got - Real(want, 512)) <= tol * abs(Real(want, 512));
        };
        CHECK(rel_ok(a + b + c, Integer(-f.p2)));
        CHECK(rel_ok(a * b + a * c + b * c, f.p1));
        CHECK(rel_ok(a * b * c, Integer(-f.p0)));
        Real disc = oracle::root_product(std::array<Real, 3>{a, b, c});
        Real D(discriminant(f), 512);
        CHECK(abs(disc - D) <= pow2(-static_cast<long>(target) / 2) * D);
    }
}

TEST_CASE("precision cap") {
    MonicCubic f(Integer("100000000000000000000"), -3, -1);
    CHECK_THROWS_AS(refined_roots(f, {200, 250}), Error);
    try {
        refined_roots(f, {200, 250});
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PrecisionExhausted);
    }
    CHECK_THROWS_AS(refine_root(f, isolate_real_roots(f)[0], {300, 200}), Error);
}

TEST_CASE("asymptotic predictions") {
    TwoUnitParams p{3, 1, 2, 1, 1, 1, 1};
    Integer t = 1000000;
    PrecisionGuard g(256);
    AsymptoticRoots a = asymptotic_roots(p, t);
    CHECK(a.reliable);
    auto r = refined_roots(build_two_unit(p, t), {192, 4096});
    // near 1/3 is the middle root, near 1/2 the largest, -6t the smallest
    Real third = Real(1) / Real(3);
    CHECK(abs(r[1].value - third) <= Real(4) / (Real(27) * Real(t, 256)));
    CHECK(abs(a.values[0] - r[1].value) < abs(r[1].value - third));
    CHECK(abs(a.values[1] - r[2].value) < Real(1e-6));
    CHECK(abs(a.values[2] - r[0].value) < Real(1e-6));
    CHECK(abs(r[0].value + Real(6) * Real(t, 256)) < Real(2));
    CHECK(a.tags[2] == "-act+O(1)");

    CHECK_FALSE(asymptotic_roots(p, 10).reliable);
    CHECK(asymptotic_threshold(p) == 16 * 7 * 7 * 7);

    // one-unit (1, b): the root near 0 is Θ(1/(tb))
    OneUnitParams q{1, 5, 1, 1};
    for (long e = 6; e <= 12; e += 3) {
        Integer T = ipow(10, e);
        auto rr = refined_roots(build_one_unit(q, T), {192, 4096});
        Real small = rr[1].value * Real(T, 256) * Real(5);
        CHECK(abs(small) > Real(0.5));
        CHECK(abs(small) < Real(2));
    }
}

TEST_CASE("Newton hypotheses hold above the threshold") {
    TwoUnitParams p{3, 1, 2, 1, 1, 1, 1};
    Integer T0 = asymptotic_threshold(p);
    for (int k = 0; k < 10; ++k) {
        Integer t = T0 * ipow(2, k);
        MonicCubic h = build_two_unit(p, t);
        CHECK(newton_hypotheses(h, Rational(1, 3)).all());
        CHECK(newton_hypotheses(h, Rational(1, 2)).all());
    }
    OneUnitParams q{2, 1, 1, 1};
    Integer T1 = asymptotic_threshold(q);
    for (int k = 0; k < 10; ++k) {
        Integer t = T1 * ipow(2, k);
        MonicCubic h = build_one_unit(q, t);
        CHECK(newton_hypotheses(h, Rational(1, 2)).all());
        CHECK(newton_hypotheses(h, Rational(0)).all());
    }
}

TEST_CASE("one-unit root near b/a shrinks like 1/t") {
    OneUnitParams q{2, 1, 1, 1};
    std::vector<double> xs, ys;
    PrecisionGuard g(256);
    for (int k = 10; k <= 30; ++k) {
        Integer t = ipow(2, k);
        auto r = refined_roots(build_one_unit(q, t), {192, 4096});
        Real best = abs(r[0].value - Real(0.5));
        for (auto& x : r) best = min(best, abs(x.value - Real(0.5)));
        xs.push_back(k * std::log(2.0));
        ys.push_back(std::log(best.to_double()));
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= xs.size();
    my /= ys.size();
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    CHECK(std::abs(sxy / sxx + 1) < 0.15);
}
