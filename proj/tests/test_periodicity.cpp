#include <map>
#include <numeric>
#include <random>

#include "betanum/error.hpp"
#include "betanum/periodicity.hpp"
#include "doctest.h"

using namespace betanum;

namespace {

const std::vector<long> kGolden{-1, -1, 1};
const std::vector<long> kTribonacci{-1, -1, -1, 1};
const std::vector<long> kSmallest{-1, -1, 0, 1};
const std::vector<long> kTwoPlusSqrt2{2, -4, 1};

// Golden orbit oracle on pairs u + v*phi with phi^2 = phi + 1; floor decided
// by squaring v*sqrt5 against an integer bound.
struct GoldenOracle {
    using Q = Rational;
    static bool geq(const Q& u, const Q& v, long n) {
        // u + v(1 + sqrt5)/2 >= n  <=>  v sqrt5 >= 2(n - u) - v
        const Q r = 2 * (n - u) - v;
        const int sv = sgn(v), sr = sgn(r);
        if (sv >= 0 && sr <= 0) return true;
        if (sv <= 0 && sr > 0) return false;
        const Q lhs = 5 * v * v, rhs = r * r;
        return sv > 0 ? lhs >= rhs : lhs <= rhs;
    }
    static long floor(const Q& u, const Q& v) {
        long n = 0;
        while (geq(u, v, n + 1)) ++n;
        while (!geq(u, v, n)) --n;
        return n;
    }
    static bool purely_periodic(const Q& x) {
        std::map<std::pair<Q, Q>, int> seen;
        Q u = x, v = 0;
        for (int step = 0;; ++step) {
            auto [it, fresh] = seen.emplace(std::pair{u, v}, step);
            if (!fresh) return it->second == 0;
            const Q nu = v, nv = u + v;  // phi * (u + v phi)
            u = nu - floor(nu, nv);
            v = nv;
        }
    }
};

}  // namespace

TEST_CASE("natural extension fixes the origin") {
    auto f = PisotField::make(kTribonacci);
    auto sp = places(f);
    auto s = natural_extension_step(sp, extension_state(sp, f.zero()));
    CHECK(*s.exact == f.zero());
    for (const auto& z : s.point.arch) CHECK(std::abs(z) == 0.0L);
}

TEST_CASE("natural extension conjugates T_beta on exact points") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto f = PisotField::make(c);
        auto sp = places(f);
        for (const auto& x : sample_elements(f, 500, 11)) {
            auto lhs = natural_extension_step(sp, extension_state(sp, x));
            auto rhs = extension_state(sp, t_beta(x));
            CHECK(*lhs.exact == *rhs.exact);
            CHECK(state_deviation(sp, lhs, rhs) < 1e-9);
        }
    }
}

TEST_CASE("golden: beta - 1 maps to the origin") {
    auto f = PisotField::make(kGolden);
    auto sp = places(f);
    auto x = f.beta() - f.one();
    auto s = natural_extension_step(sp, extension_state(sp, x));
    CHECK(s.exact->is_zero());
    CHECK(std::abs(s.point.arch[0]) < 1e-15L);
}

TEST_CASE("inexact states") {
    auto f = PisotField::make(kGolden);
    auto sp = places(f);
    NaturalExtensionState s;
    s.point = sp.zero();
    s.point.real_coord = 0.3L;
    auto r = natural_extension_step(sp, s);
    CHECK(static_cast<double>(*r.point.real_coord) == doctest::Approx(0.3 * 1.6180339887498949));
    s.point.real_coord = (f.beta() - f.one()).approx();
    CHECK_THROWS_AS(natural_extension_step(sp, s), FloorUndecidable);
    s.point.real_coord = 1.0L;
    CHECK_THROWS_AS(natural_extension_step(sp, s), OutOfRange);
    CHECK_THROWS_AS(natural_extension_step(sp, extension_state(sp, f.one())), OutOfRange);
}

TEST_CASE("shift and its inverse") {
    TwoSidedWord w{{1, 0, 2}, canonical({0, 1}, {2, 0})};
    auto s = shift(w);
    CHECK(s.left == DigitWord{0, 1, 0, 2});
    CHECK(s.right == canonical({1}, {2, 0}));
    auto back = shift_inverse(s);
    CHECK(back.left == w.left);
    CHECK(back.right == w.right);
    TwoSidedWord z{{}, canonical({}, {})};
    CHECK(shift(z).left == DigitWord{0});
}

TEST_CASE("commutation on the all-zero word") {
    auto f = PisotField::make(kTribonacci);
    auto sp = places(f);
    auto pa = classify_parry(f);
    TwoSidedWord z{DigitWord(32, 0), canonical({}, {})};
    auto rep = check_commutation(sp, pa, {z}, {f.zero()});
    CHECK(rep.samples == 1);
    CHECK(rep.max() == 0.0);
}

TEST_CASE("commutation relations on random admissible words") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto f = PisotField::make(c);
        auto sp = places(f);
        auto pa = classify_parry(f);
        auto words = sample_two_sided(pa, 1000, 32, 5);
        for (const auto& w : words) REQUIRE(admissible(pa, w.right, true));
        auto rep = check_commutation(sp, pa, words, sample_elements(f, 300, 6));
        CHECK(rep.samples == 1000);
        CHECK(rep.excluded == 0);
        CHECK(rep.prop1 < 1e-8);
        CHECK(rep.prop2 < 1e-8);
        CHECK(rep.minus < 1e-8);
    }
}

TEST_CASE("hypothesis failures are excluded") {
    auto f = PisotField::make(kTribonacci);
    auto sp = places(f);
    auto pa = classify_parry(f);
    TwoSidedWord w{{0, 1}, pa.d_star};
    auto rep = check_commutation(sp, pa, {w}, {});
    CHECK(rep.excluded == 1);
    CHECK(rep.samples == 0);

    auto n = PisotField::make(kTwoPlusSqrt2);
    auto np = classify_parry(n);
    TwoSidedWord v{{3, 0}, canonical({}, {1})};
    REQUIRE(admissible(np, v.right, true));
    auto rn = check_commutation(places(n), np, {v}, {});
    CHECK(rn.samples == 1);
    CHECK(rn.minus_excluded == 1);
}

TEST_CASE("exact decider") {
    auto t = PisotField::make(kTribonacci);
    auto z = is_purely_periodic_exact(t, t.zero());
    CHECK(z.purely_periodic);
    CHECK(z.period == 1);

    auto ten = PisotField::make({-10, 1});
    auto d = is_purely_periodic_exact(ten, ten.from_rational(Rational(1, 6)));
    CHECK_FALSE(d.purely_periodic);
    CHECK(d.period == 1);
    CHECK(d.period_word == DigitWord{6});

    auto n = PisotField::make(kTwoPlusSqrt2);
    auto e = is_purely_periodic_exact(n, n.from_rational(Rational(1, 3)));
    CHECK_FALSE(e.purely_periodic);
    CHECK(e.period_word == parse_digits("00302130"));

    CHECK_THROWS_AS(is_purely_periodic_exact(t, t.one()), OutOfRange);
}

TEST_CASE("a detected cycle spells x") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto f = PisotField::make(c);
        for (const auto& x : sample_elements(f, 200, 3)) {
            auto v = is_purely_periodic_exact(f, x);
            if (v.purely_periodic) CHECK(value_of_periodic(f, {}, v.period_word) == x);
        }
    }
}

TEST_CASE("golden exact verdicts match the orbit oracle") {
    auto f = PisotField::make(kGolden);
    for (int q = 1; q <= 30; ++q)
        for (int p = 0; p < q; ++p) {
            if (std::gcd(p, q) != 1) continue;
            const Rational x(p, q);
            CHECK(is_purely_periodic_exact(f, f.from_rational(x)).purely_periodic ==
                  GoldenOracle::purely_periodic(x));
        }
}

TEST_CASE("geometric decider") {
    auto g = PisotField::make(kGolden);
    auto gs = places(g);
    auto gc = make_cylinders(gs, classify_parry(g), 16);
    CHECK(is_purely_periodic_geometric(gs, gc, g.zero()).verdict == Verdict::In);
    CHECK(is_purely_periodic_geometric(gs, gc, g.from_rational(Rational(1, 2))).verdict == Verdict::In);
    CHECK_THROWS_AS(is_purely_periodic_geometric(gs, gc, g.beta()), OutOfRange);

    auto ten = PisotField::make({-10, 1});
    auto ts = places(ten);
    auto tc = make_cylinders(ts, classify_parry(ten), 16);
    CHECK(is_purely_periodic_geometric(ts, tc, ten.from_rational(Rational(1, 2))).verdict == Verdict::Out);
    CHECK(is_purely_periodic_geometric(ts, tc, ten.from_rational(Rational(1, 3))).verdict == Verdict::In);
}

TEST_CASE("agreement classification") {
    MembershipVerdict in{Verdict::In}, out{Verdict::Out}, unk{Verdict::BoundaryUnknown};
    CHECK(classify_agreement(true, in) == Agreement::Agree);
    CHECK(classify_agreement(false, out) == Agreement::Agree);
    CHECK(classify_agreement(true, unk) == Agreement::GeometricUndecided);
    CHECK(classify_agreement(false, unk) == Agreement::GeometricUndecided);
    CHECK(classify_agreement(true, out) == Agreement::CONFLICT);
    CHECK(classify_agreement(false, in) == Agreement::CONFLICT);
}

TEST_CASE("base 10 cross check") {
    auto ten = PisotField::make({-10, 1});
    CrossCheckOptions o;
    o.depth = 12;
    auto reps = cross_check(ten, 20, o);
    for (const auto& r : reps) {
        const Integer q = r.rational->get_den();
        CHECK(r.exact_verdict == (gcd(q, Integer(10)) == 1));
        CHECK(r.agreement != Agreement::CONFLICT);
    }
    auto s = summarize(reps);
    CHECK(s.conflicts == 0);
}

TEST_CASE("golden cross check") {
    long expected = 0;
    for (long q = 1; q <= 50; ++q)
        for (long p = 0; p < q; ++p) expected += std::gcd(p, q) == 1;
    auto g = PisotField::make(kGolden);
    auto reps = cross_check(g, 50);
    auto s = summarize(reps);
    CHECK(s.tested == expected);
    CHECK(s.tested == 774);
    CHECK(s.periodic == s.tested);
    CHECK(s.conflicts == 0);
    for (const auto& r : reps) CHECK(r.geometric_verdict.verdict != Verdict::Out);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        const auto& a = *reps[i - 1].rational;
        const auto& b = *reps[i].rational;
        CHECK(std::pair{a.get_den(), a.get_num()} < std::pair{b.get_den(), b.get_num()});
    }
}

TEST_CASE("2+sqrt2 cross check") {
    auto n = PisotField::make(kTwoPlusSqrt2);
    CrossCheckOptions o;
    o.extra_samples = 40;
    auto s = summarize(cross_check(n, 30, o));
    CHECK(s.conflicts == 0);
    CHECK(s.tested == 278 + 40);
}

TEST_CASE("cross check output does not depend on the worker count") {
    auto t = PisotField::make(kTribonacci);
    CrossCheckOptions o;
    o.depth = 10;
    o.extra_samples = 20;
    o.workers = 1;
    auto a = report_text(cross_check(t, 15, o));
    o.workers = 4;
    auto b = report_text(cross_check(t, 15, o));
    CHECK(a == b);
    CHECK(a.find("# CONFLICT 0\n") != std::string::npos);
    CHECK(a.rfind("# x exact period geometric distance depth agreement\n0 periodic 1 In", 0) == 0);
}
