#include <random>

#include "betanum/embedding.hpp"
#include "betanum/error.hpp"
#include "betanum/padic.hpp"
#include "doctest.h"

using namespace betanum;

namespace {

IntPoly ints(const std::vector<long>& c) { return poly::from_ints(c); }

PadicElement eval_minpoly(const PadicPlace& pl, const IntPoly& f) {
    PadicElement acc = pl.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = pl.add(pl.mul(acc, pl.beta()), pl.from_integer(f[i]));
    return acc;
}

bool vanishes(const PadicPlace& pl, const PadicElement& a) { return pl.valuation(a) >= pl.absolute_precision(a); }

}  // namespace

TEST_CASE("digit budget") {
    CHECK(max_padic_digits(2) == 60);
    CHECK(max_padic_digits(3) == 38);
}

TEST_CASE("ramified place of 2+sqrt2 over 2") {
    auto places = PadicPlace::above(ints({2, -4, 1}), 2);
    REQUIRE(places.size() == 1);
    const auto& pl = places[0];
    CHECK(pl.ramification() == 2);
    CHECK(pl.valuation(pl.beta()) == 1);
    CHECK(pl.abs(pl.beta()) == doctest::Approx(std::sqrt(0.5)));
    CHECK(pl.haar_modulus() == doctest::Approx(0.5));
    CHECK(vanishes(pl, eval_minpoly(pl, ints({2, -4, 1}))));
    // beta^2 = 4 beta - 2
    auto lhs = pl.mul(pl.beta(), pl.beta());
    auto rhs = pl.sub(pl.scale(pl.beta(), Integer(4)), pl.from_integer(Integer(2)));
    CHECK(vanishes(pl, pl.sub(lhs, rhs)));
    CHECK(pl.digits(lhs, 4) == std::vector<int>{0, 0, 1, 0});
}

TEST_CASE("split place: beta maps to a root mod p^M") {
    const IntPoly f = ints({-2, -3, 1});
    auto places = PadicPlace::above(f, 2);
    REQUIRE(places.size() == 1);
    const auto& pl = places[0];
    CHECK(pl.ramification() == 1);
    CHECK(pl.beta_valuation_num() == 1);
    // independent check with big integers
    Integer rho(0);
    auto ds = pl.digits(pl.beta(), pl.precision());
    for (std::size_t j = ds.size(); j-- > 0;) rho = rho * 2 + ds[j];
    Integer mod = Integer(1) << pl.precision();
    Integer val = rho * rho - 3 * rho - 2;
    CHECK(val % mod == 0);
}

TEST_CASE("rationals: digits agree with modular inverse") {
    auto pl = PadicPlace::above(ints({-2, -3, 1}), 2)[0];
    for (long q : {3L, 5L, 7L, 9L, 11L, 25L}) {
        for (long n : {1L, -1L, 2L, 13L}) {
            auto a = pl.from_rational(Rational(n, q));
            CAPTURE(n);
            CAPTURE(q);
            auto ds = pl.digits(a, 40);
            Integer x(0);
            for (std::size_t j = ds.size(); j-- > 0;) x = x * 2 + ds[j];
            Integer mod = Integer(1) << 40;
            Integer chk = (x * q - n) % mod;
            CHECK(chk == 0);
        }
    }
}

TEST_CASE("negative valuation") {
    auto pl = PadicPlace::above(ints({-3, -3, 1}), 3)[0];
    REQUIRE(pl.ramification() == 2);
    auto a = pl.from_rational(Rational(1, 3));
    CHECK(pl.valuation(a) == -2);
    CHECK(pl.abs(a) == doctest::Approx(3.0));
    // 1/3 = pi^-2 (1 + pi) because pi^2 = 3 (beta + 1)
    CHECK(pl.digits(a, 4) == std::vector<int>{1, 1, 0, 0});
    Integer big(1);
    for (int i = 0; i < 40; ++i) big *= 3;
    CHECK_THROWS_AS(pl.from_rational(Rational(Integer(1), big)), PrecisionExhausted);
}

TEST_CASE("projection") {
    auto pl = PadicPlace::above(ints({-2, -3, 1}), 2)[0];
    CHECK(pl.project(pl.from_integer(Integer(1)), 20) == doctest::Approx(0.5));
    CHECK(pl.project(pl.from_integer(Integer(3)), 20) == doctest::Approx(0.75));
    CHECK(pl.project(pl.from_integer(Integer(-1)), 30) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("no place for units") {
    CHECK(PadicPlace::above(ints({-1, -1, 1}), 2).empty());
}

TEST_CASE("representation space: places and product formula") {
    for (auto c : std::vector<std::vector<long>>{
             {-1, -1, 1}, {-1, -1, 0, 1}, {-1, -1, -1, 1}, {2, -4, 1}, {-2, -3, 1}, {-3, -3, 1}}) {
        auto f = PisotField::make(c);
        auto s = places(f);
        CAPTURE(f.descriptor());
        double prod = 1;
        for (double h : contraction_moduli(s)) prod *= h;
        CHECK(prod == doctest::Approx(1.0 / static_cast<double>(f.beta_approx())).epsilon(1e-9));
        for (const auto& p : s.places()) CHECK(p.modulus < 1.0);
    }
    auto s = places(PisotField::make({2, -4, 1}));
    REQUIRE(s.places().size() == 2);
    CHECK(s.places()[0].kind == PlaceKind::RealConjugate);
    CHECK(s.places()[1].kind == PlaceKind::PadicFactor);
    CHECK(s.arch_dimension() == 1);
    CHECK(places(PisotField::make({-1, -1, 0, 1})).arch_dimension() == 2);
}

TEST_CASE("delta is a ring homomorphism and h_beta is multiplication by beta") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-20, 20), den(1, 15);
    for (auto c : std::vector<std::vector<long>>{{2, -4, 1}, {-1, -1, -1, 1}, {-3, -3, 1}}) {
        auto f = PisotField::make(c);
        auto s = places(f);
        for (int it = 0; it < 30; ++it) {
            std::vector<Rational> a, b;
            for (int i = 0; i < f.degree(); ++i) {
                a.emplace_back(coef(rng), den(rng) * 2 + 1);
                b.emplace_back(coef(rng), den(rng) * 2 + 1);
            }
            auto x = f.from_coeffs(a), y = f.from_coeffs(b);
            CHECK(s.distance(s.delta(x * y), s.mul(s.delta(x), s.delta(y))) < 1e-8);
            CHECK(s.distance(s.delta(x + y), s.add(s.delta(x), s.delta(y))) < 1e-8);
            CHECK(s.distance(s.delta(x * f.beta()), s.h_beta(s.delta(x))) < 1e-8);
        }
    }
}

TEST_CASE("serialization") {
    auto s = places(PisotField::make({2, -4, 1}), {1e-12, 8});
    auto line = s.serialize(s.delta(s.field().one()));
    CHECK(line.substr(0, 2) == "1 ");
    CHECK(line.substr(line.size() - 8) == "10000000");
}
