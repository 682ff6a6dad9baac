#include <algorithm>
#include <cmath>
#include <sstream>
#include <tuple>

#include "betanum/error.hpp"
#include "betanum/rauzy.hpp"
#include "doctest.h"

using namespace betanum;

namespace {

const std::vector<long> kGolden{-1, -1, 1};
const std::vector<long> kTribonacci{-1, -1, -1, 1};
const std::vector<long> kSmallest{-1, -1, 0, 1};
const std::vector<long> kTwoPlusSqrt2{2, -4, 1};

struct Setup {
    PisotField field;
    RepresentationSpace space;
    ParryData parry;
    SoficAutomaton aut;
};

Setup setup(const std::vector<long>& c) {
    auto f = PisotField::make(c);
    auto p = classify_parry(f);
    return {f, places(f), p, build_automaton(p)};
}

// Brute-force Hausdorff distance between two clouds of the same piece.
double hausdorff(const RepresentationSpace& s, const PointCloud& a, const PointCloud& b) {
    auto one_way = [&](const PointCloud& x, const PointCloud& y) {
        double worst = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            double best = INFINITY;
            const auto pi = x.point(s, i);
            for (std::size_t j = 0; j < y.size(); ++j) best = std::min(best, s.distance(pi, y.point(s, j)));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(one_way(a, b), one_way(b, a));
}

}  // namespace

TEST_CASE("depth 0 is the origin") {
    auto st = setup(kTribonacci);
    auto fa = iterate_ifs(st.space, st.aut, 0);
    REQUIRE(fa.pieces.size() == 3);
    for (const auto& pc : fa.pieces) {
        REQUIRE(pc.size() == 1);
        CHECK(std::abs(pc.arch[0]) == 0.0);
    }
}

TEST_CASE("set recursion and path walking give the same words") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto st = setup(c);
        for (int k = 0; k <= (c == kTwoPlusSqrt2 ? 7 : 10); ++k) CHECK(ifs_words(st.aut, k) == path_words(st.aut, k));
    }
}

TEST_CASE("iterated and enumerated clouds coincide") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto st = setup(c);
        const int k = c == kTwoPlusSqrt2 ? 5 : 8;
        auto a = iterate_ifs(st.space, st.aut, k);
        auto b = enumerate_paths(st.space, st.aut, k);
        auto counts = piece_counts(st.aut, k);
        auto words = path_words(st.aut, k);
        for (std::size_t i = 0; i < a.pieces.size(); ++i) {
            CAPTURE(i);
            CHECK(a.pieces[i].size() == b.pieces[i].size());
            CHECK(a.pieces[i].size() == words[i].size());
            CHECK(Integer(static_cast<long>(words[i].size())) <= counts[i]);
            CHECK(hausdorff(st.space, a.pieces[i], b.pieces[i]) < 1e-9);
        }
    }
}

TEST_CASE("piece counts follow powers of the transposed adjacency") {
    auto st = setup(kTribonacci);
    auto A = st.aut.adjacency();
    std::vector<long> v(3, 1);
    for (int k = 1; k <= 12; ++k) {
        std::vector<long> w(3, 0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) w[i] += A[j][i] * v[j];
        v = w;
        auto pc = piece_counts(st.aut, k);
        for (int i = 0; i < 3; ++i) CHECK(pc[i] == v[i]);
    }
}

TEST_CASE("prefix characterizations") {
    auto tri = setup(kTribonacci);
    const auto tw = path_words(tri.aut, 6);
    for (const auto& w : tw[1]) CHECK((w[0] == 1 && w[1] == 0));
    auto sp = setup(kSmallest);
    const auto sw = path_words(sp.aut, 8);
    for (const auto& w : sw[4]) CHECK(DigitWord(w.begin(), w.begin() + 4) == DigitWord{0, 0, 0, 1});
}

TEST_CASE("prefix lengths of the substitution are the edge labels") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto st = setup(c);
        auto sub = build_substitution(st.parry);
        std::set<std::tuple<int, int, int>> from_sub, from_aut;
        for (int j = 0; j < sub.size(); ++j)
            for (std::size_t k = 0; k < sub.images[j].size(); ++k) from_sub.insert({j, static_cast<int>(k), sub.images[j][k] - 1});
        for (const auto& e : st.aut.edges) from_aut.insert({e.from, e.label, e.to});
        CHECK(from_sub == from_aut);
    }
}

TEST_CASE("printed IFS systems at depth 1") {
    auto tri = setup(kTribonacci);
    std::set<int> into1;
    for (const auto& e : tri.aut.edges)
        if (e.to == 0) {
            into1.insert(e.from);
            CHECK(e.label == 0);
        }
    CHECK(into1 == std::set<int>{0, 1, 2});

    auto np = setup(kTwoPlusSqrt2);
    std::set<std::pair<int, int>> into2;
    for (const auto& e : np.aut.edges)
        if (e.to == 1) into2.insert({e.from, e.label});
    CHECK(into2 == std::set<std::pair<int, int>>{{0, 3}, {1, 1}});
}

TEST_CASE("radius bounds contain the clouds") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto st = setup(c);
        auto rb = radius_bounds(st.space, st.aut);
        auto fa = iterate_ifs(st.space, st.aut, c == kTwoPlusSqrt2 ? 8 : 12);
        const int na = st.space.arch_count();
        for (std::size_t i = 0; i < fa.pieces.size(); ++i)
            for (std::size_t q = 0; q < fa.pieces[i].size(); ++q) {
                for (int v = 0; v < na; ++v) CHECK(std::abs(fa.pieces[i].arch[q * na + v]) <= rb.rad[i][v]);
                for (std::size_t k = 0; k < st.space.padic().size(); ++k)
                    CHECK(st.space.padic()[k].abs(fa.pieces[i].padic[q * st.space.padic().size() + k]) <=
                          rb.rad[i][na + k]);
            }
        for (int k = 1; k < 10; ++k) CHECK(rb.diam(k + 1) < rb.diam(k));
    }
}

TEST_CASE("refinement: depth k and depth k+2d are close") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest}) {
        auto st = setup(c);
        auto rb = radius_bounds(st.space, st.aut);
        const int d = st.aut.state_count;
        for (int k = 4; k <= 8; ++k) {
            if (k + 2 * d > 14) break;
            auto a = iterate_ifs(st.space, st.aut, k);
            auto b = iterate_ifs(st.space, st.aut, k + 2 * d);
            for (std::size_t i = 0; i < a.pieces.size(); ++i)
                CHECK(hausdorff(st.space, a.pieces[i], b.pieces[i]) <= rb.diam(k));
        }
    }
}

TEST_CASE("grid Hausdorff agrees with brute force") {
    auto st = setup(kTribonacci);
    auto rb = radius_bounds(st.space, st.aut);
    auto a = iterate_ifs(st.space, st.aut, 7);
    auto b = iterate_ifs(st.space, st.aut, 8);
    const double cap = 2 * rb.diam(7);
    for (std::size_t i = 0; i < 3; ++i) {
        HausdorffAccumulator acc(st.space, a.pieces[i], cap);
        for (std::size_t q = 0; q < b.pieces[i].size(); ++q) {
            auto pt = b.pieces[i].point(st.space, q);
            acc.add(pt.arch.data(), pt.padic.data());
        }
        const double brute = hausdorff(st.space, a.pieces[i], b.pieces[i]);
        CHECK(acc.result() == doctest::Approx(brute));
        CHECK(hausdorff_distance(st.space, a.pieces[i], b.pieces[i], cap) == doctest::Approx(brute));
        CHECK(hausdorff_distance(st.space, b.pieces[i], a.pieces[i], cap) == doctest::Approx(brute));
        CHECK(hausdorff_distance(st.space, a.pieces[i], b.pieces[i], brute / 4) > brute / 4);
    }
    auto n = setup(kTwoPlusSqrt2);
    auto c = iterate_ifs(n.space, n.aut, 5);
    auto e = iterate_ifs(n.space, n.aut, 6);
    CHECK(hausdorff_distance(n.space, c.pieces[0], e.pieces[0], 10.0) ==
          doctest::Approx(hausdorff(n.space, c.pieces[0], e.pieces[0])));
    CHECK(hausdorff_distance(n.space, c.pieces[1], c.pieces[1], 1.0) == 0.0);
}

TEST_CASE("cylinder heights") {
    auto g = setup(kGolden);
    auto h = cylinder_heights(g.parry, g.field);
    REQUIRE(h.size() == 2);
    CHECK(h[0] == g.field.one());
    CHECK(h[1] == g.field.beta() - g.field.one());
    auto n = setup(kTwoPlusSqrt2);
    auto hn = cylinder_heights(n.parry, n.field);
    CHECK(hn[0] == n.field.one());
    CHECK(hn[1] == (n.field.beta() - n.field.one()).inv());
    auto t = setup(kTribonacci);
    for (const auto& x : cylinder_heights(t.parry, t.field)) CHECK(x.approx() <= 1.0L);
}

TEST_CASE("membership examples") {
    auto g = setup(kGolden);
    auto cyl = make_cylinders(g.space, g.parry, 16);
    auto origin = g.space.zero();
    origin.real_coord = 0;
    CHECK(membership(cyl, origin).verdict == Verdict::In);
    auto half = membership(cyl, g.field.from_rational(Rational(1, 2)));
    CHECK(half.verdict == Verdict::In);
    CHECK(half.certified);
    CHECK(half.distance <= half.tol_in);

    auto ten = PisotField::make({-10, 1});
    auto pten = classify_parry(ten);
    auto sten = places(ten);
    REQUIRE(sten.padic().size() == 2);
    auto cten = make_cylinders(sten, pten, 16);
    CHECK(membership(cten, ten.from_rational(Rational(1, 3))).verdict == Verdict::In);
    CHECK(membership(cten, ten.from_rational(Rational(1, 2))).verdict == Verdict::Out);
    EmbeddedPoint far = sten.delta(ten.from_rational(Rational(1, 1024)));
    far.real_coord = 0.99;
    auto v = membership(cten, far);
    CHECK(v.verdict == Verdict::Out);
    CHECK(v.distance >= v.tol_out);
}

TEST_CASE("witness paths spell the period") {
    auto t = setup(kTribonacci);
    auto cyl = make_cylinders(t.space, t.parry, 12);
    for (int q : {3, 5, 7, 11}) {
        auto x = t.field.from_rational(Rational(1, q));
        auto e = expand(x);
        REQUIRE(e.purely_periodic);
        std::vector<int> all{0, 1, 2};
        auto w = find_witness(cyl, -x, all);
        REQUIRE(w.status == WitnessStatus::Found);
        if (w.prefix.empty()) {
            DigitWord per(w.cycle.rbegin(), w.cycle.rend());
            CHECK(value_of_periodic(t.field, {}, per) == x);
        }
    }
}

TEST_CASE("measure estimates follow the Perron vector") {
    auto g = setup(kGolden);
    auto fa = iterate_ifs(g.space, g.aut, 14);
    auto m = measure_estimate(g.space, fa, 1.0 / 64);
    for (double x : m) CHECK(x > 0);
    auto pv = perron_vector(incidence(build_substitution(g.parry)));
    CHECK(pv[0] / pv[1] == doctest::Approx((1 + std::sqrt(5.0)) / 2));
    CHECK(angle_degrees(m, pv) < 5.0);
    CHECK(angle_degrees({1, 0}, {0, 1}) == doctest::Approx(90.0));
}

TEST_CASE("render") {
    auto t = setup(kTribonacci);
    auto fa = iterate_ifs(t.space, t.aut, 12);
    auto axes = plottable_axes(t.space);
    REQUIRE(axes.size() == 2);
    auto r = render(t.space, fa, axes, 120, 90);
    CHECK(r.distinct_shades() == 3);
    CHECK(r.to_pgm().rfind("P2\n120 90\n255\n", 0) == 0);

    auto z = render(t.space, iterate_ifs(t.space, t.aut, 0), axes, 31, 31);
    int dark = 0;
    for (auto p : z.pixels) dark += p != 255;
    CHECK(dark == 1);

    auto g = setup(kGolden);
    auto gf = iterate_ifs(g.space, g.aut, 8);
    CHECK_THROWS_AS(render(g.space, gf, plottable_axes(g.space), 50, 50), NoPlottableAxes);
    std::vector<double> hv{1.0, 0.618};
    auto two = render(g.space, gf, {parse_axis("re0"), parse_axis("h")}, 60, 40, hv);
    CHECK(two.distinct_shades() == 2);
    CHECK_THROWS_AS(parse_axis("q7"), ParseError);

    auto n = setup(kTwoPlusSqrt2);
    auto nf = iterate_ifs(n.space, n.aut, 6);
    auto nr = render(n.space, nf, {parse_axis("re0"), parse_axis("p0")}, 64, 64);
    CHECK(nr.distinct_shades() == 2);
}

TEST_CASE("cloud text is sorted and reproducible") {
    auto t = setup(kTribonacci);
    auto a = cloud_text(t.space, iterate_ifs(t.space, t.aut, 6));
    CHECK(a == cloud_text(t.space, iterate_ifs(t.space, t.aut, 6)));
    CHECK(a.rfind("# field -1 -1 -1 1\n# depth 6\n", 0) == 0);
    std::istringstream in(a);
    std::vector<std::string> lines;
    for (std::string l; std::getline(in, l);)
        if (l[0] != '#') lines.push_back(l);
    CHECK(std::is_sorted(lines.begin(), lines.end()));
    CHECK(lines.size() == path_words(t.aut, 6)[0].size() + path_words(t.aut, 6)[1].size() + path_words(t.aut, 6)[2].size());
}
