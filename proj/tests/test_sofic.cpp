#include <algorithm>
#include <functional>
#include <set>

#include "betanum/error.hpp"
#include "betanum/sofic.hpp"
#include "doctest.h"

using namespace betanum;

namespace {

const std::vector<long> kGolden{-1, -1, 1};
const std::vector<long> kTribonacci{-1, -1, -1, 1};
const std::vector<long> kSmallest{-1, -1, 0, 1};
const std::vector<long> kTwoPlusSqrt2{2, -4, 1};

ParryData parry_of(const std::vector<long>& c) { return classify_parry(PisotField::make(c)); }

// Brute force: enumerate every walk of the given length and collect labels.
std::set<DigitWord> walk_labels(const SoficAutomaton& aut, int len) {
    std::set<DigitWord> out;
    std::function<void(int, DigitWord&)> rec = [&](int state, DigitWord& w) {
        if (static_cast<int>(w.size()) == len) {
            out.insert(w);
            return;
        }
        for (const auto& e : aut.edges) {
            if (e.from != state) continue;
            w.push_back(e.label);
            rec(e.to, w);
            w.pop_back();
        }
    };
    for (int s = 0; s < aut.state_count; ++s) {
        DigitWord w;
        rec(s, w);
    }
    return out;
}

// Plain cofactor expansion, for cross-checking the char poly.
IntPoly cofactor_det(const std::vector<std::vector<IntPoly>>& a) {
    const std::size_t n = a.size();
    if (n == 1) return a[0][0];
    IntPoly total;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<IntPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<IntPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(row);
        }
        IntPoly term = poly::mul(a[0][j], cofactor_det(minor));
        total = j % 2 ? poly::sub(total, term) : poly::add(total, term);
    }
    return total;
}

}  // namespace

TEST_CASE("automata of the example fields") {
    auto g = build_automaton(parry_of(kGolden));
    CHECK(g.state_count == 2);
    CHECK(g == SoficAutomaton{2, {{0, 0, 0}, {0, 1, 1}, {1, 0, 0}}});

    auto s = build_automaton(parry_of(kTwoPlusSqrt2));
    CHECK(s == SoficAutomaton{2, {{0, 0, 0}, {0, 1, 0}, {0, 2, 0}, {0, 3, 1}, {1, 0, 0}, {1, 1, 1}}});

    auto sm = build_automaton(parry_of(kSmallest));
    CHECK(sm == SoficAutomaton{5, {{0, 0, 0}, {0, 1, 1}, {1, 0, 2}, {2, 0, 3}, {3, 0, 4}, {4, 0, 0}}});

    CHECK(build_automaton(parry_of(kTribonacci)).state_count == 3);
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto pd = parry_of(c);
        auto a = build_automaton(pd);
        CHECK(a.deterministic());
        CHECK(a.state_count == pd.d);
    }
}

TEST_CASE("reversal") {
    auto g = build_automaton(parry_of(kGolden));
    auto r = reverse(g);
    auto out = r.out_edges(1);
    REQUIRE(out.size() == 1);
    CHECK(out[0].label == 1);
    CHECK(out[0].to == 0);
    CHECK(reverse(r) == g);
}

TEST_CASE("is_factor") {
    auto t = build_automaton(parry_of(kTribonacci));
    CHECK(is_factor(t, {1, 1, 0}));
    CHECK_FALSE(is_factor(t, {1, 1, 1}));
    CHECK(is_factor(t, {}));
    // Reversed automaton reads the mirrored words.
    auto rt = reverse(t);
    CHECK(is_factor(rt, {0, 1, 1}));
    CHECK_FALSE(is_factor(rt, {1, 1, 1}));
}

TEST_CASE("is_factor agrees with walk enumeration") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto pd = parry_of(c);
        auto a = build_automaton(pd);
        const int A = pd.max_digit;
        for (int len = 1; len <= 8; ++len) {
            auto labels = walk_labels(a, len);
            DigitWord w(static_cast<std::size_t>(len), 0);
            // all words over {0..A} of this length
            for (;;) {
                CHECK(is_factor(a, w) == (labels.count(w) > 0));
                int i = len - 1;
                while (i >= 0 && w[i] == A) w[i--] = 0;
                if (i < 0) break;
                ++w[i];
            }
        }
    }
}

TEST_CASE("substitutions") {
    CHECK(build_substitution(parry_of(kTribonacci)).to_string() == "1 -> 12\n2 -> 13\n3 -> 1\n");
    CHECK(build_substitution(parry_of(kSmallest)).to_string() == "1 -> 12\n2 -> 3\n3 -> 4\n4 -> 5\n5 -> 1\n");
    CHECK(build_substitution(parry_of(kTwoPlusSqrt2)).to_string() == "1 -> 1112\n2 -> 12\n");
    auto b3 = build_substitution(parry_of({-3, 1}));
    CHECK(b3.to_string() == "1 -> 111\n");
    CHECK(incidence(b3) == Matrix{{3}});
    CHECK(char_poly(incidence(b3)) == poly::from_ints({-3, 1}));
}

TEST_CASE("incidence is the transposed adjacency") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2, std::vector<long>{-10, 1}}) {
        auto pd = parry_of(c);
        CHECK(incidence(build_substitution(pd)) == transpose(build_automaton(pd).adjacency()));
    }
}

TEST_CASE("characteristic polynomials") {
    auto fib = incidence(build_substitution(parry_of(kGolden)));
    CHECK(fib == Matrix{{1, 1}, {1, 0}});
    CHECK(char_poly(fib) == poly::from_ints({-1, -1, 1}));
    CHECK(is_pisot_type(fib));

    auto m = incidence(build_substitution(parry_of(kSmallest)));
    IntPoly chi = char_poly(m);
    CHECK(chi == poly::mul(poly::from_ints({-1, -1, 0, 1}), poly::from_ints({1, -1, 1})));
    CHECK_FALSE(is_pisot_type(m));
    auto factors = factor_for_display(chi, {poly::from_ints(kSmallest)});
    CHECK(factorization_string(factors) == "(X^3 - X - 1)(X^2 - X + 1)");

    CHECK(is_pisot_type(incidence(build_substitution(parry_of(kTribonacci)))));
    CHECK(is_pisot_type(incidence(build_substitution(parry_of(kTwoPlusSqrt2)))));

    // cross-check against cofactor expansion of X I - M
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto mm = incidence(build_substitution(parry_of(c)));
        std::vector<std::vector<IntPoly>> xm(mm.size(), std::vector<IntPoly>(mm.size()));
        for (std::size_t i = 0; i < mm.size(); ++i)
            for (std::size_t j = 0; j < mm.size(); ++j)
                xm[i][j] = i == j ? poly::from_ints({-mm[i][j], 1}) : poly::from_ints({-mm[i][j]});
        CHECK(char_poly(mm) == cofactor_det(xm));
        CHECK(poly::divides(poly::from_ints(c), char_poly(mm)));
    }
}

TEST_CASE("dominant eigenvalue of the incidence matrix is beta") {
    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto f = PisotField::make(c);
        auto chi = char_poly(incidence(build_substitution(classify_parry(f))));
        // chi changes sign across a 1e-9 bracket of beta
        const Rational mid = (f.dominant().lo + f.dominant().hi) / 2;
        const Rational h(1, 1000000000);
        CHECK(poly::sign_at(chi, mid - h) * poly::sign_at(chi, mid + h) < 0);
    }
}

TEST_CASE("numeration system") {
    auto g = parry_of(kGolden);
    auto u = numeration(g, 5);
    CHECK(u == std::vector<Integer>{1, 2, 3, 5, 8, 13});
    CHECK(greedy_rep(g, 4, 3) == DigitWord{1, 0, 1});
    CHECK(greedy_rep(g, 0, 4) == DigitWord{0, 0, 0, 0});
    CHECK_THROWS_AS(greedy_rep(g, 5, 3), IndexOutOfRange);

    for (const auto& c : {kGolden, kTribonacci, kSmallest, kTwoPlusSqrt2}) {
        auto pd = parry_of(c);
        auto a = build_automaton(pd);
        for (int N = 1; N <= 12; ++N) {
            auto un = numeration(pd, N);
            if (un[N] > 200000) break;
            std::set<DigitWord> words;
            for (Integer i = 0; i < un[N]; ++i) {
                auto w = greedy_rep(un, i, N);
                CHECK(is_factor(a, w));
                words.insert(w);
            }
            CHECK(Integer(static_cast<long>(words.size())) == un[N]);
        }
    }
}

TEST_CASE("graph export") {
    auto dot = to_dot(build_automaton(parry_of(kGolden)));
    CHECK(dot == "digraph M {\n  a1;\n  a2;\n  a1 -> a1 [label=\"0\"];\n  a1 -> a2 [label=\"1\"];\n"
                 "  a2 -> a1 [label=\"0\"];\n}\n");
}
