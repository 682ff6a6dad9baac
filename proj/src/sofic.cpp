#include "betanum/sofic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "betanum/error.hpp"
#include "betanum/roots.hpp"

namespace betanum {

std::vector<Edge> SoficAutomaton::out_edges(int state) const {
    std::vector<Edge> out;
    for (const auto& e : edges)
        if (e.from == state) out.push_back(e);
    return out;
}

Matrix SoficAutomaton::adjacency() const {
    Matrix a(state_count, std::vector<long>(state_count, 0));
    for (const auto& e : edges) ++a[e.from][e.to];
    return a;
}

bool SoficAutomaton::deterministic() const {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges)
        if (!seen.insert({e.from, e.label}).second) return false;
    return true;
}

bool SoficAutomaton::operator==(const SoficAutomaton& o) const {
    auto a = edges, b = o.edges;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return state_count == o.state_count && a == b;
}

std::string Substitution::image_string(int letter) const {
    std::string s;
    for (int x : images[static_cast<std::size_t>(letter - 1)]) s += std::to_string(x);
    return s;
}

std::string Substitution::to_string() const {
    std::ostringstream os;
    for (int i = 1; i <= size(); ++i) os << i << " -> " << image_string(i) << '\n';
    return os.str();
}

SoficAutomaton build_automaton(const ParryData& parry) {
    SoficAutomaton aut;
    const int d = parry.d;
    aut.state_count = d;
    for (int i = 0; i < d; ++i) {
        const int ti = parry.t[static_cast<std::size_t>(i)];
        for (int c = 0; c < ti; ++c) aut.edges.push_back({i, c, 0});
        if (i + 1 < d)
            aut.edges.push_back({i, ti, i + 1});
        else if (parry.kind == ParryKind::NonSimpleParry)
            aut.edges.push_back({i, ti, parry.n});
    }
    return aut;
}

SoficAutomaton reverse(const SoficAutomaton& aut) {
    SoficAutomaton r;
    r.state_count = aut.state_count;
    for (const auto& e : aut.edges) r.edges.push_back({e.to, e.label, e.from});
    return r;
}

bool is_factor(const SoficAutomaton& aut, const DigitWord& w) {
    std::vector<char> cur(static_cast<std::size_t>(aut.state_count), 1), next;
    for (int c : w) {
        next.assign(cur.size(), 0);
        bool any = false;
        for (const auto& e : aut.edges)
            if (e.label == c && cur[e.from]) next[e.to] = any = true;
        if (!any) return false;
        cur.swap(next);
    }
    return true;
}

std::string to_dot(const SoficAutomaton& aut, const std::string& name) {
    std::ostringstream os;
    os << "digraph " << name << " {\n";
    for (int i = 0; i < aut.state_count; ++i) os << "  a" << i + 1 << ";\n";
    auto edges = aut.edges;
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges)
        os << "  a" << e.from + 1 << " -> a" << e.to + 1 << " [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

Substitution build_substitution(const ParryData& parry) {
    Substitution s;
    const int d = parry.d;
    for (int i = 1; i <= d; ++i) {
        std::vector<int> img(static_cast<std::size_t>(parry.t[static_cast<std::size_t>(i - 1)]), 1);
        if (i < d)
            img.push_back(i + 1);
        else if (parry.kind == ParryKind::NonSimpleParry)
            img.push_back(parry.n + 1);
        s.images.push_back(std::move(img));
    }
    return s;
}

Matrix incidence(const Substitution& sub) {
    const int d = sub.size();
    Matrix m(d, std::vector<long>(d, 0));
    for (int j = 0; j < d; ++j)
        for (int letter : sub.images[j]) ++m[letter - 1][j];
    return m;
}

Matrix transpose(const Matrix& m) {
    Matrix t(m.empty() ? 0 : m[0].size(), std::vector<long>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
    return t;
}

namespace {

// Fraction-free (Bareiss) determinant of an integer matrix.
Integer bareiss_det(std::vector<std::vector<Integer>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                a[i][j] /= prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

IntPoly char_poly(const Matrix& m) {
    // det(kI - M) at k = 0..d, then Newton interpolation over Q.
    const std::size_t d = m.size();
    std::vector<Rational> xs, ys;
    for (std::size_t k = 0; k <= d; ++k) {
        std::vector<std::vector<Integer>> a(d, std::vector<Integer>(d));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) a[i][j] = (i == j ? static_cast<long>(k) : 0) - m[i][j];
        xs.emplace_back(static_cast<long>(k));
        ys.emplace_back(bareiss_det(std::move(a)));
    }
    std::vector<Rational> coef = ys;
    for (std::size_t level = 1; level <= d; ++level)
        for (std::size_t i = d; i >= level; --i) coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - level]);
    RatPoly result{coef[d]};
    for (std::size_t i = d; i-- > 0;) {
        // result = result * (X - xs[i]) + coef[i]
        RatPoly next(result.size() + 1);
        for (std::size_t j = 0; j < result.size(); ++j) {
            next[j + 1] += result[j];
            next[j] -= result[j] * xs[i];
        }
        next[0] += coef[i];
        result = std::move(next);
    }
    IntPoly out;
    for (const auto& c : result) out.push_back(c.get_num());
    poly::trim(out);
    return out;
}

namespace {

int euler_phi(int n) {
    int r = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        r -= r / p;
    }
    if (n > 1) r -= r / n;
    return r;
}

bool has_cyclotomic_factor(const IntPoly& p) {
    const int deg = poly::degree(p);
    for (int n = 1; n <= 4 * deg * deg + 2; ++n)
        if (euler_phi(n) <= deg && poly::divides(poly::cyclotomic(n), p)) return true;
    return false;
}

IntPoly squarefree_part(const IntPoly& p) {
    IntPoly g = poly::gcd(p, poly::derivative(p));
    if (poly::degree(g) <= 0) return p;
    return poly::exact_quotient(p, g);
}

bool all_inside(const IntPoly& p) {
    if (poly::degree(p) <= 0) return true;
    auto discs = isolate_until(p, [](const std::vector<RootDisc>& ds) {
        for (const auto& d : ds)
            if (unit_circle_position(d) == UnitCirclePosition::Undecided) return false;
        return true;
    });
    if (discs.empty()) return false;
    for (const auto& d : discs)
        if (unit_circle_position(d) != UnitCirclePosition::Inside) return false;
    return true;
}

}  // namespace

bool is_pisot_type(const Matrix& m) {
    IntPoly chi = char_poly(m);
    if (chi.empty() || chi[0] == 0) return false;
    IntPoly s = squarefree_part(chi);
    if (has_cyclotomic_factor(s)) return false;
    auto discs = isolate_until(s, [](const std::vector<RootDisc>& ds) {
        for (const auto& d : ds)
            if (unit_circle_position(d) == UnitCirclePosition::Undecided) return false;
        return true;
    });
    if (discs.empty()) return false;
    int outside = 0;
    const RootDisc* dom = nullptr;
    for (const auto& d : discs) {
        auto pos = unit_circle_position(d);
        if (pos == UnitCirclePosition::Undecided) return false;
        if (pos == UnitCirclePosition::Outside) {
            ++outside;
            dom = &d;
        }
    }
    if (outside != 1 || !dom->real || dom->center.re < 0) return false;
    // The dominant root must be simple: repeated roots all lie inside.
    IntPoly g = poly::gcd(chi, poly::derivative(chi));
    return all_inside(squarefree_part(g));
}

std::vector<IntPoly> factor_for_display(const IntPoly& input, const std::vector<IntPoly>& known) {
    IntPoly p = input;
    poly::trim(p);
    std::vector<IntPoly> out;
    auto peel = [&](const IntPoly& f) {
        if (poly::degree(f) < 1) return;
        while (poly::degree(p) >= poly::degree(f) && poly::divides(f, p)) {
            out.push_back(f);
            p = poly::exact_quotient(p, f);
        }
    };
    for (const auto& k : known) peel(k);
    const int deg = std::max(poly::degree(p), 1);
    for (int n = 1; n <= 4 * deg * deg + 2; ++n)
        if (euler_phi(n) <= poly::degree(p)) peel(poly::cyclotomic(n));
    if (poly::degree(p) >= 1 && p[0] != 0) {
        Integer c = abs(p[0]);
        for (Integer k = 1; k <= c && poly::degree(p) >= 1; ++k) {
            if (c % k != 0) continue;
            peel(IntPoly{-k, 1});
            peel(IntPoly{Integer(k), 1});
        }
    }
    while (poly::degree(p) >= 1 && p[0] == 0) {
        out.push_back(IntPoly{0, 1});
        p.erase(p.begin());
    }
    if (poly::degree(p) >= 1) out.push_back(p);
    std::stable_sort(out.begin(), out.end(),
                     [](const IntPoly& a, const IntPoly& b) { return poly::degree(a) > poly::degree(b); });
    return out;
}

std::string factorization_string(const std::vector<IntPoly>& factors) {
    if (factors.size() == 1) return poly::to_string(factors[0]);
    std::string s;
    for (const auto& f : factors) s += "(" + poly::to_string(f) + ")";
    return s;
}

std::vector<Integer> numeration(const ParryData& parry, int N) {
    if (N < 0) throw IndexOutOfRange("N must be non-negative");
    std::vector<Integer> u{1};
    for (int k = 1; k <= N; ++k) {
        Integer v = 1;
        for (int i = 1; i <= k; ++i) v += parry.d_star.digit(static_cast<std::size_t>(i - 1)) * u[k - i];
        u.push_back(v);
    }
    return u;
}

DigitWord greedy_rep(const ParryData& parry, const Integer& i, int N) {
    return greedy_rep(numeration(parry, N), i, N);
}

DigitWord greedy_rep(const std::vector<Integer>& u, const Integer& i, int N) {
    if (N < 0 || static_cast<std::size_t>(N) >= u.size()) throw IndexOutOfRange("N exceeds the table");
    if (i < 0 || i >= u[N]) throw IndexOutOfRange(i.get_str() + " is outside [0, U_N)");
    Integer rest = i;
    DigitWord w;
    for (int k = N - 1; k >= 0; --k) {
        Integer q = rest / u[k];
        w.push_back(static_cast<int>(q.get_si()));
        rest -= q * u[k];
    }
    return w;
}

}  // namespace betanum
