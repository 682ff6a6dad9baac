#include "betanum/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "betanum/error.hpp"

namespace betanum::poly {

int degree(const IntPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

int degree(const RatPoly& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (p[i] != 0) return i;
    return -1;
}

void trim(IntPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }
void trim(RatPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }

IntPoly from_ints(const std::vector<long>& coeffs) {
    IntPoly p;
    p.reserve(coeffs.size());
    for (long c : coeffs) p.emplace_back(c);
    trim(p);
    return p;
}

RatPoly to_rational(const IntPoly& p) {
    RatPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.emplace_back(c);
    return r;
}

Integer content(const IntPoly& p) {
    Integer g = 0;
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

IntPoly primitive_part(const RatPoly& p) {
    RatPoly q = p;
    trim(q);
    if (q.empty()) return {};
    Integer l = 1;
    for (const auto& c : q) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    IntPoly r;
    r.reserve(q.size());
    for (const auto& c : q) {
        Rational s = c * l;
        r.push_back(s.get_num());
    }
    Integer g = content(r);
    if (r.back() < 0) g = -g;
    for (auto& c : r) c /= g;
    return r;
}

IntPoly derivative(const IntPoly& p) {
    if (p.size() <= 1) return {};
    IntPoly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<unsigned long>(i);
    trim(d);
    return d;
}

IntPoly add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

IntPoly sub(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

IntPoly mul(const IntPoly& a, const IntPoly& b) {
    if (a.empty() || b.empty()) return {};
    IntPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

RatPoly divmod(const RatPoly& a, const RatPoly& b, RatPoly& remainder) {
    const int db = degree(b);
    if (db < 0) throw DegenerateInput("polynomial division by zero");
    remainder = a;
    trim(remainder);
    const int da = degree(remainder);
    if (da < db) return {};
    RatPoly q(static_cast<std::size_t>(da - db + 1));
    for (int k = da; k >= db; --k) {
        if (remainder[k] == 0) continue;
        Rational f = remainder[k] / b[db];
        q[k - db] = f;
        for (int i = 0; i <= db; ++i) remainder[k - db + i] -= f * b[i];
    }
    trim(remainder);
    trim(q);
    return q;
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly x = to_rational(a), y = to_rational(b);
    trim(x);
    trim(y);
    while (!y.empty()) {
        RatPoly r;
        divmod(x, y, r);
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty()) return {};
    return primitive_part(x);
}

IntPoly exact_quotient(const IntPoly& a, const IntPoly& b) {
    RatPoly r;
    RatPoly q = divmod(to_rational(a), to_rational(b), r);
    if (!r.empty()) throw DegenerateInput("polynomial does not divide exactly");
    IntPoly out;
    for (const auto& c : q) {
        if (c.get_den() != 1) throw DegenerateInput("quotient is not integral");
        out.push_back(c.get_num());
    }
    trim(out);
    return out;
}

bool divides(const IntPoly& b, const IntPoly& a) {
    RatPoly r;
    divmod(to_rational(a), to_rational(b), r);
    return r.empty();
}

Rational eval(const IntPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sign_at(const IntPoly& p, const Rational& x) { return sgn(eval(p, x)); }

IntPoly reciprocal(const IntPoly& p) {
    IntPoly r = p;
    trim(r);
    std::reverse(r.begin(), r.end());
    trim(r);
    return r;
}

IntPoly cyclotomic(int n) {
    // X^n - 1 divided by every Phi_d, d | n, d < n.
    IntPoly num(static_cast<std::size_t>(n + 1));
    num[0] = -1;
    num[n] = 1;
    for (int d = 1; d < n; ++d)
        if (n % d == 0) num = exact_quotient(num, cyclotomic(d));
    return num;
}

int count_real_roots(const IntPoly& p) {
    std::vector<RatPoly> seq;
    seq.push_back(to_rational(p));
    trim(seq.back());
    if (seq.back().empty()) return 0;
    seq.push_back(to_rational(derivative(p)));
    while (!seq.back().empty()) {
        RatPoly r;
        divmod(seq[seq.size() - 2], seq.back(), r);
        for (auto& c : r) c = -c;
        seq.push_back(std::move(r));
    }
    seq.pop_back();
    auto changes = [&](bool at_plus_infinity) {
        int count = 0, last = 0;
        for (const auto& s : seq) {
            int d = degree(s);
            int sg = sgn(s[d]);
            if (!at_plus_infinity && d % 2 == 1) sg = -sg;
            if (sg != 0 && last != 0 && sg != last) ++count;
            if (sg != 0) last = sg;
        }
        return count;
    };
    return changes(false) - changes(true);
}

std::string to_string(const IntPoly& p, char var) {
    const int d = degree(p);
    if (d < 0) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = d; i >= 0; --i) {
        const Integer& c = p[i];
        if (c == 0) continue;
        Integer a = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        if (a != 1 || i == 0) os << a;
        if (i >= 1) os << var;
        if (i >= 2) os << '^' << i;
        first = false;
    }
    return os.str();
}

}  // namespace betanum::poly
