#include "betanum/betaexpand.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

#include "betanum/error.hpp"
#include "betanum/sofic.hpp"

namespace betanum {

std::string digits_string(const DigitWord& w) {
    std::string s;
    for (int d : w) {
        if (d >= 0 && d <= 9)
            s += static_cast<char>('0' + d);
        else
            s += "{" + std::to_string(d) + "}";
    }
    return s;
}

DigitWord parse_digits(const std::string& s) {
    DigitWord w;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] >= '0' && s[i] <= '9') {
            w.push_back(s[i] - '0');
        } else if (s[i] == '{') {
            auto close = s.find('}', i);
            if (close == std::string::npos) throw ParseError("unterminated digit in '" + s + "'");
            try {
                w.push_back(std::stoi(s.substr(i + 1, close - i - 1)));
            } catch (const std::logic_error&) {
                throw ParseError("bad digit in '" + s + "'");
            }
            i = close;
        } else if (s[i] != ' ') {
            throw ParseError("bad digit '" + std::string(1, s[i]) + "' in '" + s + "'");
        }
    }
    return w;
}

int EventuallyPeriodicWord::digit(std::size_t i) const {
    if (i < preperiod.size()) return preperiod[i];
    if (period.empty()) return 0;
    return period[(i - preperiod.size()) % period.size()];
}

bool EventuallyPeriodicWord::finite() const { return period.empty(); }

std::string EventuallyPeriodicWord::to_string() const {
    std::string s = digits_string(preperiod);
    if (period.empty()) return s.empty() ? "0" : s;
    std::string per = digits_string(period);
    if (period.size() == 1 && per.size() == 1)
        s += per;
    else
        s += "(" + per + ")";
    return s + "^∞";
}

EventuallyPeriodicWord canonical(DigitWord pre, DigitWord per) {
    if (std::all_of(per.begin(), per.end(), [](int d) { return d == 0; })) per.clear();
    if (per.empty()) {
        while (!pre.empty() && pre.back() == 0) pre.pop_back();
        return {pre, {}};
    }
    const std::size_t L = per.size();
    for (std::size_t k = 1; k < L; ++k) {
        if (L % k) continue;
        bool ok = true;
        for (std::size_t i = k; i < L && ok; ++i) ok = per[i] == per[i - k];
        if (ok) {
            per.resize(k);
            break;
        }
    }
    while (!pre.empty() && pre.back() == per.back()) {
        pre.pop_back();
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
    }
    return {pre, per};
}

int lex_compare(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b) {
    std::size_t pa = std::max<std::size_t>(a.period.size(), 1), pb = std::max<std::size_t>(b.period.size(), 1);
    std::size_t len = std::max(a.preperiod.size(), b.preperiod.size()) + std::lcm(pa, pb);
    for (std::size_t i = 0; i < len; ++i) {
        int x = a.digit(i), y = b.digit(i);
        if (x != y) return x < y ? -1 : 1;
    }
    return 0;
}

namespace {

void check_unit_interval(const FieldElement& x) {
    if (!x.in_unit_interval()) throw OutOfRange(x.to_string() + " is not in [0,1)");
}

}  // namespace

FieldElement t_beta(const FieldElement& x) {
    check_unit_interval(x);
    FieldElement y = x.field().beta() * x;
    return y - x.field().from_rational(Rational(y.floor()));
}

ExpansionResult expand(const FieldElement& x0, long max_steps) {
    check_unit_interval(x0);
    const FieldElement beta = x0.field().beta();
    std::unordered_map<FieldElement, long> seen;
    DigitWord digits;
    FieldElement x = x0;
    for (long step = 0; step <= max_steps; ++step) {
        auto [it, inserted] = seen.emplace(x, step);
        if (!inserted) {
            ExpansionResult r;
            r.preperiod.assign(digits.begin(), digits.begin() + it->second);
            r.period.assign(digits.begin() + it->second, digits.end());
            r.purely_periodic = it->second == 0;
            return r;
        }
        FieldElement y = beta * x;
        Integer f = y.floor();
        digits.push_back(static_cast<int>(f.get_si()));
        x = y - x.field().from_rational(Rational(f));
    }
    throw OrbitBudgetExceeded("no cycle within " + std::to_string(max_steps) + " steps for " + x0.to_string());
}

ParryData classify_parry(const PisotField& field, long max_steps) {
    const FieldElement beta = field.beta();
    std::unordered_map<FieldElement, long> seen;
    DigitWord t;
    FieldElement r = field.one();
    ParryData pd;
    pd.max_digit = static_cast<int>(field.floor_beta().get_si());
    for (long i = 1; i <= max_steps; ++i) {
        FieldElement y = beta * r;
        Integer f = y.floor();
        t.push_back(static_cast<int>(f.get_si()));
        r = y - field.from_rational(Rational(f));
        if (r.is_zero()) {
            pd.kind = ParryKind::SimpleParry;
            pd.d_beta_one = {t, {}};
            pd.n = static_cast<int>(t.size());
            pd.p = 0;
            pd.d = pd.n;
            pd.t = t;
            DigitWord star = t;
            star.back() -= 1;
            pd.d_star = canonical({}, star);
            if (field.integer_base()) pd.max_digit -= 1;
            return pd;
        }
        auto [it, inserted] = seen.emplace(r, i);
        if (!inserted) {
            // r_j == r_i: digits t_{j+1}..t_i repeat forever.
            const long j = it->second;
            DigitWord pre(t.begin(), t.begin() + j), per(t.begin() + j, t.end());
            pd.kind = ParryKind::NonSimpleParry;
            pd.d_beta_one = {pre, per};
            pd.d_star = pd.d_beta_one;
            pd.n = static_cast<int>(pre.size());
            pd.p = static_cast<int>(per.size());
            pd.d = pd.n + pd.p;
            pd.t = pre;
            pd.t.insert(pd.t.end(), per.begin(), per.end());
            return pd;
        }
    }
    throw OrbitBudgetExceeded("d_beta(1) did not terminate or cycle within " + std::to_string(max_steps) +
                              " steps");
}

bool admissible(const ParryData& parry, const EventuallyPeriodicWord& w, bool strict) {
    const std::size_t pre = w.preperiod.size(), per = w.period.size();
    for (std::size_t k = 0; k < pre + std::max<std::size_t>(per, 1); ++k) {
        if (w.digit(k) < 0) return false;
        EventuallyPeriodicWord suffix;
        if (k < pre) {
            suffix.preperiod.assign(w.preperiod.begin() + static_cast<long>(k), w.preperiod.end());
            suffix.period = w.period;
        } else if (per > 0) {
            suffix.period = w.period;
            std::rotate(suffix.period.begin(), suffix.period.begin() + static_cast<long>(k - pre),
                        suffix.period.end());
        }
        int c = lex_compare(suffix, parry.d_star);
        if (c > 0 || (strict && c == 0)) return false;
    }
    return true;
}

bool admissible(const ParryData& parry, const DigitWord& w, Side side, bool strict) {
    if (side == Side::LeftFactor) return is_factor(build_automaton(parry), w);
    return admissible(parry, EventuallyPeriodicWord{w, {}}, strict);
}

FieldElement value_of_periodic(const PisotField& field, const ParryData& parry, const DigitWord& preperiod,
                               const DigitWord& period) {
    if (!admissible(parry, EventuallyPeriodicWord{preperiod, period}, false))
        throw InadmissibleWord(digits_string(preperiod) + "(" + digits_string(period) + ")^inf");
    const FieldElement beta = field.beta();
    const FieldElement binv = beta.inv();
    FieldElement value = field.zero();
    FieldElement scale = binv;
    for (int d : preperiod) {
        value = value + scale * field.from_int(d);
        scale = scale * binv;
    }
    if (!period.empty()) {
        // (a_1 beta^{L-1} + ... + a_L) / (beta^L - 1), shifted by the preperiod.
        FieldElement num = field.zero();
        for (int d : period) num = num * beta + field.from_int(d);
        FieldElement block = num / (beta.pow(static_cast<long>(period.size())) - field.one());
        value = value + block * scale * beta;
    }
    return value;
}

FieldElement value_of_periodic(const PisotField& field, const DigitWord& preperiod, const DigitWord& period) {
    return value_of_periodic(field, classify_parry(field), preperiod, period);
}

}  // namespace betanum
