#include "betanum/periodicity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "betanum/error.hpp"

namespace betanum {

namespace {

FieldElement word_value(const PisotField& field, const DigitWord& w) {
    FieldElement acc = field.zero();
    const FieldElement beta = field.beta();
    for (std::size_t i = w.size(); i-- > 0;) acc = acc * beta + field.from_int(w[i]);
    return acc;
}

/// sum u_i beta^-i for an eventually periodic u.
FieldElement right_value(const PisotField& field, const EventuallyPeriodicWord& u) {
    const FieldElement bi = field.beta().inv();
    auto frac = [&](const DigitWord& w) {
        FieldElement acc = field.zero();
        for (std::size_t i = w.size(); i-- > 0;) acc = (acc + field.from_int(w[i])) * bi;
        return acc;
    };
    FieldElement v = frac(u.preperiod);
    if (!u.period.empty()) {
        const FieldElement tail = frac(u.period) / (field.one() - bi.pow(static_cast<long>(u.period.size())));
        v = v + bi.pow(static_cast<long>(u.preperiod.size())) * tail;
    }
    return v;
}

}  // namespace

NaturalExtensionState extension_state(const RepresentationSpace& space, const FieldElement& x) {
    NaturalExtensionState s{space.delta(x), x};
    s.point.real_coord = x.approx();
    return s;
}

NaturalExtensionState natural_extension_step(const RepresentationSpace& space, const NaturalExtensionState& s) {
    const PisotField& field = space.field();
    NaturalExtensionState r;
    long f;
    if (s.exact) {
        if (!s.exact->in_unit_interval()) throw OutOfRange("b = " + s.exact->to_string() + " outside [0,1)");
        const FieldElement y = field.beta() * *s.exact;
        const Integer fl = y.floor();
        f = fl.get_si();
        r.exact = y - field.from_rational(Rational(fl));
        r.point.real_coord = r.exact->approx();
    } else {
        if (!s.point.real_coord) throw OutOfRange("state without a real coordinate");
        const long double b = *s.point.real_coord;
        if (b < 0 || b >= 1) throw OutOfRange("b outside [0,1)");
        const long double y = field.beta_approx() * b;
        const long double n = std::nearbyint(y);
        if (std::fabs(y - n) < 1e-15L * std::max<long double>(1, std::fabs(y)))
            throw FloorUndecidable("beta b too close to an integer");
        f = static_cast<long>(std::floor(y));
        r.point.real_coord = y - static_cast<long double>(f);
    }
    const EmbeddedPoint ha = space.h_beta(s.point);
    const EmbeddedPoint moved = space.sub(ha, space.scale(space.delta(field.one()), f));
    r.point.arch = moved.arch;
    r.point.padic = moved.padic;
    return r;
}

NaturalExtensionState represent(const RepresentationSpace& space, const TwoSidedWord& w) {
    const PisotField& field = space.field();
    NaturalExtensionState s;
    s.point = space.neg(space.delta(word_value(field, w.left)));
    s.exact = right_value(field, w.right);
    s.point.real_coord = s.exact->approx();
    return s;
}

TwoSidedWord shift(const TwoSidedWord& w) {
    TwoSidedWord r;
    r.left.push_back(w.right.digit(0));
    r.left.insert(r.left.end(), w.left.begin(), w.left.end());
    DigitWord pre = w.right.preperiod;
    DigitWord per = w.right.period;
    if (!pre.empty()) {
        pre.erase(pre.begin());
    } else if (!per.empty()) {
        std::rotate(per.begin(), per.begin() + 1, per.end());
    }
    r.right = canonical(pre, per);
    return r;
}

TwoSidedWord shift_inverse(const TwoSidedWord& w) {
    TwoSidedWord r;
    const int w0 = w.left.empty() ? 0 : w.left[0];
    if (!w.left.empty()) r.left.assign(w.left.begin() + 1, w.left.end());
    DigitWord pre{w0};
    pre.insert(pre.end(), w.right.preperiod.begin(), w.right.preperiod.end());
    r.right = canonical(pre, w.right.period);
    return r;
}

NaturalExtensionState inverse_step(const RepresentationSpace& space, const NaturalExtensionState& s, int c) {
    const PisotField& field = space.field();
    const FieldElement bi = field.beta().inv();
    NaturalExtensionState r;
    r.point = space.mul(space.add(s.point, space.scale(space.delta(field.one()), c)), space.delta(bi));
    if (s.exact) {
        r.exact = (*s.exact + field.from_int(c)) * bi;
        r.point.real_coord = r.exact->approx();
    } else if (s.point.real_coord) {
        r.point.real_coord = (*s.point.real_coord + c) / field.beta_approx();
    }
    return r;
}

double state_deviation(const RepresentationSpace& space, const NaturalExtensionState& a,
                       const NaturalExtensionState& b) {
    double d = space.distance(a.point, b.point);
    if (a.exact && b.exact && *a.exact == *b.exact) return d;
    if (a.point.real_coord && b.point.real_coord)
        d = std::max(d, static_cast<double>(std::fabs(*a.point.real_coord - *b.point.real_coord)));
    return d;
}

std::vector<TwoSidedWord> sample_two_sided(const ParryData& parry, int count, int left_length,
                                           std::uint64_t seed) {
    const SoficAutomaton aut = build_automaton(parry);
    std::vector<std::vector<Edge>> out(static_cast<std::size_t>(aut.state_count));
    for (const auto& e : aut.edges) out[static_cast<std::size_t>(e.from)].push_back(e);
    std::mt19937_64 rng(seed);
    auto pick = [&](int s) -> const Edge& {
        const auto& v = out[static_cast<std::size_t>(s)];
        return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
    };
    std::vector<TwoSidedWord> words;
    while (static_cast<int>(words.size()) < count) {
        int s = static_cast<int>(std::uniform_int_distribution<int>(0, aut.state_count - 1)(rng));
        DigitWord path;
        const int pre_len = std::uniform_int_distribution<int>(0, 8)(rng);
        for (int i = 0; i < left_length + pre_len; ++i) {
            const Edge& e = pick(s);
            path.push_back(e.label);
            s = e.to;
        }
        TwoSidedWord w;
        w.left.assign(path.rbegin() + pre_len, path.rend());
        DigitWord pre(path.end() - pre_len, path.end());
        DigitWord per;
        if (rng() & 1) {
            const int home = s;
            for (int i = 0; i < 4 * aut.state_count + 4; ++i) {
                const Edge& e = pick(s);
                per.push_back(e.label);
                s = e.to;
                if (s == home) break;
            }
            if (s != home) per.clear();
        }
        w.right = canonical(pre, per);
        if (!admissible(parry, w.right, true)) continue;
        words.push_back(std::move(w));
    }
    return words;
}

std::vector<FieldElement> sample_elements(const PisotField& field, int count, std::uint64_t seed, SampleKind kind) {
    if (kind == SampleKind::NonRational && field.degree() < 2) throw DegenerateInput("no non-rational elements");
    std::mt19937_64 rng(seed);
    auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    std::vector<FieldElement> xs;
    while (static_cast<int>(xs.size()) < count) {
        const bool rational =
            kind == SampleKind::Rational || (kind == SampleKind::Mixed && (field.degree() < 2 || (rng() & 1)));
        if (rational) {
            const int q = uni(1, 50);
            const int p = uni(0, q - 1);
            if (std::gcd(p, q) != 1 && !(p == 0 && q == 1)) continue;
            xs.push_back(field.from_rational(Rational(p, q)));
        } else {
            const int an = uni(-6, 6);
            if (an == 0) continue;
            const Rational a(an, uni(1, 6));
            const Rational b(uni(-30, 30), uni(1, 6));
            const FieldElement x = field.from_rational(a) * field.beta() + field.from_rational(b);
            if (!x.in_unit_interval()) continue;
            xs.push_back(x);
        }
    }
    return xs;
}

double CommutationReport::max() const { return std::max({prop1, prop2, minus}); }

CommutationReport check_commutation(const RepresentationSpace& space, const ParryData& parry,
                                    const std::vector<TwoSidedWord>& words, const std::vector<FieldElement>& points) {
    CommutationReport rep;
    for (const auto& w : words) {
        if (!admissible(parry, w.right, true)) {
            ++rep.excluded;
            continue;
        }
        ++rep.samples;
        const NaturalExtensionState s = represent(space, w);
        rep.prop1 = std::max(rep.prop1, state_deviation(space, represent(space, shift(w)),
                                                          natural_extension_step(space, s)));
        const TwoSidedWord prev = shift_inverse(w);
        if (!admissible(parry, prev.right, true)) {
            ++rep.minus_excluded;
            continue;
        }
        const int w0 = w.left.empty() ? 0 : w.left[0];
        const NaturalExtensionState back = inverse_step(space, s, w0);
        rep.minus = std::max(rep.minus, state_deviation(space, back, represent(space, prev)));
        rep.minus = std::max(rep.minus, state_deviation(space, natural_extension_step(space, back), s));
    }
    for (const auto& x : points) {
        const auto lhs = natural_extension_step(space, extension_state(space, x));
        const auto rhs = extension_state(space, t_beta(x));
        rep.prop2 = std::max(rep.prop2, state_deviation(space, lhs, rhs));
    }
    return rep;
}

ExactVerdict is_purely_periodic_exact(const PisotField& field, const FieldElement& x) {
    if (x.field() != field) throw FieldMismatch("element from another field");
    const ExpansionResult e = expand(x);
    ExactVerdict v;
    v.purely_periodic = e.purely_periodic;
    v.period_word = e.period.empty() ? DigitWord{0} : e.period;
    v.period = static_cast<int>(v.period_word.size());
    return v;
}

MembershipVerdict is_purely_periodic_geometric(const RepresentationSpace& space, const CylinderSet& cyl,
                                               const FieldElement& x) {
    if (space.field() != cyl.space.field()) throw FieldMismatch("cylinders built for another field");
    if (!x.in_unit_interval()) throw OutOfRange(x.to_string() + " outside [0,1)");
    return membership(cyl, x);
}

std::string agreement_name(Agreement a) {
    switch (a) {
        case Agreement::Agree:
            return "Agree";
        case Agreement::GeometricUndecided:
            return "GeometricUndecided";
        case Agreement::CONFLICT:
            return "CONFLICT";
    }
    return "?";
}

Agreement classify_agreement(bool exact, const MembershipVerdict& g) {
    if (g.verdict == Verdict::BoundaryUnknown) return Agreement::GeometricUndecided;
    return (g.verdict == Verdict::In) == exact ? Agreement::Agree : Agreement::CONFLICT;
}

PeriodicityReport decide(const CylinderSet& cyl, const FieldElement& x) {
    PeriodicityReport r{x, std::nullopt, false, 0, {}, Agreement::GeometricUndecided};
    if (x.is_rational()) r.rational = x.as_rational();
    const ExactVerdict e = is_purely_periodic_exact(cyl.space.field(), x);
    r.exact_verdict = e.purely_periodic;
    r.exact_period = e.purely_periodic ? e.period : 0;
    try {
        r.geometric_verdict = is_purely_periodic_geometric(cyl.space, cyl, x);
    } catch (const PrecisionExhausted&) {
        r.geometric_verdict.verdict = Verdict::BoundaryUnknown;
        r.geometric_verdict.depth = cyl.depth;
    }
    r.agreement = classify_agreement(r.exact_verdict, r.geometric_verdict);
    return r;
}

std::vector<PeriodicityReport> cross_check(const CylinderSet& cyl, const std::vector<FieldElement>& xs, int workers) {
    std::vector<std::optional<PeriodicityReport>> slots(xs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto work = [&] {
        for (std::size_t i; (i = next++) < xs.size();) {
            try {
                slots[i] = decide(cyl, xs[i]);
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    unsigned n = workers > 0 ? static_cast<unsigned>(workers) : std::max(1u, std::thread::hardware_concurrency());
    n = std::min<unsigned>(n, static_cast<unsigned>(std::max<std::size_t>(1, xs.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    std::vector<PeriodicityReport> out;
    out.reserve(xs.size());
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

std::vector<PeriodicityReport> cross_check(const PisotField& field, int max_q, const CrossCheckOptions& opt) {
    if (max_q < 2) throw OutOfRange("denominator bound must be at least 2");
    const RepresentationSpace space = places(field);
    const CylinderSet cyl = make_cylinders(space, classify_parry(field), opt.depth);
    std::vector<FieldElement> xs;
    for (int q = 1; q <= max_q; ++q)
        for (int p = 0; p < q; ++p)
            if (std::gcd(p, q) == 1) xs.push_back(field.from_rational(Rational(p, q)));
    if (opt.extra_samples > 0 && field.degree() > 1) {
        auto extra = sample_elements(field, opt.extra_samples, opt.seed, SampleKind::NonRational);
        xs.insert(xs.end(), extra.begin(), extra.end());
    }
    return cross_check(cyl, xs, opt.workers);
}

CrossCheckSummary summarize(const std::vector<PeriodicityReport>& reports) {
    CrossCheckSummary s;
    for (const auto& r : reports) {
        ++s.tested;
        s.periodic += r.exact_verdict;
        switch (r.agreement) {
            case Agreement::Agree:
                ++s.agree;
                break;
            case Agreement::GeometricUndecided:
                ++s.undecided;
                break;
            case Agreement::CONFLICT:
                ++s.conflicts;
                break;
        }
    }
    return s;
}

std::string report_text(const std::vector<PeriodicityReport>& reports) {
    std::ostringstream os;
    os.precision(6);
    os << "# x exact period geometric distance depth agreement\n";
    for (const auto& r : reports) {
        os << (r.rational ? r.rational->get_str() : r.x.to_string()) << ' '
           << (r.exact_verdict ? "periodic" : "not-periodic") << ' ' << r.exact_period << ' '
           << verdict_name(r.geometric_verdict.verdict) << ' ' << r.geometric_verdict.distance << ' '
           << r.geometric_verdict.depth << ' ' << agreement_name(r.agreement) << '\n';
    }
    const auto s = summarize(reports);
    os << "# tested " << s.tested << '\n'
       << "# periodic " << s.periodic << '\n'
       << "# Agree " << s.agree << '\n'
       << "# GeometricUndecided " << s.undecided << '\n'
       << "# CONFLICT " << s.conflicts << '\n';
    return os.str();
}

}  // namespace betanum
