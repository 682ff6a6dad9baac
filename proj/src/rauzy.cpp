#include "betanum/rauzy.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_set>

#include "betanum/error.hpp"

namespace betanum {

namespace {

constexpr double kQuantum = 1e-12;

using CL = std::complex<long double>;

std::vector<std::vector<Edge>> reversed_out(const SoficAutomaton& aut) {
    std::vector<std::vector<Edge>> out(static_cast<std::size_t>(aut.state_count));
    for (const auto& e : aut.edges) out[static_cast<std::size_t>(e.to)].push_back({e.to, e.label, e.from});
    return out;
}

int max_label(const SoficAutomaton& aut) {
    int m = 0;
    for (const auto& e : aut.edges) m = std::max(m, e.label);
    return m;
}

void mix(std::size_t& h, long long x) { h ^= std::hash<long long>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

long long quantize(double x) { return std::llround(x / kQuantum); }

struct CellKey {
    std::vector<long long> v;
    bool operator==(const CellKey&) const = default;
};

struct CellKeyHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = 0x9e3779b97f4a7c15ULL;
        for (long long x : k.v) mix(h, x);
        return h;
    }
};

/// Point indices of a cloud, keyed by coordinates rounded to kQuantum.
class Dedupe {
   public:
    explicit Dedupe(PointCloud& pc) : pc_(pc), set_(16, Hash{&pc}, Eq{&pc}) {}
    void add(const CL* a, const PadicElement* p) {
        pc_.push(a, p);
        if (!set_.insert(pc_.size() - 1).second) pc_.pop();
    }

   private:
    struct Hash {
        const PointCloud* pc;
        std::size_t operator()(std::size_t i) const {
            std::size_t h = 0x9e3779b97f4a7c15ULL;
            for (int v = 0; v < pc->arch_count; ++v) {
                const auto& z = pc->arch[i * pc->arch_count + v];
                mix(h, quantize(z.real()));
                mix(h, quantize(z.imag()));
            }
            for (int k = 0; k < pc->padic_count; ++k) {
                const auto& x = pc->padic[i * pc->padic_count + k];
                for (auto c : x.c) mix(h, static_cast<long long>(c));
                mix(h, x.shift);
            }
            return h;
        }
    };
    struct Eq {
        const PointCloud* pc;
        bool operator()(std::size_t i, std::size_t j) const {
            for (int v = 0; v < pc->arch_count; ++v) {
                const auto& a = pc->arch[i * pc->arch_count + v];
                const auto& b = pc->arch[j * pc->arch_count + v];
                if (quantize(a.real()) != quantize(b.real()) || quantize(a.imag()) != quantize(b.imag())) return false;
            }
            for (int k = 0; k < pc->padic_count; ++k) {
                const auto& a = pc->padic[i * pc->padic_count + k];
                const auto& b = pc->padic[j * pc->padic_count + k];
                if (a.c != b.c || a.shift != b.shift) return false;
            }
            return true;
        }
    };
    PointCloud& pc_;
    std::unordered_set<std::size_t, Hash, Eq> set_;
};

double padic_abs_int(const PadicPlace& pl, long c) {
    if (c == 0) return 0;
    return pl.abs(pl.from_integer(Integer(c)));
}

}  // namespace

// ---------------------------------------------------------------------------

std::size_t PointCloud::size() const {
    if (arch_count > 0) return arch.size() / static_cast<std::size_t>(arch_count);
    if (padic_count > 0) return padic.size() / static_cast<std::size_t>(padic_count);
    return 0;
}

void PointCloud::pop() {
    arch.resize(arch.size() - static_cast<std::size_t>(arch_count));
    padic.resize(padic.size() - static_cast<std::size_t>(padic_count));
}

void PointCloud::push(const CL* a, const PadicElement* p) {
    for (int i = 0; i < arch_count; ++i) arch.emplace_back(static_cast<double>(a[i].real()), static_cast<double>(a[i].imag()));
    for (int i = 0; i < padic_count; ++i) padic.push_back(p[i]);
}

EmbeddedPoint PointCloud::point(const RepresentationSpace& space, std::size_t i) const {
    EmbeddedPoint pt = space.zero();
    for (int k = 0; k < arch_count; ++k) pt.arch[k] = CL(arch[i * arch_count + k].real(), arch[i * arch_count + k].imag());
    for (int k = 0; k < padic_count; ++k) pt.padic[k] = padic[i * padic_count + k];
    return pt;
}

BetaPowers beta_powers(const RepresentationSpace& space, int n, int max_digit) {
    BetaPowers pw;
    pw.max_digit = max_digit;
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    std::vector<CL> a(static_cast<std::size_t>(na), CL(1));
    std::vector<PadicElement> p;
    for (const auto& pl : space.padic()) p.push_back(pl.from_integer(Integer(1)));
    for (int l = 0; l <= n; ++l) {
        pw.arch.push_back(a);
        std::vector<PadicElement> mult(static_cast<std::size_t>((max_digit + 1) * np));
        for (int c = 0; c <= max_digit; ++c)
            for (int k = 0; k < np; ++k) mult[c * np + k] = space.padic()[k].scale(p[k], Integer(c));
        pw.padic.push_back(std::move(mult));
        for (int i = 0; i < na; ++i) a[i] *= space.arch_root(i);
        for (int k = 0; k < np; ++k) p[k] = space.padic()[k].mul(p[k], space.padic()[k].beta());
    }
    return pw;
}

// ---------------------------------------------------------------------------

double RadiusBounds::diam(int k) const {
    double d = 0;
    for (std::size_t v = 0; v < moduli.size(); ++v) {
        double r = 0;
        for (const auto& row : rad) r = std::max(r, row[v]);
        d = std::max(d, std::pow(moduli[v], k) * r);
    }
    return d;
}

RadiusBounds radius_bounds(const RepresentationSpace& space, const SoficAutomaton& aut, long path_budget) {
    const int d = aut.state_count;
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    const int nv = na + np;
    RadiusBounds rb;
    for (const auto& pl : space.places()) rb.moduli.push_back(pl.modulus);
    auto out = reversed_out(aut);

    // |c|_v for each place
    auto digit_abs = [&](int v, int c) {
        return v < na ? static_cast<double>(c) : padic_abs_int(space.padic()[v - na], c);
    };

    // Super-solution of rad_i = max_e (|c| + |beta| rad_j), iterated downward.
    std::vector<std::vector<double>> U(static_cast<std::size_t>(d), std::vector<double>(static_cast<std::size_t>(nv)));
    for (int v = 0; v < nv; ++v) {
        double mc = 0;
        for (const auto& e : aut.edges) mc = std::max(mc, digit_abs(v, e.label));
        const bool ultra = v >= na;
        const double u = ultra ? mc : mc / (1.0 - rb.moduli[v]);
        for (int i = 0; i < d; ++i) U[i][v] = u;
        for (int it = 0; it < 2000; ++it) {
            bool changed = false;
            for (int i = 0; i < d; ++i) {
                double m = 0;
                for (const auto& e : out[i]) {
                    const double c = digit_abs(v, e.label), t = rb.moduli[v] * U[e.to][v];
                    m = std::max(m, ultra ? std::max(c, t) : c + t);
                }
                if (m < U[i][v]) {
                    changed = changed || U[i][v] - m > 1e-15 * (1 + m);
                    U[i][v] = m;
                }
            }
            if (!changed) break;
        }
        for (int i = 0; i < d; ++i) U[i][v] = U[i][v] * (1 + 1e-12) + 1e-15;
    }

    // L-step refinement: max over prefixes of |s| and, at length L, |s| + |beta|^L U_end.
    int L = 0;
    {
        std::vector<double> cnt(static_cast<std::size_t>(d), 1.0);
        double total = d;
        while (L < 200) {
            std::vector<double> next(static_cast<std::size_t>(d), 0.0);
            for (int i = 0; i < d; ++i)
                for (const auto& e : out[i]) next[i] += cnt[e.to];
            double t = 0;
            for (double x : next) t += x;
            if (total + t > static_cast<double>(path_budget)) break;
            total += t;
            cnt = next;
            ++L;
        }
    }
    rb.rad = U;
    if (L == 0) return rb;
    const BetaPowers pw = beta_powers(space, L, max_label(aut));
    for (int i = 0; i < d; ++i) {
        std::vector<double> best(static_cast<std::size_t>(nv), 0.0);
        std::vector<CL> arch(static_cast<std::size_t>((L + 1) * na));
        std::vector<PadicElement> padic(static_cast<std::size_t>((L + 1) * np));
        std::function<void(int, int)> rec = [&](int s, int l) {
            const CL* a = arch.data() + l * na;
            const PadicElement* p = padic.data() + l * np;
            for (int v = 0; v < nv; ++v) {
                double x = v < na ? static_cast<double>(std::abs(a[v])) : space.padic()[v - na].abs(p[v - na]);
                x *= 1 + 1e-12;
                if (l == L) {
                    const double t = std::pow(rb.moduli[v], L) * U[s][v];
                    x = v < na ? x + t : std::max(x, t);
                }
                best[v] = std::max(best[v], x);
            }
            if (l == L) return;
            for (const auto& e : out[s]) {
                CL* a2 = arch.data() + (l + 1) * na;
                PadicElement* p2 = padic.data() + (l + 1) * np;
                for (int v = 0; v < na; ++v) a2[v] = a[v] + static_cast<long double>(e.label) * pw.arch[l][v];
                for (int k = 0; k < np; ++k) p2[k] = space.padic()[k].add(p[k], pw.padic[l][e.label * np + k]);
                rec(e.to, l + 1);
            }
        };
        rec(i, 0);
        for (int v = 0; v < nv; ++v) rb.rad[i][v] = std::min(U[i][v], best[v] + 1e-15);
    }
    return rb;
}

// ---------------------------------------------------------------------------

FractalApprox iterate_ifs(const RepresentationSpace& space, const SoficAutomaton& aut, int depth) {
    if (depth < 0) throw OutOfRange("depth must be non-negative");
    const int d = aut.state_count;
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    FractalApprox fa;
    fa.depth = 0;
    for (int i = 0; i < d; ++i) {
        PointCloud pc{na, np, {}, {}};
        EmbeddedPoint z = space.zero();
        pc.push(z.arch.data(), z.padic.data());
        fa.pieces.push_back(std::move(pc));
    }
    std::vector<std::vector<Edge>> in(static_cast<std::size_t>(d));
    for (const auto& e : aut.edges) in[static_cast<std::size_t>(e.to)].push_back(e);
    std::vector<PadicElement> digit_padic;
    for (int c = 0; c <= max_label(aut); ++c)
        for (const auto& pl : space.padic()) digit_padic.push_back(pl.from_integer(Integer(c)));

    for (int k = 0; k < depth; ++k) {
        std::vector<std::future<PointCloud>> jobs;
        for (int i = 0; i < d; ++i) {
            jobs.push_back(std::async(std::launch::async, [&, i]() {
                PointCloud pc{na, np, {}, {}};
                Dedupe seen(pc);
                std::vector<CL> a(static_cast<std::size_t>(na));
                std::vector<PadicElement> p(static_cast<std::size_t>(np));
                for (const auto& e : in[i]) {
                    const PointCloud& src = fa.pieces[static_cast<std::size_t>(e.from)];
                    for (std::size_t q = 0; q < src.size(); ++q) {
                        for (int v = 0; v < na; ++v) {
                            const auto& z = src.arch[q * na + v];
                            a[v] = CL(z.real(), z.imag()) * space.arch_root(v) + static_cast<long double>(e.label);
                        }
                        for (int v = 0; v < np; ++v) {
                            const auto& pl = space.padic()[v];
                            p[v] = pl.add(pl.mul(src.padic[q * np + v], pl.beta()), digit_padic[e.label * np + v]);
                        }
                        seen.add(a.data(), p.data());
                    }
                }
                return pc;
            }));
        }
        std::vector<PointCloud> next;
        for (auto& j : jobs) next.push_back(j.get());
        fa.pieces = std::move(next);
        fa.depth = k + 1;
    }
    return fa;
}

FractalApprox enumerate_paths(const RepresentationSpace& space, const SoficAutomaton& aut, int depth) {
    if (depth < 0) throw OutOfRange("depth must be non-negative");
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    const BetaPowers pw = beta_powers(space, depth, max_label(aut));
    FractalApprox fa;
    fa.depth = depth;
    for (int i = 0; i < aut.state_count; ++i) {
        PointCloud pc{na, np, {}, {}};
        Dedupe seen(pc);
        for_each_path_point(space, aut, pw, i, depth, [&](const CL* a, const PadicElement* p) { seen.add(a, p); });
        fa.pieces.push_back(std::move(pc));
    }
    return fa;
}

std::vector<std::set<DigitWord>> ifs_words(const SoficAutomaton& aut, int depth) {
    std::vector<std::set<DigitWord>> w(static_cast<std::size_t>(aut.state_count), std::set<DigitWord>{DigitWord{}});
    for (int k = 0; k < depth; ++k) {
        std::vector<std::set<DigitWord>> next(w.size());
        for (const auto& e : aut.edges)
            for (const auto& tail : w[static_cast<std::size_t>(e.from)]) {
                DigitWord x{e.label};
                x.insert(x.end(), tail.begin(), tail.end());
                next[static_cast<std::size_t>(e.to)].insert(std::move(x));
            }
        w = std::move(next);
    }
    return w;
}

std::vector<std::set<DigitWord>> path_words(const SoficAutomaton& aut, int depth) {
    auto out = reversed_out(aut);
    std::vector<std::set<DigitWord>> w(static_cast<std::size_t>(aut.state_count));
    DigitWord cur;
    std::function<void(int, int)> rec = [&](int root, int s) {
        if (static_cast<int>(cur.size()) == depth) {
            w[static_cast<std::size_t>(root)].insert(cur);
            return;
        }
        for (const auto& e : out[static_cast<std::size_t>(s)]) {
            cur.push_back(e.label);
            rec(root, e.to);
            cur.pop_back();
        }
    };
    for (int i = 0; i < aut.state_count; ++i) rec(i, i);
    return w;
}

std::vector<Integer> piece_counts(const SoficAutomaton& aut, int depth) {
    std::vector<Integer> c(static_cast<std::size_t>(aut.state_count), Integer(1));
    for (int k = 0; k < depth; ++k) {
        std::vector<Integer> next(c.size(), Integer(0));
        for (const auto& e : aut.edges) next[static_cast<std::size_t>(e.to)] += c[static_cast<std::size_t>(e.from)];
        c = std::move(next);
    }
    return c;
}

// ---------------------------------------------------------------------------

std::vector<FieldElement> cylinder_heights(const ParryData& parry, const PisotField& field) {
    std::vector<FieldElement> h;
    const auto& ds = parry.d_star;
    for (int i = 0; i < parry.d; ++i) {
        DigitWord pre, per;
        const std::size_t k = static_cast<std::size_t>(i);
        if (k < ds.preperiod.size()) {
            pre.assign(ds.preperiod.begin() + static_cast<long>(k), ds.preperiod.end());
            per = ds.period;
        } else if (!ds.period.empty()) {
            const std::size_t off = (k - ds.preperiod.size()) % ds.period.size();
            per.assign(ds.period.begin() + static_cast<long>(off), ds.period.end());
            per.insert(per.end(), ds.period.begin(), ds.period.begin() + static_cast<long>(off));
        }
        auto w = canonical(pre, per);
        h.push_back(value_of_periodic(field, parry, w.preperiod, w.period));
    }
    return h;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::In:
            return "In";
        case Verdict::Out:
            return "Out";
        case Verdict::BoundaryUnknown:
            return "BoundaryUnknown";
    }
    return "?";
}

CylinderSet make_cylinders(const RepresentationSpace& space, const ParryData& parry, int depth) {
    if (depth < 0) throw OutOfRange("depth must be non-negative");
    CylinderSet cyl{space, build_automaton(parry), cylinder_heights(parry, space.field()), {}, {}, {}, depth};
    for (const auto& h : cyl.heights) cyl.height_values.push_back(static_cast<double>(h.approx()));
    cyl.bounds = radius_bounds(space, cyl.automaton);
    cyl.powers = beta_powers(space, depth, max_label(cyl.automaton));
    return cyl;
}

MembershipVerdict membership_in(const CylinderSet& cyl, const EmbeddedPoint& pt, const std::vector<int>& pieces) {
    const auto& space = cyl.space;
    const int na = space.arch_count();
    const int np = static_cast<int>(space.padic().size());
    const int depth = cyl.depth;
    MembershipVerdict mv;
    mv.depth = depth;
    mv.tol_in = cyl.bounds.diam(depth);
    mv.tol_out = 3 * mv.tol_in;
    const EmbeddedPoint target = space.neg(pt);
    auto out = reversed_out(cyl.automaton);
    std::vector<std::vector<double>> modpow(static_cast<std::size_t>(depth + 1));
    for (int l = 0; l <= depth; ++l)
        for (double m : cyl.bounds.moduli) modpow[l].push_back(std::pow(m, l));

    double best = mv.tol_out;
    double floor_lb = std::numeric_limits<double>::infinity();
    int best_piece = -1;
    bool done = false;
    std::vector<CL> arch(static_cast<std::size_t>((depth + 1) * na));
    std::vector<PadicElement> padic(static_cast<std::size_t>((depth + 1) * np));

    auto lower_bound = [&](int s, int l, const CL* a, const PadicElement* p) {
        double lb = 0;
        for (int v = 0; v < na; ++v) {
            const double dv = static_cast<double>(std::abs(target.arch[v] - a[v]));
            lb = std::max(lb, dv - modpow[l][v] * cyl.bounds.rad[s][v] * (1 + 1e-12));
        }
        for (int k = 0; k < np; ++k) {
            const double dv = space.padic()[k].distance(target.padic[k], p[k]);
            if (dv > modpow[l][na + k] * cyl.bounds.rad[s][na + k] * (1 + 1e-9)) lb = std::max(lb, dv);
        }
        return lb;
    };

    std::function<void(int, int, int)> rec = [&](int root, int s, int l) {
        const CL* a = arch.data() + l * na;
        const PadicElement* p = padic.data() + l * np;
        if (l == depth) {
            double dist = 0;
            for (int v = 0; v < na; ++v) dist = std::max(dist, static_cast<double>(std::abs(target.arch[v] - a[v])));
            for (int k = 0; k < np; ++k) dist = std::max(dist, space.padic()[k].distance(target.padic[k], p[k]));
            floor_lb = std::min(floor_lb, dist);
            if (dist < best) {
                best = dist;
                best_piece = root;
            }
            if (best <= mv.tol_in) done = true;
            return;
        }
        struct Child {
            double lb;
            int to;
            int label;
        };
        std::vector<Child> kids;
        CL* a2 = arch.data() + (l + 1) * na;
        PadicElement* p2 = padic.data() + (l + 1) * np;
        for (const auto& e : out[static_cast<std::size_t>(s)]) {
            for (int v = 0; v < na; ++v) a2[v] = a[v] + static_cast<long double>(e.label) * cyl.powers.arch[l][v];
            for (int k = 0; k < np; ++k) p2[k] = space.padic()[k].add(p[k], cyl.powers.padic[l][e.label * np + k]);
            kids.push_back({lower_bound(e.to, l + 1, a2, p2), e.to, e.label});
        }
        std::sort(kids.begin(), kids.end(), [](const Child& x, const Child& y) { return x.lb < y.lb; });
        for (const auto& c : kids) {
            if (done) return;
            if (c.lb >= best) {
                floor_lb = std::min(floor_lb, c.lb);
                continue;
            }
            for (int v = 0; v < na; ++v) a2[v] = a[v] + static_cast<long double>(c.label) * cyl.powers.arch[l][v];
            for (int k = 0; k < np; ++k) p2[k] = space.padic()[k].add(p[k], cyl.powers.padic[l][c.label * np + k]);
            rec(root, c.to, l + 1);
        }
    };

    for (int i : pieces) {
        if (done) break;
        for (int v = 0; v < na; ++v) arch[v] = 0;
        for (int k = 0; k < np; ++k) padic[k] = PadicElement{};
        const double lb = lower_bound(i, 0, arch.data(), padic.data());
        if (lb >= best) {
            floor_lb = std::min(floor_lb, lb);
            continue;
        }
        rec(i, i, 0);
    }

    mv.piece = best_piece;
    if (best <= mv.tol_in) {
        mv.verdict = Verdict::In;
        mv.distance = best;
    } else if (best < mv.tol_out) {
        mv.verdict = Verdict::BoundaryUnknown;
        mv.distance = best;
    } else {
        mv.verdict = Verdict::Out;
        mv.distance = pieces.empty() ? std::numeric_limits<double>::infinity() : std::max(mv.tol_out, floor_lb);
    }
    return mv;
}

MembershipVerdict membership(const CylinderSet& cyl, const EmbeddedPoint& pt) {
    if (!pt.real_coord) throw DegenerateInput("membership needs a real coordinate");
    std::vector<int> pieces;
    const double b = static_cast<double>(*pt.real_coord);
    for (int i = 0; i < static_cast<int>(cyl.height_values.size()); ++i)
        if (b >= 0 && b < cyl.height_values[i]) pieces.push_back(i);
    return membership_in(cyl, pt, pieces);
}

namespace {

struct NodeKey {
    int state;
    FieldElement r;
    bool operator==(const NodeKey& o) const { return state == o.state && r == o.r; }
};

struct NodeKeyHash {
    std::size_t operator()(const NodeKey& k) const {
        std::size_t h = std::hash<FieldElement>{}(k.r);
        mix(h, k.state);
        return h;
    }
};

bool within_radius(const CylinderSet& cyl, int state, const FieldElement& r) {
    const auto& space = cyl.space;
    const int na = space.arch_count();
    for (int v = 0; v < na; ++v) {
        const double a = static_cast<double>(std::abs(space.arch_value(r, v)));
        if (a > cyl.bounds.rad[state][v] * (1 + 1e-9) + 1e-12) return false;
    }
    for (std::size_t k = 0; k < space.padic().size(); ++k) {
        double a;
        try {
            a = space.padic()[k].abs(space.padic_image(r, static_cast<int>(k)));
        } catch (const PrecisionExhausted&) {
            return false;
        }
        if (a > cyl.bounds.rad[state][na + k] * (1 + 1e-9)) return false;
    }
    return true;
}

}  // namespace

Witness find_witness(const CylinderSet& cyl, const FieldElement& t, const std::vector<int>& pieces, long budget) {
    const auto out = reversed_out(cyl.automaton);
    const FieldElement beta_inv = cyl.space.field().beta().inv();
    std::unordered_map<NodeKey, int, NodeKeyHash> ids;
    std::vector<NodeKey> nodes;
    std::vector<int> color;  // 0 new, 1 on stack, 2 done
    Witness w;
    auto id_of = [&](int state, const FieldElement& r) {
        auto [it, fresh] = ids.try_emplace(NodeKey{state, r}, static_cast<int>(nodes.size()));
        if (fresh) {
            nodes.push_back({state, r});
            color.push_back(0);
        }
        return it->second;
    };
    struct Frame {
        int node;
        std::size_t next;
        int label;  // label of the edge that led here
    };
    for (int root : pieces) {
        if (!within_radius(cyl, root, t)) continue;
        const int start = id_of(root, t);
        if (color[start] != 0) continue;
        std::vector<Frame> stack{{start, 0, -1}};
        color[start] = 1;
        while (!stack.empty()) {
            Frame& f = stack.back();
            const int s = nodes[f.node].state;
            if (f.next == out[s].size()) {
                color[f.node] = 2;
                stack.pop_back();
                continue;
            }
            const Edge& e = out[s][f.next++];
            const FieldElement r = (nodes[f.node].r - nodes[f.node].r.field().from_int(e.label)) * beta_inv;
            if (!within_radius(cyl, e.to, r)) continue;
            const int id = id_of(e.to, r);
            if (static_cast<long>(nodes.size()) > budget) {
                w.status = WitnessStatus::BudgetExceeded;
                w.nodes = static_cast<long>(nodes.size());
                return w;
            }
            if (color[id] == 1) {
                std::size_t k = 0;
                while (stack[k].node != id) ++k;
                w.status = WitnessStatus::Found;
                w.piece = root;
                for (std::size_t j = 1; j <= k; ++j) w.prefix.push_back(stack[j].label);
                for (std::size_t j = k + 1; j < stack.size(); ++j) w.cycle.push_back(stack[j].label);
                w.cycle.push_back(e.label);
                w.nodes = static_cast<long>(nodes.size());
                return w;
            }
            if (color[id] == 0) {
                color[id] = 1;
                stack.push_back({id, 0, e.label});
            }
        }
    }
    w.status = WitnessStatus::Exhausted;
    w.nodes = static_cast<long>(nodes.size());
    return w;
}

MembershipVerdict membership(const CylinderSet& cyl, const FieldElement& x) {
    EmbeddedPoint pt = cyl.space.delta(x);
    pt.real_coord = x.approx();
    std::vector<int> pieces;
    if (x.sign() >= 0)
        for (int i = 0; i < static_cast<int>(cyl.heights.size()); ++i)
            if (compare(x, cyl.heights[i]) < 0) pieces.push_back(i);
    MembershipVerdict mv = membership_in(cyl, pt, pieces);
    if (mv.verdict == Verdict::In) {
        const Witness w = find_witness(cyl, -x, pieces);
        if (w.status == WitnessStatus::Found) {
            mv.certified = true;
            mv.piece = w.piece;
        } else {
            mv.verdict = Verdict::BoundaryUnknown;
        }
    }
    return mv;
}

// ---------------------------------------------------------------------------

int projected_dimension(const RepresentationSpace& space) {
    return space.arch_dimension() + static_cast<int>(space.padic().size());
}

std::vector<double> project(const RepresentationSpace& space, const PointCloud& cloud, std::size_t i) {
    std::vector<double> out;
    const int na = cloud.arch_count, np = cloud.padic_count;
    for (int v = 0; v < na; ++v) {
        out.push_back(cloud.arch[i * na + v].real());
        if (space.arch_is_complex(v)) out.push_back(cloud.arch[i * na + v].imag());
    }
    for (int k = 0; k < np; ++k)
        out.push_back(space.padic()[k].project(cloud.padic[i * np + k], space.padic_digits(k)));
    return out;
}

std::vector<double> measure_estimate(const RepresentationSpace& space, const FractalApprox& approx,
                                     double resolution) {
    if (!(resolution > 0)) throw OutOfRange("resolution must be positive");
    const int D = projected_dimension(space);
    std::vector<double> out;
    for (const auto& pc : approx.pieces) {
        std::unordered_set<CellKey, CellKeyHash> cells;
        for (std::size_t i = 0; i < pc.size(); ++i) {
            CellKey k;
            for (double x : project(space, pc, i)) k.v.push_back(static_cast<long long>(std::floor(x / resolution)));
            cells.insert(std::move(k));
        }
        out.push_back(static_cast<double>(cells.size()) * std::pow(resolution, D));
    }
    return out;
}

std::vector<double> perron_vector(const Matrix& m) {
    const std::size_t n = m.size();
    std::vector<double> v(n, 1.0);
    for (int it = 0; it < 100000; ++it) {
        std::vector<double> w(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = v[i];
            for (std::size_t j = 0; j < n; ++j) w[i] += static_cast<double>(m[i][j]) * v[j];
        }
        double norm = 0;
        for (double x : w) norm += x * x;
        norm = std::sqrt(norm);
        double diff = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] /= norm;
            diff = std::max(diff, std::abs(w[i] - v[i]));
        }
        v = std::move(w);
        if (diff < 1e-15) break;
    }
    return v;
}

double angle_degrees(const std::vector<double>& a, const std::vector<double>& b) {
    double ab = 0, aa = 0, bb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ab += a[i] * b[i];
        aa += a[i] * a[i];
        bb += b[i] * b[i];
    }
    const double c = std::clamp(ab / std::sqrt(aa * bb), -1.0, 1.0);
    return std::acos(c) * 180.0 / std::acos(-1.0);
}

// ---------------------------------------------------------------------------

std::string Axis::label() const {
    switch (kind) {
        case AxisKind::ArchReal:
            return "re" + std::to_string(index);
        case AxisKind::ArchImag:
            return "im" + std::to_string(index);
        case AxisKind::Padic:
            return "p" + std::to_string(index);
        case AxisKind::Height:
            return "h";
    }
    return "?";
}

std::vector<Axis> plottable_axes(const RepresentationSpace& space) {
    std::vector<Axis> out;
    for (int v = 0; v < space.arch_count(); ++v) {
        out.push_back({AxisKind::ArchReal, v});
        if (space.arch_is_complex(v)) out.push_back({AxisKind::ArchImag, v});
    }
    for (int k = 0; k < static_cast<int>(space.padic().size()); ++k) out.push_back({AxisKind::Padic, k});
    return out;
}

Axis parse_axis(const std::string& s) {
    auto num = [&](std::size_t from) {
        const std::string rest = s.substr(from);
        if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
            throw ParseError("bad axis: " + s);
        return std::stoi(rest);
    };
    if (s == "h") return {AxisKind::Height, 0};
    if (s.rfind("re", 0) == 0) return {AxisKind::ArchReal, num(2)};
    if (s.rfind("im", 0) == 0) return {AxisKind::ArchImag, num(2)};
    if (s.rfind("p", 0) == 0) return {AxisKind::Padic, num(1)};
    throw ParseError("bad axis: " + s);
}

std::string Raster::to_pgm() const {
    std::ostringstream os;
    os << "P2\n" << width << ' ' << height << "\n255\n";
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            if (x) os << ' ';
            os << static_cast<int>(pixels[static_cast<std::size_t>(y * width + x)]);
        }
        os << '\n';
    }
    return os.str();
}

int Raster::distinct_shades() const {
    std::set<int> s;
    for (auto p : pixels)
        if (p != 255) s.insert(p);
    return static_cast<int>(s.size());
}

Raster render(const RepresentationSpace& space, const FractalApprox& approx, const std::vector<Axis>& axes,
              int width, int height, const std::vector<double>& heights) {
    if (width < 1 || height < 1) throw OutOfRange("image size must be positive");
    auto valid = [&](const Axis& a) {
        switch (a.kind) {
            case AxisKind::ArchReal:
                return a.index >= 0 && a.index < space.arch_count();
            case AxisKind::ArchImag:
                return a.index >= 0 && a.index < space.arch_count() && space.arch_is_complex(a.index);
            case AxisKind::Padic:
                return a.index >= 0 && a.index < static_cast<int>(space.padic().size());
            case AxisKind::Height:
                return heights.size() == approx.pieces.size() && !heights.empty();
        }
        return false;
    };
    if (axes.size() != 2 || !valid(axes[0]) || !valid(axes[1]) ||
        (axes[0].kind == axes[1].kind && axes[0].index == axes[1].index))
        throw NoPlottableAxes("need two distinct axes among the available ones");
    const bool two_sided = axes[0].kind == AxisKind::Height || axes[1].kind == AxisKind::Height;
    const double sign = two_sided ? -1.0 : 1.0;

    auto coord = [&](const Axis& a, const PointCloud& pc, std::size_t i) -> double {
        switch (a.kind) {
            case AxisKind::ArchReal:
                return sign * pc.arch[i * pc.arch_count + a.index].real();
            case AxisKind::ArchImag:
                return sign * pc.arch[i * pc.arch_count + a.index].imag();
            case AxisKind::Padic: {
                const auto& pl = space.padic()[a.index];
                const auto& x = pc.padic[i * pc.padic_count + a.index];
                return pl.project(two_sided ? pl.neg(x) : x, space.padic_digits(a.index));
            }
            case AxisKind::Height:
                return 0;
        }
        return 0;
    };

    double lo[2] = {std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
    double hi[2] = {-lo[0], -lo[1]};
    for (std::size_t piece = 0; piece < approx.pieces.size(); ++piece) {
        const auto& pc = approx.pieces[piece];
        for (std::size_t i = 0; i < pc.size(); ++i)
            for (int ax = 0; ax < 2; ++ax) {
                if (axes[ax].kind == AxisKind::Height) {
                    lo[ax] = std::min(lo[ax], 0.0);
                    hi[ax] = std::max(hi[ax], heights[piece]);
                } else {
                    const double x = coord(axes[ax], pc, i);
                    lo[ax] = std::min(lo[ax], x);
                    hi[ax] = std::max(hi[ax], x);
                }
            }
    }
    for (int ax = 0; ax < 2; ++ax)
        if (!(hi[ax] > lo[ax])) {
            lo[ax] -= 0.5;
            hi[ax] += 0.5;
        }
    const int dim[2] = {width, height};
    auto pix = [&](int ax, double x) {
        const double t = (x - lo[ax]) / (hi[ax] - lo[ax]);
        return std::clamp(static_cast<int>(std::lround(t * (dim[ax] - 1))), 0, dim[ax] - 1);
    };

    Raster r{width, height, std::vector<std::uint8_t>(static_cast<std::size_t>(width * height), 255)};
    const std::size_t n = approx.pieces.size();
    for (std::size_t piece = 0; piece < n; ++piece) {
        const auto shade = static_cast<std::uint8_t>(n > 1 ? piece * 200 / (n - 1) : 0);
        const auto& pc = approx.pieces[piece];
        for (std::size_t i = 0; i < pc.size(); ++i) {
            int px[2][2];
            for (int ax = 0; ax < 2; ++ax) {
                if (axes[ax].kind == AxisKind::Height) {
                    px[ax][0] = pix(ax, 0.0);
                    px[ax][1] = pix(ax, heights[piece]);
                } else {
                    px[ax][0] = px[ax][1] = pix(ax, coord(axes[ax], pc, i));
                }
            }
            for (int x = px[0][0]; x <= px[0][1]; ++x)
                for (int y = px[1][0]; y <= px[1][1]; ++y)
                    r.pixels[static_cast<std::size_t>((height - 1 - y) * width + x)] = shade;
        }
    }
    return r;
}

std::string cloud_text(const RepresentationSpace& space, const FractalApprox& approx) {
    std::ostringstream os;
    os << "# field " << space.field().descriptor() << "\n# depth " << approx.depth << "\n# places";
    for (const auto& p : space.places()) os << ' ' << p.label();
    os << '\n';
    for (std::size_t piece = 0; piece < approx.pieces.size(); ++piece) {
        const auto& pc = approx.pieces[piece];
        std::vector<std::string> rows;
        for (std::size_t i = 0; i < pc.size(); ++i)
            rows.push_back(std::to_string(piece + 1) + ' ' + space.serialize(pc.point(space, i)));
        std::sort(rows.begin(), rows.end());
        for (const auto& r : rows) os << r << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------------------

std::size_t HausdorffAccumulator::KeyHash::operator()(const Key& k) const {
    return CellKeyHash{}(CellKey{k.v});
}

HausdorffAccumulator::HausdorffAccumulator(const RepresentationSpace& space, const PointCloud& stored, double cap)
    : space_(space), stored_(stored), cap_(cap), cell_(cap) {
    for (const auto& pl : space.padic()) {
        // smallest J with p^(-J/e) <= cap
        int J = 0;
        while (std::pow(static_cast<double>(pl.prime()), -static_cast<double>(J) / pl.ramification()) > cap) ++J;
        padic_digits_.push_back(J);
    }
    best_stored_.assign(stored.size(), std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < stored.size(); ++i) {
        const PadicElement* p = stored.padic.data() + i * static_cast<std::size_t>(stored.padic_count);
        grid_[key_of(stored.arch.data() + i * static_cast<std::size_t>(stored.arch_count), p)].push_back(i);
    }
}

HausdorffAccumulator::Key HausdorffAccumulator::key_of(const std::complex<double>* arch,
                                                       const PadicElement* padic) const {
    Key k;
    for (int v = 0; v < space_.arch_count(); ++v) {
        k.v.push_back(static_cast<long long>(std::floor(arch[v].real() / cell_)));
        if (space_.arch_is_complex(v)) k.v.push_back(static_cast<long long>(std::floor(arch[v].imag() / cell_)));
    }
    for (std::size_t j = 0; j < space_.padic().size(); ++j) {
        const auto& pl = space_.padic()[j];
        const int e = pl.ramification();
        const int J = padic_digits_[j];
        const auto& a = padic[j];
        // ball of radius p^(-J/e) (integral elements): c_i mod p^ceil((J - i)/e)
        for (int i = 0; i < e; ++i) {
            int m = (J - i + e - 1) / e;
            if (m < 0) m = 0;
            std::uint64_t mod = 1;
            for (int t = 0; t < m; ++t) mod *= static_cast<std::uint64_t>(pl.prime());
            k.v.push_back(static_cast<long long>(a.c[i] % mod));
        }
        k.v.push_back(a.shift);
    }
    return k;
}

double HausdorffAccumulator::dist(std::size_t i, const CL* arch, const PadicElement* padic) const {
    double d = 0;
    for (int v = 0; v < stored_.arch_count; ++v) {
        const auto& z = stored_.arch[i * static_cast<std::size_t>(stored_.arch_count) + v];
        d = std::max(d, static_cast<double>(std::abs(CL(z.real(), z.imag()) - arch[v])));
    }
    for (int k = 0; k < stored_.padic_count; ++k)
        d = std::max(d, space_.padic()[k].distance(stored_.padic[i * static_cast<std::size_t>(stored_.padic_count) + k],
                                                   padic[k]));
    return d;
}

void HausdorffAccumulator::add(const CL* arch, const PadicElement* padic) {
    std::vector<std::complex<double>> ad;
    for (int v = 0; v < space_.arch_count(); ++v)
        ad.emplace_back(static_cast<double>(arch[v].real()), static_cast<double>(arch[v].imag()));
    const Key base = key_of(ad.data(), padic);
    const int na_axes = space_.arch_dimension();
    double best = std::numeric_limits<double>::infinity();
    int combos = 1;
    for (int i = 0; i < na_axes; ++i) combos *= 3;
    Key k = base;
    for (int c = 0; c < combos; ++c) {
        int t = c;
        for (int i = 0; i < na_axes; ++i) {
            k.v[static_cast<std::size_t>(i)] = base.v[static_cast<std::size_t>(i)] + (t % 3) - 1;
            t /= 3;
        }
        auto it = grid_.find(k);
        if (it == grid_.end()) continue;
        for (std::size_t idx : it->second) {
            // neither side can raise the result any more
            if (best <= worst_stream_ && best_stored_[idx] <= worst_stream_) continue;
            const double d = dist(idx, arch, padic);
            if (d > cap_) continue;
            best = std::min(best, d);
            best_stored_[idx] = std::min(best_stored_[idx], d);
        }
    }
    worst_stream_ = std::max(worst_stream_, best);
}

double HausdorffAccumulator::result() const {
    double r = worst_stream_;
    for (double b : best_stored_) r = std::max(r, b);
    return r;
}

}  // namespace betanum

namespace betanum {
namespace {

// Sorted cell hashes at one radius; candidates of a query are the points in its 3^n
// neighbouring arch cells with the same p-adic ball.
class NearestIndex {
   public:
    NearestIndex(const RepresentationSpace& space, const PointCloud& cloud, double radius)
        : space_(space), cloud_(cloud), radius_(radius) {
        for (const auto& pl : space.padic()) {
            int J = 0;
            while (std::pow(static_cast<double>(pl.prime()), -static_cast<double>(J) / pl.ramification()) > radius) ++J;
            std::vector<std::uint64_t> mods;
            for (int i = 0; i < pl.ramification(); ++i) {
                const int m = std::clamp((J - i + pl.ramification() - 1) / pl.ramification(), 0, pl.precision());
                std::uint64_t mod = 1;
                for (int t = 0; t < m; ++t) mod *= static_cast<std::uint64_t>(pl.prime());
                mods.push_back(mod);
            }
            mods_.push_back(std::move(mods));
        }
        std::vector<long long> comp;
        entries_.reserve(cloud.size());
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            components(cloud.arch.data() + i * static_cast<std::size_t>(cloud.arch_count),
                       cloud.padic.data() + i * static_cast<std::size_t>(cloud.padic_count), comp);
            entries_.emplace_back(hash(comp), i);
        }
        std::sort(entries_.begin(), entries_.end());
    }

    // Some distance <= good_enough if one exists, else the nearest distance up to the
    // radius, else infinity.
    double nearest(const CL* arch, const PadicElement* padic, double good_enough) const {
        std::vector<std::complex<double>> ad;
        for (int v = 0; v < space_.arch_count(); ++v)
            ad.emplace_back(static_cast<double>(arch[v].real()), static_cast<double>(arch[v].imag()));
        std::vector<long long> base;
        components(ad.data(), padic, base);
        const int axes = space_.arch_dimension();
        int combos = 1;
        for (int i = 0; i < axes; ++i) combos *= 3;
        std::vector<long long> k = base;
        double best = std::numeric_limits<double>::infinity();
        for (int c = 0; c < combos; ++c) {
            int t = c;
            for (int i = 0; i < axes; ++i) {
                k[static_cast<std::size_t>(i)] = base[static_cast<std::size_t>(i)] + (t % 3) - 1;
                t /= 3;
            }
            const std::uint64_t h = hash(k);
            auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair<std::uint64_t, std::size_t>{h, 0});
            for (; it != entries_.end() && it->first == h; ++it) {
                const double d = dist(it->second, arch, padic);
                if (d > radius_) continue;
                best = std::min(best, d);
                if (best <= good_enough) return best;
            }
        }
        return best;
    }

   private:
    void components(const std::complex<double>* arch, const PadicElement* padic, std::vector<long long>& out) const {
        out.clear();
        for (int v = 0; v < space_.arch_count(); ++v) {
            out.push_back(static_cast<long long>(std::floor(arch[v].real() / radius_)));
            if (space_.arch_is_complex(v)) out.push_back(static_cast<long long>(std::floor(arch[v].imag() / radius_)));
        }
        for (std::size_t j = 0; j < mods_.size(); ++j) {
            for (std::size_t i = 0; i < mods_[j].size(); ++i)
                out.push_back(static_cast<long long>(padic[j].c[i] % mods_[j][i]));
            out.push_back(padic[j].shift);
        }
    }
    static std::uint64_t hash(const std::vector<long long>& v) {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (long long x : v) {
            h ^= static_cast<std::uint64_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
            h ^= h >> 31;
        }
        return h;
    }
    double dist(std::size_t i, const CL* arch, const PadicElement* padic) const {
        double d = 0;
        for (int v = 0; v < cloud_.arch_count; ++v) {
            const auto& z = cloud_.arch[i * static_cast<std::size_t>(cloud_.arch_count) + v];
            d = std::max(d, static_cast<double>(std::abs(CL(z.real(), z.imag()) - arch[v])));
        }
        for (int k = 0; k < cloud_.padic_count; ++k)
            d = std::max(d, space_.padic()[k].distance(cloud_.padic[i * static_cast<std::size_t>(cloud_.padic_count) + k],
                                                       padic[k]));
        return d;
    }

    const RepresentationSpace& space_;
    const PointCloud& cloud_;
    double radius_;
    std::vector<std::vector<std::uint64_t>> mods_;
    std::vector<std::pair<std::uint64_t, std::size_t>> entries_;
};

double directed_distance(const RepresentationSpace& space, const PointCloud& from, const PointCloud& to, double cap,
                         double floor) {
    const NearestIndex fine(space, to, cap * 1e-6);
    const NearestIndex coarse(space, to, cap);
    double worst = floor;
    for (std::size_t i = 0; i < from.size(); ++i) {
        const auto pt = from.point(space, i);
        double d = fine.nearest(pt.arch.data(), pt.padic.data(), worst);
        if (d > worst) d = std::min(d, coarse.nearest(pt.arch.data(), pt.padic.data(), worst));
        worst = std::max(worst, d);
        if (worst > cap) return worst;
    }
    return worst;
}

}  // namespace

double hausdorff_distance(const RepresentationSpace& space, const PointCloud& a, const PointCloud& b, double cap) {
    const double ab = directed_distance(space, a, b, cap, 0.0);
    if (ab > cap) return ab;
    return directed_distance(space, b, a, cap, ab);
}

}  // namespace betanum
