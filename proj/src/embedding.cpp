#include "betanum/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "betanum/error.hpp"

namespace betanum {

namespace {

constexpr int kRootBits = 512;

}  // namespace

std::string PlaceDescriptor::label() const {
    switch (kind) {
        case PlaceKind::RealConjugate:
            return "real" + std::to_string(index);
        case PlaceKind::ComplexConjugate:
            return "complex" + std::to_string(index);
        case PlaceKind::PadicFactor:
            return "padic" + std::to_string(index);
    }
    return "?";
}

std::vector<long> prime_divisors(const Integer& n) {
    std::vector<long> out;
    Integer m = abs(n);
    for (long p = 2; Integer(p) * p <= m; ++p) {
        if (m % p != 0) continue;
        out.push_back(p);
        while (m % p == 0) m /= p;
    }
    if (m > 1) {
        if (!m.fits_slong_p()) throw UnsupportedRamification("prime factor too large: " + m.get_str());
        out.push_back(m.get_si());
    }
    return out;
}

RepresentationSpace::RepresentationSpace(PisotField field, PrecisionPolicy policy)
    : field_(std::move(field)), policy_(policy) {
    const auto& roots = field_.conjugate_approx();
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
        const bool cx = i >= field_.real_conjugate_count();
        const double m = static_cast<double>(std::abs(roots[i]));
        places_.push_back({cx ? PlaceKind::ComplexConjugate : PlaceKind::RealConjugate, i, m, cx ? m * m : m});
    }
    const auto discs = isolate_roots(field_.minpoly(), kRootBits);
    if (static_cast<int>(discs.size()) == field_.degree()) {
        for (const auto& z : roots) {
            const RootDisc* best = nullptr;
            long double gap = INFINITY;
            for (const auto& d : discs) {
                const long double g = std::abs(d.approx() - z);
                if (g < gap) gap = g, best = &d;
            }
            roots_hp_.emplace_back(mpf_class(best->center.re, kRootBits), mpf_class(best->center.im, kRootBits));
        }
    }
    for (long p : prime_divisors(field_.minpoly()[0])) {
        for (auto& pl : PadicPlace::above(field_.minpoly(), p)) {
            if (std::log2(static_cast<double>(p)) * pl.precision() < policy_.padic_digits)
                throw PrecisionExhausted("p-adic precision " + std::to_string(pl.precision()) + " digits at p=" +
                                         std::to_string(p) + " is below the policy");
            places_.push_back({PlaceKind::PadicFactor, static_cast<int>(padic_.size()), pl.metric_modulus(),
                               pl.haar_modulus()});
            padic_.push_back(std::move(pl));
        }
    }
}

int RepresentationSpace::padic_digits(int k) const {
    return std::min(policy_.padic_digits, padic_[static_cast<std::size_t>(k)].precision());
}

int RepresentationSpace::arch_dimension() const {
    return field_.real_conjugate_count() + 2 * field_.complex_pair_count();
}

EmbeddedPoint RepresentationSpace::zero() const {
    EmbeddedPoint z;
    z.arch.assign(static_cast<std::size_t>(arch_count()), 0);
    z.padic.assign(padic_.size(), PadicElement{});
    return z;
}

std::complex<long double> RepresentationSpace::arch_value(const FieldElement& x, int i) const {
    std::size_t bits = 0;
    for (const auto& c : x.numerator()) bits = std::max(bits, mpz_sizeinbase(c.get_mpz_t(), 2));
    if (bits <= 20 || roots_hp_.empty()) return x.eval(arch_root(i));
    const mp_bitcnt_t prec = std::min<mp_bitcnt_t>(bits + 96, kRootBits);
    const auto& [zr, zi] = roots_hp_[static_cast<std::size_t>(i)];
    mpf_class re(0, prec), im(0, prec), t(0, prec);
    for (std::size_t k = x.numerator().size(); k-- > 0;) {
        t = re * zr - im * zi;
        im = re * zi + im * zr;
        re = t + mpf_class(x.numerator()[k], prec);
    }
    const mpf_class den(x.denominator(), prec);
    re /= den;
    im /= den;
    long re_exp, im_exp;
    const double re_m = mpf_get_d_2exp(&re_exp, re.get_mpf_t());
    const double im_m = mpf_get_d_2exp(&im_exp, im.get_mpf_t());
    // Residual below the double mantissa of the leading part.
    t = re - std::ldexp(re_m, static_cast<int>(re_exp));
    const long double rv = std::ldexp(static_cast<long double>(re_m), static_cast<int>(re_exp)) + t.get_d();
    t = im - std::ldexp(im_m, static_cast<int>(im_exp));
    const long double iv = std::ldexp(static_cast<long double>(im_m), static_cast<int>(im_exp)) + t.get_d();
    return {rv, iv};
}

EmbeddedPoint RepresentationSpace::delta(const FieldElement& x) const {
    if (x.field() != field_) throw FieldMismatch("element from another field");
    EmbeddedPoint pt;
    for (int i = 0; i < arch_count(); ++i) {
        auto v = arch_value(x, i);
        if (!arch_is_complex(i)) v.imag(0);
        pt.arch.push_back(v);
    }
    for (std::size_t k = 0; k < padic_.size(); ++k) {
        const auto& pl = padic_[k];
        PadicElement v = padic_image(x, static_cast<int>(k));
        if (std::log2(static_cast<double>(pl.prime())) * (pl.precision() - v.shift) < policy_.padic_digits)
            throw PrecisionExhausted("denominator " + x.denominator().get_str() + " leaves fewer than " +
                                     std::to_string(policy_.padic_digits) + " bits");
        pt.padic.push_back(v);
    }
    return pt;
}

PadicElement RepresentationSpace::padic_image(const FieldElement& x, int k) const {
    const auto& pl = padic_[static_cast<std::size_t>(k)];
    PadicElement acc = pl.zero();
    for (std::size_t i = x.numerator().size(); i-- > 0;)
        acc = pl.add(pl.mul(acc, pl.beta()), pl.from_integer(x.numerator()[i]));
    return pl.mul(acc, pl.from_rational(Rational(Integer(1), x.denominator())));
}

EmbeddedPoint RepresentationSpace::h_beta(const EmbeddedPoint& pt) const {
    EmbeddedPoint r = pt;
    for (int i = 0; i < arch_count(); ++i) r.arch[i] = pt.arch[i] * arch_root(i);
    for (std::size_t k = 0; k < padic_.size(); ++k) r.padic[k] = padic_[k].mul(pt.padic[k], padic_[k].beta());
    return r;
}

EmbeddedPoint RepresentationSpace::add(const EmbeddedPoint& a, const EmbeddedPoint& b) const {
    EmbeddedPoint r = a;
    for (std::size_t i = 0; i < a.arch.size(); ++i) r.arch[i] += b.arch[i];
    for (std::size_t k = 0; k < padic_.size(); ++k) r.padic[k] = padic_[k].add(a.padic[k], b.padic[k]);
    if (a.real_coord && b.real_coord) r.real_coord = *a.real_coord + *b.real_coord;
    return r;
}

EmbeddedPoint RepresentationSpace::neg(const EmbeddedPoint& a) const {
    EmbeddedPoint r = a;
    for (auto& z : r.arch) z = -z;
    for (std::size_t k = 0; k < padic_.size(); ++k) r.padic[k] = padic_[k].neg(a.padic[k]);
    if (a.real_coord) r.real_coord = -*a.real_coord;
    return r;
}

EmbeddedPoint RepresentationSpace::sub(const EmbeddedPoint& a, const EmbeddedPoint& b) const {
    return add(a, neg(b));
}

EmbeddedPoint RepresentationSpace::scale(const EmbeddedPoint& a, long k) const {
    EmbeddedPoint r = a;
    for (auto& z : r.arch) z *= static_cast<long double>(k);
    for (std::size_t i = 0; i < padic_.size(); ++i) r.padic[i] = padic_[i].scale(a.padic[i], Integer(k));
    if (a.real_coord) r.real_coord = *a.real_coord * k;
    return r;
}

EmbeddedPoint RepresentationSpace::mul(const EmbeddedPoint& a, const EmbeddedPoint& b) const {
    EmbeddedPoint r = a;
    for (std::size_t i = 0; i < a.arch.size(); ++i) r.arch[i] = a.arch[i] * b.arch[i];
    for (std::size_t k = 0; k < padic_.size(); ++k) r.padic[k] = padic_[k].mul(a.padic[k], b.padic[k]);
    r.real_coord.reset();
    return r;
}

double RepresentationSpace::distance(const EmbeddedPoint& a, const EmbeddedPoint& b) const {
    double d = 0;
    for (std::size_t i = 0; i < a.arch.size(); ++i) d = std::max(d, static_cast<double>(std::abs(a.arch[i] - b.arch[i])));
    for (std::size_t k = 0; k < padic_.size(); ++k) d = std::max(d, padic_[k].distance(a.padic[k], b.padic[k]));
    return d;
}

double RepresentationSpace::max_modulus() const {
    double m = 0;
    for (const auto& p : places_) m = std::max(m, p.modulus);
    return m;
}

std::string RepresentationSpace::serialize(const EmbeddedPoint& pt) const {
    std::ostringstream os;
    os << std::setprecision(17);
    bool first = true;
    auto sep = [&]() -> std::ostream& {
        if (!first) os << ' ';
        first = false;
        return os;
    };
    for (int i = 0; i < arch_count(); ++i) {
        sep() << static_cast<double>(pt.arch[i].real());
        if (arch_is_complex(i)) os << ' ' << static_cast<double>(pt.arch[i].imag());
    }
    for (std::size_t k = 0; k < padic_.size(); ++k) {
        auto ds = padic_[k].digits(pt.padic[k], padic_digits(static_cast<int>(k)));
        std::string s;
        for (int d : ds) s += std::to_string(d);
        sep() << s;
    }
    if (pt.real_coord) sep() << static_cast<double>(*pt.real_coord);
    return os.str();
}

RepresentationSpace places(const PisotField& field, PrecisionPolicy policy) {
    return RepresentationSpace(field, policy);
}

std::vector<double> contraction_moduli(const RepresentationSpace& space) {
    std::vector<double> out;
    for (const auto& p : space.places()) out.push_back(p.haar);
    return out;
}

}  // namespace betanum
