#include "betanum/numberfield.hpp"

#include <cmath>
#include <sstream>

#include "betanum/error.hpp"

namespace betanum {

struct PisotField::Data {
    IntPoly minpoly;
    RealInterval dominant;
    long double beta_ld = 0;
    std::vector<RootDisc> conjugates;
    std::vector<std::complex<long double>> conj_ld;
    int real_conjugates = 0;
    Integer floor_beta;
};

namespace {

long double to_ld(const Rational& q) {
    double hi = q.get_d();
    Rational rest = q - Rational(hi);
    return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

Integer floor_q(const Rational& q) {
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return f;
}

bool has_integer_root(const IntPoly& p) {
    if (p[0] == 0) return true;
    Integer c = abs(p[0]);
    Integer root;
    mpz_sqrt(root.get_mpz_t(), c.get_mpz_t());
    for (Integer k = 1; k <= root; ++k) {
        if (c % k != 0) continue;
        Integer other = c / k;
        for (const Integer& cand : {Integer(k), Integer(-k), other, Integer(-other)})
            if (poly::sign_at(p, Rational(cand)) == 0) return true;
    }
    return false;
}

// Interval enclosure of sum c_i X^i / den for X in [lo, hi], lo > 0.
RealInterval eval_interval(const std::vector<Integer>& c, const Integer& den, const RealInterval& x) {
    Rational lo = 0, hi = 0;
    Rational plo = 1, phi = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] >= 0) {
            lo += c[i] * plo;
            hi += c[i] * phi;
        } else {
            lo += c[i] * phi;
            hi += c[i] * plo;
        }
        plo *= x.lo;
        phi *= x.hi;
    }
    return {lo / den, hi / den};
}

RatPoly rp_sub(const RatPoly& a, const RatPoly& b) {
    RatPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    poly::trim(r);
    return r;
}

RatPoly rp_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    poly::trim(r);
    return r;
}

void hash_mix(std::size_t& h, std::size_t v) { h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); }

void hash_mpz(std::size_t& h, const Integer& z) {
    hash_mix(h, static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1));
    const std::size_t n = mpz_size(z.get_mpz_t());
    for (std::size_t i = 0; i < n; ++i) hash_mix(h, mpz_getlimbn(z.get_mpz_t(), static_cast<mp_size_t>(i)));
}

}  // namespace

PisotField PisotField::make(const std::vector<long>& coeffs) { return from_minpoly(poly::from_ints(coeffs)); }

PisotField PisotField::from_minpoly(const IntPoly& input) {
    IntPoly p = input;
    poly::trim(p);
    const int r = poly::degree(p);
    if (r < 1) throw DegenerateInput("minimal polynomial must have degree >= 1");
    if (p[r] != 1) throw DegenerateInput("minimal polynomial must be monic");

    auto data = std::make_shared<Data>();
    data->minpoly = p;

    if (r == 1) {
        Integer b = -p[0];
        if (b < 2) throw NotPisot("integer base must be at least 2, got " + b.get_str());
        data->dominant = {Rational(b), Rational(b)};
        data->beta_ld = to_ld(Rational(b));
        data->floor_beta = b;
        PisotField f;
        f.d_ = std::move(data);
        return f;
    }

    if (poly::degree(poly::gcd(p, poly::derivative(p))) > 0)
        throw DegenerateInput("polynomial is not square-free: " + poly::to_string(p));
    if (has_integer_root(p)) throw DegenerateInput("polynomial has a rational root: " + poly::to_string(p));

    const Rational fine(Integer(1), Integer(1) << 100);
    auto discs = isolate_until(p, [&](const std::vector<RootDisc>& ds) {
        for (const auto& d : ds) {
            if (unit_circle_position(d) == UnitCirclePosition::Undecided) return false;
            if (d.radius > fine) return false;
        }
        return true;
    });
    if (discs.empty()) throw NotPisot("roots of " + poly::to_string(p) + " could not be isolated");

    int outside = -1;
    for (std::size_t i = 0; i < discs.size(); ++i) {
        auto pos = unit_circle_position(discs[i]);
        if (pos == UnitCirclePosition::Undecided)
            throw NotPisot(poly::to_string(p) + " has a root too close to the unit circle");
        if (pos == UnitCirclePosition::Outside) {
            if (outside >= 0) throw NotPisot(poly::to_string(p) + " has two roots outside the unit circle");
            outside = static_cast<int>(i);
        }
    }
    if (outside < 0) throw NotPisot(poly::to_string(p) + " has no root outside the unit circle");
    const RootDisc& dom = discs[outside];
    if (!dom.real || dom.center.re < 0)
        throw NotPisot(poly::to_string(p) + ": dominant root is not a real number > 1");

    RealInterval iv{dom.center.re - dom.radius, dom.center.re + dom.radius};
    data->dominant = refine_real_root(p, iv, Rational(Integer(1), Integer(1) << 160));
    data->beta_ld = to_ld((data->dominant.lo + data->dominant.hi) / 2);
    data->floor_beta = floor_q(data->dominant.lo);
    if (floor_q(data->dominant.hi) != data->floor_beta) throw NotPisot("beta is not separated from an integer");

    for (std::size_t i = 0; i < discs.size(); ++i) {
        if (static_cast<int>(i) == outside) continue;
        if (discs[i].real) {
            data->conjugates.push_back(discs[i]);
            ++data->real_conjugates;
        }
    }
    for (std::size_t i = 0; i < discs.size(); ++i)
        if (!discs[i].real && discs[i].center.im > 0) data->conjugates.push_back(discs[i]);
    for (const auto& d : data->conjugates) data->conj_ld.emplace_back(to_ld(d.center.re), to_ld(d.center.im));

    PisotField f;
    f.d_ = std::move(data);
    return f;
}

int PisotField::degree() const { return poly::degree(d_->minpoly); }
const IntPoly& PisotField::minpoly() const { return d_->minpoly; }
const RealInterval& PisotField::dominant() const { return d_->dominant; }
long double PisotField::beta_approx() const { return d_->beta_ld; }
const std::vector<RootDisc>& PisotField::conjugates() const { return d_->conjugates; }
const std::vector<std::complex<long double>>& PisotField::conjugate_approx() const { return d_->conj_ld; }
int PisotField::real_conjugate_count() const { return d_->real_conjugates; }
int PisotField::complex_pair_count() const {
    return static_cast<int>(d_->conjugates.size()) - d_->real_conjugates;
}
Integer PisotField::floor_beta() const { return d_->floor_beta; }

RealInterval PisotField::dominant_refined(const Rational& max_width) const {
    if (d_->dominant.width() <= max_width) return d_->dominant;
    return refine_real_root(d_->minpoly, d_->dominant, max_width);
}

std::string PisotField::descriptor() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < d_->minpoly.size(); ++i) os << (i ? " " : "") << d_->minpoly[i];
    return os.str();
}

bool PisotField::operator==(const PisotField& o) const {
    return d_ == o.d_ || d_->minpoly == o.d_->minpoly;
}

FieldElement PisotField::zero() const { return from_int(0); }
FieldElement PisotField::one() const { return from_int(1); }
FieldElement PisotField::from_int(long n) const { return from_rational(Rational(n)); }

FieldElement PisotField::beta() const {
    std::vector<Integer> num(static_cast<std::size_t>(degree()));
    if (degree() == 1)
        num[0] = -d_->minpoly[0];
    else
        num[1] = 1;
    return FieldElement(*this, std::move(num), 1);
}

FieldElement PisotField::from_rational(const Rational& q) const {
    std::vector<Integer> num(static_cast<std::size_t>(degree()));
    num[0] = q.get_num();
    return FieldElement(*this, std::move(num), q.get_den());
}

FieldElement PisotField::from_coeffs(const std::vector<Rational>& coeffs) const {
    Integer l = 1;
    for (const auto& c : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    // Reduce high powers through the element constructor.
    std::vector<Integer> num;
    for (const auto& c : coeffs) {
        Rational s = c * l;
        num.push_back(s.get_num());
    }
    return FieldElement(*this, std::move(num), l);
}

std::vector<long> parse_descriptor(const std::string& line) {
    std::istringstream is(line);
    std::vector<long> out;
    std::string tok;
    while (is >> tok) {
        try {
            std::size_t used = 0;
            long v = std::stol(tok, &used);
            if (used != tok.size()) throw ParseError("bad coefficient '" + tok + "'");
            out.push_back(v);
        } catch (const std::logic_error&) {
            throw ParseError("bad coefficient '" + tok + "'");
        }
    }
    if (out.empty()) throw ParseError("empty field descriptor");
    return out;
}

FieldElement::FieldElement(PisotField field, std::vector<Integer> num, Integer den)
    : field_(std::move(field)), num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw DivisionByZero("zero denominator");
    canonicalize();
}

void FieldElement::canonicalize() {
    const IntPoly& p = field_.minpoly();
    const std::size_t r = static_cast<std::size_t>(field_.degree());
    for (std::size_t k = num_.size(); k-- > r;) {
        if (num_[k] == 0) continue;
        Integer c = num_[k];
        for (std::size_t i = 0; i < r; ++i) num_[k - r + i] -= c * p[i];
        num_[k] = 0;
    }
    num_.resize(r);
    if (den_ < 0) {
        den_ = -den_;
        for (auto& c : num_) c = -c;
    }
    Integer g = den_;
    for (const auto& c : num_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g != 1) {
        den_ /= g;
        for (auto& c : num_) c /= g;
    }
}

Rational FieldElement::coeff(int i) const {
    Rational q(num_[static_cast<std::size_t>(i)], den_);
    q.canonicalize();
    return q;
}

bool FieldElement::is_zero() const {
    for (const auto& c : num_)
        if (c != 0) return false;
    return true;
}

bool FieldElement::is_rational() const {
    for (std::size_t i = 1; i < num_.size(); ++i)
        if (num_[i] != 0) return false;
    return true;
}

Rational FieldElement::as_rational() const {
    if (!is_rational()) throw DegenerateInput("element is not rational");
    return coeff(0);
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    if (field_ != o.field_) throw FieldMismatch("operands belong to different fields");
    std::vector<Integer> n(num_.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = num_[i] * o.den_ + o.num_[i] * den_;
    return FieldElement(field_, std::move(n), den_ * o.den_);
}

FieldElement FieldElement::operator-() const {
    std::vector<Integer> n(num_.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = -num_[i];
    return FieldElement(field_, std::move(n), den_);
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator*(const FieldElement& o) const {
    if (field_ != o.field_) throw FieldMismatch("operands belong to different fields");
    std::vector<Integer> n(num_.size() + o.num_.size() - 1);
    for (std::size_t i = 0; i < num_.size(); ++i) {
        if (num_[i] == 0) continue;
        for (std::size_t j = 0; j < o.num_.size(); ++j) n[i + j] += num_[i] * o.num_[j];
    }
    return FieldElement(field_, std::move(n), den_ * o.den_);
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (is_rational()) return field_.from_rational(1 / coeff(0));
    // Extended Euclid: s * a + t * P = gcd.
    RatPoly r0 = poly::to_rational(field_.minpoly());
    RatPoly r1;
    for (int i = 0; i < field_.degree(); ++i) r1.push_back(coeff(i));
    poly::trim(r1);
    RatPoly s0, s1{Rational(1)};
    while (!r1.empty()) {
        RatPoly rem;
        RatPoly q = poly::divmod(r0, r1, rem);
        RatPoly s2 = rp_sub(s0, rp_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (poly::degree(r0) != 0) throw DegenerateInput("minimal polynomial is reducible");
    for (auto& c : s0) c /= r0[0];
    return field_.from_coeffs(s0);
}

FieldElement FieldElement::operator/(const FieldElement& o) const { return *this * o.inv(); }

FieldElement FieldElement::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    FieldElement result = field_.one(), base = *this;
    while (k) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_ == o.field_ && den_ == o.den_ && num_ == o.num_;
}

RealInterval FieldElement::real_value(const Rational& eps) const {
    if (is_rational()) return {coeff(0), coeff(0)};
    Rational w(Integer(1), Integer(1) << 160);
    for (;;) {
        RealInterval v = eval_interval(num_, den_, field_.dominant_refined(w));
        if (v.width() <= eps) return v;
        w = w * w;
    }
}

long double FieldElement::approx() const {
    const long double b = field_.beta_approx();
    long double acc = 0;
    for (std::size_t i = num_.size(); i-- > 0;) acc = acc * b + num_[i].get_d();
    return acc / den_.get_d();
}

Integer FieldElement::floor() const {
    if (is_rational()) return floor_q(coeff(0));
    const long double b = field_.beta_approx();
    long double v = 0, s = 0;
    for (std::size_t i = num_.size(); i-- > 0;) {
        long double c = num_[i].get_d();
        v = v * b + c;
        s = s * b + std::fabs(c);
    }
    const long double den = den_.get_d();
    if (std::isfinite(v) && std::isfinite(s) && den > 0) {
        long double e = s * (static_cast<long double>(num_.size()) + 4) * std::ldexp(1.0L, -50) / den;
        long double lo = std::floor(v / den - e), hi = std::floor(v / den + e);
        if (lo == hi && std::fabs(lo) < 1e15L) return Integer(static_cast<long>(lo));
    }
    Rational w(Integer(1), Integer(1) << 160);
    for (int round = 0; round < 8; ++round) {
        RealInterval iv = eval_interval(num_, den_, field_.dominant_refined(w));
        Integer flo = floor_q(iv.lo);
        if (flo == floor_q(iv.hi) && Rational(flo) != iv.hi) return flo;
        w = w * w;
    }
    throw FloorUndecidable("floor of " + to_string() + " not decided");
}

int FieldElement::sign() const {
    if (is_zero()) return 0;
    return floor() >= 0 ? 1 : -1;
}

bool FieldElement::in_unit_interval() const { return floor() == 0; }

std::complex<long double> FieldElement::eval(std::complex<long double> z) const {
    std::complex<long double> acc = 0;
    for (std::size_t i = num_.size(); i-- > 0;) acc = acc * z + static_cast<long double>(num_[i].get_d());
    return acc / static_cast<long double>(den_.get_d());
}

std::string FieldElement::to_string() const {
    std::ostringstream os;
    std::size_t last = num_.size();
    while (last > 1 && num_[last - 1] == 0) --last;
    for (std::size_t i = 0; i < last; ++i) os << (i ? " " : "") << num_[i];
    os << '/' << den_;
    return os.str();
}

std::size_t FieldElement::hash() const {
    std::size_t h = 0;
    for (const auto& c : num_) hash_mpz(h, c);
    hash_mpz(h, den_);
    return h;
}

int compare(const FieldElement& a, const FieldElement& b) { return (a - b).sign(); }

FieldElement parse_element(const PisotField& field, const std::string& text) {
    std::string left = text, right;
    if (auto slash = text.find('/'); slash != std::string::npos) {
        left = text.substr(0, slash);
        right = text.substr(slash + 1);
    }
    std::vector<Integer> num;
    std::istringstream is(left);
    std::string tok;
    while (is >> tok) {
        Integer v;
        if (v.set_str(tok, 10) != 0) throw ParseError("bad element '" + text + "'");
        num.push_back(v);
    }
    if (num.empty()) throw ParseError("bad element '" + text + "'");
    Integer den = 1;
    if (!right.empty()) {
        std::istringstream rs(right);
        std::string d, extra;
        rs >> d;
        if (d.empty() || rs >> extra || den.set_str(d, 10) != 0) throw ParseError("bad element '" + text + "'");
    }
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return FieldElement(field, std::move(num), den);
}

}  // namespace betanum
