#include "arsupp/ffield.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <tuple>

namespace arsupp::ff {

namespace {

using Poly = std::vector<Word>;  // ascending coefficients over F_p

Word add_mod(Word a, Word b, Word p) { Word s = a + b; return s >= p ? s - p : s; }
Word sub_mod(Word a, Word b, Word p) { return a >= b ? a - b : a + p - b; }
Word mul_mod(Word a, Word b, Word p) { return a * b % p; }

Word pow_mod(Word a, std::uint64_t e, Word p) {
    Word r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul_mod(r, a, p);
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    return r;
}

Word inv_mod(Word a, Word p) { return pow_mod(a, p - 2, p); }

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, Word p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    const Word lead_inv = inv_mod(m.back(), p);
    while (a.size() > dm) {
        const Word q = mul_mod(a.back(), lead_inv, p);
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t k = 0; k <= dm; ++k)
            a[shift + k] = sub_mod(a[shift + k], mul_mod(q, m[k], p), p);
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, Word p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = add_mod(r[i + j], mul_mod(a[i], b[j], p), p);
    return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m, Word p) {
    Poly r{1};
    while (e) {
        if (e & 1) r = poly_mulmod(r, base, m, p);
        base = poly_mulmod(base, base, m, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, Word p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

struct Registry {
    std::mutex mutex;
    std::map<std::tuple<Word, int, std::vector<Word>>, std::unique_ptr<FieldCtx>> fields;
};

Registry& registry() {
    static Registry r;
    return r;
}

}  // namespace

bool is_prime(Word n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (Word d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible(Word p, std::span<const Word> poly) {
    Poly f(poly.begin(), poly.end());
    for (auto& c : f) c %= p;
    trim(f);
    if (f.size() < 2) return false;
    const std::size_t deg = f.size() - 1;
    if (deg == 1) return true;
    Poly h = poly_mod(Poly{0, 1}, f, p);
    for (std::size_t k = 1; k <= deg / 2; ++k) {
        h = poly_powmod(h, p, f, p);
        Poly diff = h;
        diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
        diff[1] = sub_mod(diff[1], 1, p);
        trim(diff);
        if (diff.empty()) return false;  // t^{p^k} = t mod f: f splits over F_{p^k}
        if (poly_gcd(f, diff, p).size() > 1) return false;
    }
    return true;
}

std::string FieldCtx::describe() const {
    std::ostringstream os;
    os << "F_" << p_;
    if (e_ > 1) {
        os << '^' << e_ << " mod [";
        for (std::size_t k = 0; k < modulus_.size(); ++k) os << (k ? "," : "") << modulus_[k];
        os << ']';
    }
    return os.str();
}

Field make_field(Word p, int e, std::optional<std::vector<Word>> modulus) {
    if (p < 2 || p > kMaxCharacteristic)
        fail(ErrorCode::InvalidArgument, "characteristic out of range: " + std::to_string(p));
    if (!is_prime(p))
        fail(ErrorCode::CompositeCharacteristic, std::to_string(p) + " is not prime");
    if (e < 1 || e > kMaxDegree)
        fail(ErrorCode::InvalidArgument, "extension degree must be in [1, " +
                                             std::to_string(kMaxDegree) + "]");
    std::vector<Word> mod;
    if (e > 1) {
        if (modulus) {
            mod = *modulus;
            if (mod.size() != static_cast<std::size_t>(e) + 1 || mod.back() != 1)
                fail(ErrorCode::InvalidArgument,
                     "modulus must be monic of degree " + std::to_string(e) +
                         " (ascending coefficients, e + 1 entries)");
            for (auto& c : mod) c %= p;
            if (!is_irreducible(p, mod)) fail(ErrorCode::ReducibleModulus, "modulus is reducible over F_" + std::to_string(p));
        } else {
            mod.assign(static_cast<std::size_t>(e) + 1, 0);
            mod.back() = 1;
            while (!is_irreducible(p, mod)) {
                std::size_t k = 0;
                while (++mod[k] == p) mod[k++] = 0;
            }
        }
    } else if (modulus && !modulus->empty()) {
        fail(ErrorCode::InvalidArgument, "prime field takes no modulus");
    }

    auto& reg = registry();
    std::lock_guard lock(reg.mutex);
    auto key = std::make_tuple(p, e, mod);
    auto it = reg.fields.find(key);
    if (it == reg.fields.end()) {
        auto ctx = std::unique_ptr<FieldCtx>(new FieldCtx(p, e, mod));
        it = reg.fields.emplace(std::move(key), std::move(ctx)).first;
    }
    return it->second.get();
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(Field field, std::int64_t value) : field_(field) {
    const auto p = static_cast<std::int64_t>(field->p());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    c_[0] = static_cast<Word>(r);
}

FieldElement FieldElement::generator(Field field) {
    if (field->degree() == 1)
        fail(ErrorCode::InvalidArgument, "prime field has no extension generator");
    FieldElement t(field, 0);
    t.c_[1] = 1;
    return t;
}

FieldElement FieldElement::from_coeffs(Field field, std::span<const Word> coeffs) {
    if (coeffs.size() > static_cast<std::size_t>(field->degree()))
        fail(ErrorCode::InvalidArgument, "too many coefficients for " + field->describe());
    FieldElement a(field, 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) a.c_[k] = coeffs[k] % field->p();
    return a;
}

FieldElement FieldElement::from_integer(Field field, const BigInt& value) {
    BigInt r = value % BigInt(field->p());
    if (r < 0) r += field->p();
    return FieldElement(field, static_cast<std::int64_t>(r));
}

bool FieldElement::is_zero() const noexcept {
    return std::all_of(c_.begin(), c_.end(), [](Word w) { return w == 0; });
}

bool FieldElement::is_one() const noexcept {
    return c_[0] == 1 && std::all_of(c_.begin() + 1, c_.end(), [](Word w) { return w == 0; });
}

bool FieldElement::in_prime_field() const noexcept {
    return std::all_of(c_.begin() + 1, c_.end(), [](Word w) { return w == 0; });
}

Word FieldElement::prime_value() const {
    if (!in_prime_field()) fail(ErrorCode::DomainMismatch, "element " + to_string() + " is not in the prime field");
    return c_[0];
}

void FieldElement::bind_check(const FieldElement& other) const {
    if (field_ != other.field_) {
        fail(ErrorCode::FieldMismatch,
             "operands belong to different fields: " +
                 (field_ ? field_->describe() : std::string("<unbound>")) + " vs " +
                 (other.field_ ? other.field_->describe() : std::string("<unbound>")));
    }
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    bind_check(rhs);
    const Word p = field_->p();
    for (int k = 0; k < field_->degree(); ++k) c_[k] = add_mod(c_[k], rhs.c_[k], p);
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    bind_check(rhs);
    const Word p = field_->p();
    for (int k = 0; k < field_->degree(); ++k) c_[k] = sub_mod(c_[k], rhs.c_[k], p);
    return *this;
}

FieldElement FieldElement::operator-() const {
    FieldElement r = *this;
    const Word p = field_->p();
    for (int k = 0; k < field_->degree(); ++k) r.c_[k] = c_[k] ? p - c_[k] : 0;
    return r;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    bind_check(rhs);
    const Word p = field_->p();
    const int e = field_->degree();
    if (e == 1) {
        c_[0] = mul_mod(c_[0], rhs.c_[0], p);
        return *this;
    }
    std::array<Word, 2 * kMaxDegree - 1> prod{};
    for (int i = 0; i < e; ++i) {
        if (!c_[i]) continue;
        for (int j = 0; j < e; ++j)
            prod[i + j] = add_mod(prod[i + j], mul_mod(c_[i], rhs.c_[j], p), p);
    }
    const auto mod = field_->modulus();
    for (int top = 2 * e - 2; top >= e; --top) {
        const Word q = prod[top];
        if (!q) continue;
        prod[top] = 0;
        for (int k = 0; k < e; ++k)
            prod[top - e + k] = sub_mod(prod[top - e + k], mul_mod(q, mod[k], p), p);
    }
    std::copy_n(prod.begin(), e, c_.begin());
    return *this;
}

FieldElement operator*(FieldElement a, std::int64_t k) {
    return a *= FieldElement(a.field(), k);
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
    return *this *= rhs.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.field_ == b.field_ && a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero in " + field_->describe());
    const Word p = field_->p();
    if (field_->degree() == 1) {
        FieldElement r = *this;
        r.c_[0] = inv_mod(c_[0], p);
        return r;
    }
    // Extended Euclid on (modulus, a): track s with s*a = r (mod modulus).
    Poly r0(field_->modulus().begin(), field_->modulus().end());
    Poly r1(c_.begin(), c_.begin() + field_->degree());
    trim(r1);
    Poly s0{}, s1{1};
    while (r1.size() > 1) {
        // q = r0 / r1, r0 <- r0 - q r1
        Poly q(r0.size() - r1.size() + 1, 0);
        Poly rem = r0;
        const Word lead_inv = inv_mod(r1.back(), p);
        while (rem.size() >= r1.size()) {
            const Word c = mul_mod(rem.back(), lead_inv, p);
            const std::size_t shift = rem.size() - r1.size();
            q[shift] = c;
            for (std::size_t k = 0; k < r1.size(); ++k)
                rem[shift + k] = sub_mod(rem[shift + k], mul_mod(c, r1[k], p), p);
            trim(rem);
        }
        // s_new = s0 - q s1
        Poly qs(q.size() + s1.size(), 0);
        for (std::size_t i = 0; i < q.size(); ++i)
            for (std::size_t j = 0; j < s1.size(); ++j)
                qs[i + j] = add_mod(qs[i + j], mul_mod(q[i], s1[j], p), p);
        Poly s2(std::max(s0.size(), qs.size()), 0);
        for (std::size_t k = 0; k < s2.size(); ++k)
            s2[k] = sub_mod(k < s0.size() ? s0[k] : 0, k < qs.size() ? qs[k] : 0, p);
        trim(s2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant since the modulus is irreducible.
    const Word c = inv_mod(r1[0], p);
    FieldElement out(field_, 0);
    for (std::size_t k = 0; k < s1.size(); ++k) out.c_[k] = mul_mod(s1[k], c, p);
    return out;
}

FieldElement FieldElement::pow(std::uint64_t exponent) const {
    FieldElement r = one(field_);
    FieldElement b = *this;
    while (exponent) {
        if (exponent & 1) r *= b;
        b *= b;
        exponent >>= 1;
    }
    return r;
}

FieldElement FieldElement::pow(const BigInt& exponent) const {
    if (exponent < 0) return inverse().pow(BigInt(-exponent));
    FieldElement r = one(field_);
    FieldElement b = *this;
    BigInt e = exponent;
    while (e != 0) {
        if ((e & 1) != 0) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

FieldElement FieldElement::frobenius() const {
    if (field_->degree() == 1) return *this;
    return pow(field_->p());
}

FieldElement FieldElement::frobenius_inverse() const {
    FieldElement r = *this;
    for (int k = 1; k < field_->degree(); ++k) r = r.frobenius();
    return r;
}

std::string FieldElement::to_string() const {
    if (!field_ || field_->degree() == 1) return std::to_string(c_[0]);
    std::string s = "[";
    for (int k = 0; k < field_->degree(); ++k) {
        if (k) s += ',';
        s += std::to_string(c_[k]);
    }
    return s + ']';
}

std::int64_t FieldElement::symmetric_value() const {
    const Word v = prime_value();
    const Word p = field_->p();
    return v > p / 2 ? -static_cast<std::int64_t>(p - v) : static_cast<std::int64_t>(v);
}

std::ostream& operator<<(std::ostream& os, const FieldElement& a) { return os << a.to_string(); }

FieldElement frobenius(const FieldElement& a) { return a.frobenius(); }

FieldElement reduce(Field field, const Rational& value) {
    const BigInt den = boost::multiprecision::denominator(value);
    if (den % field->p() == 0)
        fail(ErrorCode::BadPrime, "p = " + std::to_string(field->p()) + " divides the denominator of " + value.str());
    return FieldElement::from_integer(field, boost::multiprecision::numerator(value)) /
           FieldElement::from_integer(field, den);
}

FieldElement lift(const FieldElement& a, Field target) {
    if (a.field() == target) return a;
    if (a.field()->p() != target->p())
        fail(ErrorCode::FieldMismatch, "cannot embed " + a.field()->describe() + " into " + target->describe());
    return FieldElement(target, static_cast<std::int64_t>(a.prime_value()));
}

FieldElement random_element(Field field, std::mt19937_64& rng) {
    std::uniform_int_distribution<Word> dist(0, field->p() - 1);
    std::array<Word, kMaxDegree> c{};
    for (int k = 0; k < field->degree(); ++k) c[k] = dist(rng);
    return FieldElement::from_coeffs(field, std::span<const Word>(c.data(), field->degree()));
}

FieldElement random_nonzero(Field field, std::mt19937_64& rng) {
    for (;;) {
        auto a = random_element(field, rng);
        if (!a.is_zero()) return a;
    }
}

Word primitive_root(Word p) {
    if (!is_prime(p)) fail(ErrorCode::CompositeCharacteristic, std::to_string(p) + " is not prime");
    if (p == 2) return 1;
    std::vector<Word> factors;
    Word n = p - 1;
    for (Word d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            factors.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) factors.push_back(n);
    for (Word g = 2; g < p; ++g) {
        if (std::all_of(factors.begin(), factors.end(),
                        [&](Word q) { return pow_mod(g, (p - 1) / q, p) != 1; }))
            return g;
    }
    return 1;
}

}  // namespace arsupp::ff
