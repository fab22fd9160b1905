#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"

namespace flagvar {

/// Designates the ground field. Characteristic 0 means the rationals,
/// a prime p means the residue field GF(p).
struct FieldSpec {
    std::uint32_t characteristic = 0;

    static bool is_prime(std::uint32_t n) {
        if (n < 2) return false;
        for (std::uint64_t d = 2; d * d <= n; ++d)
            if (n % d == 0) return false;
        return true;
    }

    static FieldSpec rationals() { return FieldSpec{0}; }

    static FieldSpec prime(std::uint32_t p) {
        if (!is_prime(p))
            throw Error("field characteristic must be prime, got " + std::to_string(p));
        return FieldSpec{p};
    }

    /// Parses a field tag as used on the command line: "q" for the
    /// rationals, otherwise a prime written in decimal.
    static FieldSpec parse(const std::string& tag) {
        if (tag == "q" || tag == "Q" || tag == "0") return rationals();
        std::uint64_t p = 0;
        for (char c : tag) {
            if (c < '0' || c > '9') throw Error("unrecognised field tag '" + tag + "'");
            p = p * 10 + static_cast<std::uint64_t>(c - '0');
            if (p > 0x7fffffff) throw Error("field characteristic out of range");
        }
        return prime(static_cast<std::uint32_t>(p));
    }

    bool finite() const { return characteristic != 0; }

    std::string name() const {
        return finite() ? "GF(" + std::to_string(characteristic) + ")" : "Q";
    }

    /// Tag used in serialized output; the inverse of parse().
    std::string tag() const {
        return finite() ? std::to_string(characteristic) : "q";
    }

    bool operator==(const FieldSpec& o) const { return characteristic == o.characteristic; }
    bool operator!=(const FieldSpec& o) const { return characteristic != o.characteristic; }
};

/// Element of a prime field GF(p). The modulus travels with the value, so
/// elements of different fields can coexist at runtime; combining them
/// throws FieldMismatchError. Values are kept in canonical residue form
/// 0 <= v < p, making operator== structural equality.
class GFp {
  public:
    /// Null element with no field attached; unusable until assigned.
    GFp() = default;

    GFp(std::int64_t value, std::uint32_t p) : v_(reduce(value, p)), p_(p) {}

    static GFp zero(const FieldSpec& f) { return GFp(0, checked(f)); }
    static GFp one(const FieldSpec& f) { return GFp(1, checked(f)); }
    static GFp from_int(const FieldSpec& f, std::int64_t n) { return GFp(n, checked(f)); }

    FieldSpec spec() const { return FieldSpec{p_}; }
    std::uint32_t modulus() const { return p_; }
    std::int64_t residue() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    GFp operator-() const {
        check(*this);
        return GFp(-v_, p_);
    }

    GFp& operator+=(const GFp& o) {
        check(*this, o);
        v_ = (v_ + o.v_) % p_;
        return *this;
    }
    GFp& operator-=(const GFp& o) {
        check(*this, o);
        v_ = reduce(v_ - o.v_, p_);
        return *this;
    }
    GFp& operator*=(const GFp& o) {
        check(*this, o);
        v_ = (v_ * o.v_) % p_;
        return *this;
    }
    GFp& operator/=(const GFp& o) { return *this *= o.inverse(); }

    friend GFp operator+(GFp a, const GFp& b) { return a += b; }
    friend GFp operator-(GFp a, const GFp& b) { return a -= b; }
    friend GFp operator*(GFp a, const GFp& b) { return a *= b; }
    friend GFp operator/(GFp a, const GFp& b) { return a /= b; }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    GFp inverse() const {
        check(*this);
        if (v_ == 0) throw DivisionByZeroError("inverse of zero in " + spec().name());
        std::int64_t t = 0, nt = 1;
        std::int64_t r = p_, nr = v_;
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return GFp(t, p_);
    }

    bool operator==(const GFp& o) const { return v_ == o.v_ && p_ == o.p_; }
    bool operator!=(const GFp& o) const { return !(*this == o); }

    std::string str() const { return std::to_string(v_); }

  private:
    static std::int64_t reduce(std::int64_t v, std::uint32_t p) {
        std::int64_t m = static_cast<std::int64_t>(p);
        std::int64_t r = v % m;
        return r < 0 ? r + m : r;
    }
    static std::uint32_t checked(const FieldSpec& f) {
        if (!f.finite())
            throw FieldMismatchError("GFp element requested for characteristic 0");
        return f.characteristic;
    }
    static void check(const GFp& a) {
        if (a.p_ == 0) throw FieldMismatchError("arithmetic on a GFp element with no field");
    }
    static void check(const GFp& a, const GFp& b) {
        if (a.p_ == 0 || a.p_ != b.p_)
            throw FieldMismatchError("mixed-field arithmetic: GF(" + std::to_string(a.p_) +
                                     ") vs GF(" + std::to_string(b.p_) + ")");
    }

    std::int64_t v_ = 0;
    std::uint32_t p_ = 0;
};

/// Exact rational scalar. Arbitrary precision, always stored in lowest
/// terms with positive denominator, so operator== is structural equality.
class Rat {
  public:
    using rep = boost::multiprecision::cpp_rational;

    Rat() = default;
    explicit Rat(std::int64_t n) : v_(n) {}
    Rat(std::int64_t num, std::int64_t den) {
        if (den == 0) throw DivisionByZeroError("rational with zero denominator");
        // division (not the component constructor) so sign and gcd normalise
        v_ = rep(num) / rep(den);
    }
    explicit Rat(rep v) : v_(std::move(v)) {}

    static Rat zero(const FieldSpec& f) {
        checked(f);
        return Rat();
    }
    static Rat one(const FieldSpec& f) {
        checked(f);
        return Rat(1);
    }
    static Rat from_int(const FieldSpec& f, std::int64_t n) {
        checked(f);
        return Rat(n);
    }

    FieldSpec spec() const { return FieldSpec::rationals(); }
    bool is_zero() const { return v_.is_zero(); }
    bool is_one() const { return v_ == 1; }
    const rep& value() const { return v_; }

    Rat operator-() const { return Rat(rep(-v_)); }

    Rat& operator+=(const Rat& o) {
        v_ += o.v_;
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        v_ -= o.v_;
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        v_ *= o.v_;
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        if (o.is_zero()) throw DivisionByZeroError("division by zero rational");
        v_ /= o.v_;
        return *this;
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    Rat inverse() const {
        if (is_zero()) throw DivisionByZeroError("inverse of zero rational");
        return Rat(rep(1) / v_);
    }

    bool operator==(const Rat& o) const { return v_ == o.v_; }
    bool operator!=(const Rat& o) const { return v_ != o.v_; }

    /// Canonical rendering: "n" for integers, otherwise "n/d".
    std::string str() const {
        using boost::multiprecision::denominator;
        using boost::multiprecision::numerator;
        if (denominator(v_) == 1) return numerator(v_).str();
        return numerator(v_).str() + "/" + denominator(v_).str();
    }

    /// Parses the rendering produced by str().
    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        using I = boost::multiprecision::cpp_int;
        try {
            if (slash == std::string::npos) return Rat(rep(I(s)));
            I num(s.substr(0, slash)), den(s.substr(slash + 1));
            if (den == 0) throw DivisionByZeroError("rational with zero denominator");
            return Rat(rep(num) / rep(den));
        } catch (const std::exception& e) {
            throw Error("bad rational literal '" + s + "': " + e.what());
        }
    }

  private:
    static void checked(const FieldSpec& f) {
        if (f.finite())
            throw FieldMismatchError("rational element requested for " + f.name());
    }

    rep v_;
};

inline std::string to_string(const GFp& x) { return x.str(); }
inline std::string to_string(const Rat& x) { return x.str(); }

/// All elements of a finite ground field, in residue order.
template <class K>
std::vector<K> field_elements(const FieldSpec& f) {
    if (!f.finite())
        throw EnumerationError("cannot enumerate the elements of " + f.name());
    std::vector<K> out;
    out.reserve(f.characteristic);
    for (std::uint32_t i = 0; i < f.characteristic; ++i)
        out.push_back(K::from_int(f, static_cast<std::int64_t>(i)));
    return out;
}

}  // namespace flagvar
