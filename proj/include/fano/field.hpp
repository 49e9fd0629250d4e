#pragma once

#include "fano/error.hpp"
#include "fano/numeric.hpp"

#include <cstdint>
#include <string>

namespace fano {

/// Exact rationals; the default coefficient field.
struct RationalField {
    using Elem = Rat;

    Elem of_int(const Int& n) const { return Rat(n); }
    Elem one() const { return Rat(1); }
    Elem inv(const Elem& e) const {
        if (e == 0) throw Error(ErrorCode::InternalInconsistency, "division by zero");
        return Rat(1) / e;
    }
    std::string describe() const { return "QQ"; }

    static bool is_zero(const Elem& e) { return e == 0; }
    static std::string str(const Elem& e) { return e.str(); }
};

/// Z/p for a prime p < 2^31. Elements carry their modulus; mixing moduli is a
/// programming error.
class PrimeFieldElem {
public:
    PrimeFieldElem(std::uint64_t value, std::uint64_t p) : v_(value % p), p_(p) {}

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    friend PrimeFieldElem operator+(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        a.match(b);
        return {a.v_ + b.v_, a.p_};
    }
    friend PrimeFieldElem operator-(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        a.match(b);
        return {a.v_ + a.p_ - b.v_, a.p_};
    }
    PrimeFieldElem operator-() const { return {p_ - v_, p_}; }
    friend PrimeFieldElem operator*(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        a.match(b);
        return {a.v_ * b.v_, a.p_};
    }
    friend bool operator==(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        a.match(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const PrimeFieldElem& a, const PrimeFieldElem& b) {
        return !(a == b);
    }

private:
    void match(const PrimeFieldElem& o) const {
        if (p_ != o.p_)
            throw Error(ErrorCode::InternalInconsistency, "mixed prime field moduli");
    }

    std::uint64_t v_;
    std::uint64_t p_;
};

struct PrimeField {
    std::uint64_t p;

    explicit PrimeField(std::uint64_t prime) : p(prime) {
        if (p < 2 || p >= (std::uint64_t(1) << 31))
            throw Error(ErrorCode::DegenerateInput, "modulus out of range");
        for (std::uint64_t d = 2; d * d <= p; ++d)
            if (p % d == 0) throw Error(ErrorCode::DegenerateInput, "modulus is not prime");
    }

    using Elem = PrimeFieldElem;

    Elem of_int(const Int& n) const {
        Int r = mod_floor(n, Int(p));
        return {r.convert_to<std::uint64_t>(), p};
    }
    Elem one() const { return {1, p}; }
    Elem inv(const Elem& e) const {
        if (e.value() == 0)
            throw Error(ErrorCode::InternalInconsistency, "division by zero");
        auto [g, x, y] = extended_gcd(Int(e.value()), Int(p));
        return of_int(x);
    }
    std::string describe() const { return "GF(" + std::to_string(p) + ")"; }

    static bool is_zero(const Elem& e) { return e.value() == 0; }
    static std::string str(const Elem& e) { return std::to_string(e.value()); }
};

}  // namespace fano
