#pragma once

#include "qsb/mpoly.hpp"

namespace qsb {

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Exact rational function num/den over Q[x...]; stored with gcd(num,den) = 1,
// den integer-primitive with positive leading coefficient.
class RatFunc {
public:
    RatFunc() = default;
    explicit RatFunc(MPoly num);
    RatFunc(MPoly num, MPoly den);

    static RatFunc constant(const RingPtr& ring, const Rat& c);
    static RatFunc variable(const RingPtr& ring, size_t i);

    const MPoly& num() const { return num_; }
    const MPoly& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }
    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const { return num_.constant_value() / den_.constant_value(); }

    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;
    RatFunc operator-() const;
    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    RatFunc inverse() const;
    RatFunc squared() const { return *this * *this; }

    // Defined(value) or a pole at the point (no cancellation beyond the stored
    // normal form)
    std::optional<Rat> eval(const std::vector<Rat>& point) const;
    std::optional<uint64_t> eval_mod(const std::vector<uint64_t>& point, const Fp& fp) const;

    std::string str() const;

private:
    void normalize();
    MPoly num_, den_;
};

}  // namespace qsb
