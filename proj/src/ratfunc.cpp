#include "qsb/ratfunc.hpp"

namespace qsb {

RatFunc::RatFunc(MPoly num) : num_(std::move(num)) {
    den_ = MPoly::constant(num_.ring(), Rat(1));
}

RatFunc::RatFunc(MPoly num, MPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
    normalize();
}

RatFunc RatFunc::constant(const RingPtr& ring, const Rat& c) {
    return RatFunc(MPoly::constant(ring, c));
}

RatFunc RatFunc::variable(const RingPtr& ring, size_t i) {
    return RatFunc(MPoly::variable(ring, i));
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = MPoly::constant(den_.ring(), Rat(1));
        return;
    }
    MPoly g = gcd(num_, den_);
    if (g.total_degree() > 0) {
        num_ = *divexact(num_, g);
        den_ = *divexact(den_, g);
    }
    auto p = den_.primitive_scaled();
    den_ = p.poly;
    num_ = num_.scaled(Rat(1) / p.unit);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
    return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
    return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
    if (o.is_zero()) throw std::domain_error("RatFunc: division by zero");
    return RatFunc(num_ * o.den_, den_ * o.num_);
}

RatFunc RatFunc::operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
}

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
    return RatFunc(den_, num_);
}

std::optional<Rat> RatFunc::eval(const std::vector<Rat>& point) const {
    Rat d = den_.eval(point);
    if (sgn(d) == 0) return std::nullopt;
    return num_.eval(point) / d;
}

std::optional<uint64_t> RatFunc::eval_mod(const std::vector<uint64_t>& point, const Fp& fp) const {
    uint64_t d = den_.eval_mod(point, fp);
    if (d == 0) return std::nullopt;
    return fp.mul(num_.eval_mod(point, fp), fp.inv(d));
}

std::string RatFunc::str() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace qsb
