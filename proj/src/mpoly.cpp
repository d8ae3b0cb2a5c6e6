#include "qsb/mpoly.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace qsb {

RingPtr PolyRing::make(std::vector<std::string> vars) {
    for (size_t i = 0; i < vars.size(); ++i)
        for (size_t j = i + 1; j < vars.size(); ++j)
            if (vars[i] == vars[j]) throw std::invalid_argument("PolyRing: duplicate variable " + vars[i]);
    return RingPtr(new PolyRing(std::move(vars)));
}

std::optional<size_t> PolyRing::index_of(const std::string& name) const {
    for (size_t i = 0; i < vars_.size(); ++i)
        if (vars_[i] == name) return i;
    return std::nullopt;
}

bool GrlexLess::operator()(const Mono& a, const Mono& b) const {
    uint32_t da = mono_degree(a), db = mono_degree(b);
    if (da != db) return da < db;
    // lex with first variable strongest: compare exponents left to right
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

MPoly MPoly::constant(RingPtr ring, const Rat& c) {
    MPoly f(std::move(ring));
    if (sgn(c) != 0) f.terms_.emplace(Mono(f.ring_->nvars(), 0), c);
    return f;
}

MPoly MPoly::variable(RingPtr ring, size_t i) {
    MPoly f(std::move(ring));
    Mono m(f.ring_->nvars(), 0);
    m.at(i) = 1;
    f.terms_.emplace(std::move(m), Rat(1));
    return f;
}

MPoly MPoly::monomial(RingPtr ring, Mono m, const Rat& c) {
    MPoly f(std::move(ring));
    if (m.size() != f.ring_->nvars()) throw std::invalid_argument("monomial: exponent arity");
    if (sgn(c) != 0) f.terms_.emplace(std::move(m), c);
    return f;
}

bool MPoly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
}

Rat MPoly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    if (!is_constant()) throw std::logic_error("constant_value: not constant");
    return terms_.begin()->second;
}

int MPoly::total_degree() const {
    if (terms_.empty()) return -1;
    return (int)mono_degree(terms_.rbegin()->first);
}

int MPoly::degree_in(size_t var) const {
    int d = -1;
    for (auto& [m, c] : terms_) d = std::max(d, (int)m.at(var));
    return terms_.empty() ? -1 : d;
}

bool MPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    uint32_t d = mono_degree(terms_.begin()->first);
    for (auto& [m, c] : terms_)
        if (mono_degree(m) != d) return false;
    return true;
}

bool MPoly::depends_on(size_t var) const {
    for (auto& [m, c] : terms_)
        if (m.at(var) > 0) return true;
    return false;
}

std::vector<size_t> MPoly::effective_vars() const {
    std::vector<size_t> out;
    for (size_t v = 0; ring_ && v < ring_->nvars(); ++v)
        if (depends_on(v)) out.push_back(v);
    return out;
}

const Rat& MPoly::coeff(const Mono& m) const {
    static const Rat zero(0);
    auto it = terms_.find(m);
    return it == terms_.end() ? zero : it->second;
}

void MPoly::set_coeff(const Mono& m, const Rat& c) {
    if (sgn(c) == 0)
        terms_.erase(m);
    else
        terms_[m] = c;
}

const std::pair<const Mono, Rat>& MPoly::leading() const {
    if (terms_.empty()) throw std::logic_error("leading: zero polynomial");
    return *terms_.rbegin();
}

MPoly MPoly::operator-() const {
    MPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
    if (!ring_) ring_ = o.ring_;
    for (auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(m, c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
    if (!ring_) ring_ = o.ring_;
    for (auto& [m, c] : o.terms_) {
        auto [it, fresh] = terms_.try_emplace(m, -c);
        if (!fresh) {
            it->second -= c;
            if (sgn(it->second) == 0) terms_.erase(it);
        }
    }
    return *this;
}

MPoly MPoly::operator+(const MPoly& o) const {
    MPoly r(*this);
    r += o;
    return r;
}

MPoly MPoly::operator-(const MPoly& o) const {
    MPoly r(*this);
    r -= o;
    return r;
}

MPoly mul_term(const MPoly& f, const Mono& m, const Rat& c) {
    MPoly r(f.ring_);
    if (sgn(c) == 0) return r;
    for (auto& [fm, fc] : f.terms_) {
        Mono nm = fm;
        for (size_t i = 0; i < nm.size(); ++i) nm[i] += m[i];
        r.terms_.emplace(std::move(nm), fc * c);
    }
    return r;
}

MPoly MPoly::operator*(const MPoly& o) const {
    MPoly r(ring_ ? ring_ : o.ring_);
    if (terms_.empty() || o.terms_.empty()) return r;
    // accumulate into the map; term counts here are modest
    for (auto& [m1, c1] : terms_)
        for (auto& [m2, c2] : o.terms_) {
            Mono nm = m1;
            for (size_t i = 0; i < nm.size(); ++i) nm[i] += m2[i];
            Rat pc = c1 * c2;
            auto [it, fresh] = r.terms_.try_emplace(std::move(nm), pc);
            if (!fresh) {
                it->second += pc;
                if (sgn(it->second) == 0) r.terms_.erase(it);
            }
        }
    return r;
}

bool MPoly::operator<(const MPoly& o) const {
    auto a = terms_.rbegin(), b = o.terms_.rbegin();
    GrlexLess less;
    for (; a != terms_.rend() && b != o.terms_.rend(); ++a, ++b) {
        if (less(a->first, b->first)) return true;
        if (less(b->first, a->first)) return false;
        if (a->second != b->second) return a->second < b->second;
    }
    return a == terms_.rend() && b != o.terms_.rend();
}

MPoly MPoly::scaled(const Rat& c) const {
    MPoly r(ring_);
    if (sgn(c) == 0) return r;
    for (auto& [m, cc] : terms_) r.terms_.emplace(m, cc * c);
    return r;
}

MPoly MPoly::pow(unsigned e) const {
    MPoly r = MPoly::constant(ring_, Rat(1));
    MPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

MPoly MPoly::derivative(size_t var) const {
    MPoly r(ring_);
    for (auto& [m, c] : terms_) {
        if (m.at(var) == 0) continue;
        Mono nm = m;
        Rat nc = c * Rat((long)nm[var]);
        nm[var] -= 1;
        r.terms_.emplace(std::move(nm), std::move(nc));
    }
    return r;
}

MPoly MPoly::substituted(const std::vector<MPoly>& images) const {
    if (images.size() != ring_->nvars()) throw std::invalid_argument("substituted: arity");
    RingPtr target = images.empty() ? ring_ : images.front().ring();
    MPoly acc(target);
    // cache powers of each image
    std::vector<std::vector<MPoly>> pows(images.size());
    for (size_t i = 0; i < images.size(); ++i) pows[i].push_back(MPoly::constant(target, Rat(1)));
    auto power = [&](size_t i, uint32_t e) -> const MPoly& {
        while (pows[i].size() <= e) pows[i].push_back(pows[i].back() * images[i]);
        return pows[i][e];
    };
    for (auto& [m, c] : terms_) {
        MPoly t = MPoly::constant(target, c);
        for (size_t i = 0; i < images.size(); ++i)
            if (m[i] > 0) t = t * power(i, m[i]);
        acc += t;
    }
    return acc;
}

MPoly MPoly::with_var_set(size_t var, const Rat& value) const {
    MPoly r(ring_);
    std::vector<Rat> pows{Rat(1)};
    auto power = [&](uint32_t e) -> const Rat& {
        while (pows.size() <= e) pows.push_back(pows.back() * value);
        return pows[e];
    };
    for (auto& [m, c] : terms_) {
        Mono nm = m;
        Rat nc = c * power(nm[var]);
        nm[var] = 0;
        if (sgn(nc) == 0) continue;
        auto [it, fresh] = r.terms_.try_emplace(std::move(nm), nc);
        if (!fresh) {
            it->second += nc;
            if (sgn(it->second) == 0) r.terms_.erase(it);
        }
    }
    return r;
}

MPoly MPoly::dehomogenized(size_t var) const {
    std::vector<std::string> names;
    std::vector<size_t> keep;
    for (size_t i = 0; i < ring_->nvars(); ++i)
        if (i != var) {
            names.push_back(ring_->var(i));
            keep.push_back(i);
        }
    RingPtr small = PolyRing::make(names);
    MPoly r(small);
    for (auto& [m, c] : terms_) {
        Mono nm(keep.size(), 0);
        for (size_t k = 0; k < keep.size(); ++k) nm[k] = m[keep[k]];
        auto [it, fresh] = r.terms_.try_emplace(std::move(nm), c);
        if (!fresh) {
            it->second += c;
            if (sgn(it->second) == 0) r.terms_.erase(it);
        }
    }
    return r;
}

MPoly MPoly::lifted(const RingPtr& big, const std::vector<size_t>& where) const {
    if (where.size() != ring_->nvars()) throw std::invalid_argument("lifted: arity");
    MPoly r(big);
    for (auto& [m, c] : terms_) {
        Mono nm(big->nvars(), 0);
        for (size_t k = 0; k < where.size(); ++k) nm.at(where[k]) = m[k];
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

MPoly MPoly::homogenized(size_t var, unsigned d) const {
    MPoly r(ring_);
    for (auto& [m, c] : terms_) {
        uint32_t deg = mono_degree(m);
        if (deg > d) throw std::invalid_argument("homogenized: degree too small");
        if (m.at(var) != 0) throw std::invalid_argument("homogenized: variable occurs");
        Mono nm = m;
        nm[var] = d - deg;
        r.terms_.emplace(std::move(nm), c);
    }
    return r;
}

Rat MPoly::eval(const std::vector<Rat>& point) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("eval: arity");
    Rat acc(0);
    std::vector<std::vector<Rat>> pows(point.size(), std::vector<Rat>{Rat(1)});
    auto power = [&](size_t i, uint32_t e) -> const Rat& {
        while (pows[i].size() <= e) pows[i].push_back(pows[i].back() * point[i]);
        return pows[i][e];
    };
    for (auto& [m, c] : terms_) {
        Rat t = c;
        for (size_t i = 0; i < point.size(); ++i)
            if (m[i]) t *= power(i, m[i]);
        acc += t;
    }
    return acc;
}

uint64_t MPoly::eval_mod(const std::vector<uint64_t>& point, const Fp& fp) const {
    if (point.size() != ring_->nvars()) throw std::invalid_argument("eval_mod: arity");
    uint64_t acc = 0;
    std::vector<std::vector<uint64_t>> pows(point.size(), std::vector<uint64_t>{1});
    auto power = [&](size_t i, uint32_t e) -> uint64_t {
        while (pows[i].size() <= e) pows[i].push_back(fp.mul(pows[i].back(), point[i] % fp.p));
        return pows[i][e];
    };
    for (auto& [m, c] : terms_) {
        uint64_t t = fp.from_rat(c);
        for (size_t i = 0; i < point.size(); ++i)
            if (m[i]) t = fp.mul(t, power(i, m[i]));
        acc = fp.add(acc, t);
    }
    return acc;
}

std::vector<MPoly> MPoly::coeffs_in(size_t var) const {
    int d = degree_in(var);
    std::vector<MPoly> cs(std::max(d + 1, 1), MPoly(ring_));
    for (auto& [m, c] : terms_) {
        Mono nm = m;
        uint32_t e = nm[var];
        nm[var] = 0;
        cs.at(e).terms_.emplace(std::move(nm), c);
    }
    return cs;
}

MPoly MPoly::from_coeffs_in(const RingPtr& ring, size_t var, const std::vector<MPoly>& cs) {
    MPoly r(ring);
    for (size_t e = 0; e < cs.size(); ++e)
        for (auto& [m, c] : cs[e].terms()) {
            Mono nm = m;
            nm.at(var) += (uint32_t)e;
            r.terms_.emplace(std::move(nm), c);
        }
    return r;
}

MPoly::Primitive MPoly::primitive_scaled() const {
    if (terms_.empty()) throw std::logic_error("primitive_scaled: zero polynomial");
    Int num_gcd(0), den_lcm(1);
    for (auto& [m, c] : terms_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), Int(c.get_num()).get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), Int(c.get_den()).get_mpz_t());
    }
    Rat unit = make_rat(num_gcd, den_lcm);
    if (sgn(terms_.rbegin()->second) < 0) unit = -unit;
    Primitive out{unit, scaled(Rat(1) / unit)};
    return out;
}

void MPoly::trim(const Mono& m) {
    auto it = terms_.find(m);
    if (it != terms_.end() && sgn(it->second) == 0) terms_.erase(it);
}

std::string MPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [m, c] = *it;
        Rat a = c;
        if (first) {
            if (sgn(a) < 0) {
                os << "-";
                a = -a;
            }
            first = false;
        } else {
            os << (sgn(a) < 0 ? " - " : " + ");
            if (sgn(a) < 0) a = -a;
        }
        bool has_vars = mono_degree(m) > 0;
        if (!has_vars || a != 1) {
            os << a.get_str();
            if (has_vars) os << "*";
        }
        bool first_var = true;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!first_var) os << "*";
            first_var = false;
            os << ring_->var(i);
            if (m[i] > 1) os << "^" << m[i];
        }
    }
    return os.str();
}

// ---- exact division ---------------------------------------------------------

std::optional<MPoly> divexact(const MPoly& f, const MPoly& g) {
    if (g.is_zero()) throw std::domain_error("divexact: zero divisor");
    MPoly rem = f;
    MPoly q(f.ring() ? f.ring() : g.ring());
    const auto& [gm, gc] = g.leading();
    while (!rem.is_zero()) {
        const auto& [rm, rc] = rem.leading();
        Mono qm(rm.size());
        for (size_t i = 0; i < rm.size(); ++i) {
            if (rm[i] < gm[i]) return std::nullopt;
            qm[i] = rm[i] - gm[i];
        }
        Rat qc = rc / gc;
        q += MPoly::monomial(q.ring(), qm, qc);
        rem -= mul_term(g, qm, qc);
    }
    return q;
}

// ---- multivariate gcd (primitive PRS) ---------------------------------------

namespace {

// content of f viewed in (Q[rest])[var]; returns gcd of the coefficients
MPoly content_in(const MPoly& f, size_t var) {
    auto cs = f.coeffs_in(var);
    MPoly c(f.ring());
    for (auto& ci : cs)
        if (!ci.is_zero()) c = gcd(c, ci);
    return c;
}

// pseudo remainder of f by g in variable `var`
MPoly pseudo_rem(MPoly f, const MPoly& g, size_t var) {
    int dg = g.degree_in(var);
    auto gcs = g.coeffs_in(var);
    MPoly glc = gcs.back();
    while (!f.is_zero()) {
        int df = f.degree_in(var);
        if (df < dg) break;
        auto fcs = f.coeffs_in(var);
        MPoly flc = fcs.back();
        // f := glc*f - flc*var^(df-dg)*g
        Mono shift(f.ring()->nvars(), 0);
        shift[var] = (uint32_t)(df - dg);
        f = f * glc - mul_term(g, shift, Rat(1)) * flc;
    }
    return f;
}

MPoly one_poly(const RingPtr& r) { return MPoly::constant(r, Rat(1)); }

}  // namespace

MPoly gcd(const MPoly& f, const MPoly& g) {
    const RingPtr ring = f.ring() ? f.ring() : g.ring();
    if (f.is_zero() && g.is_zero()) return MPoly(ring);
    if (f.is_zero()) return g.primitive_scaled().poly;
    if (g.is_zero()) return f.primitive_scaled().poly;
    if (f.is_constant() || g.is_constant()) return one_poly(ring);

    // main variable: the one of largest index occurring in either
    size_t var = 0;
    bool found = false;
    for (size_t v = ring->nvars(); v-- > 0;)
        if (f.depends_on(v) || g.depends_on(v)) {
            var = v;
            found = true;
            break;
        }
    if (!found) return one_poly(ring);

    if (!f.depends_on(var)) return gcd(f, content_in(g, var));
    if (!g.depends_on(var)) return gcd(content_in(f, var), g);

    MPoly cf = content_in(f, var), cg = content_in(g, var);
    MPoly c = gcd(cf, cg);
    MPoly a = *divexact(f, cf), b = *divexact(g, cg);
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    while (!b.is_zero()) {
        MPoly r = pseudo_rem(a, b, var);
        a = b;
        if (r.is_zero()) {
            b = MPoly(ring);
        } else {
            MPoly cr = content_in(r, var);
            b = *divexact(r, cr);
            b = b.primitive_scaled().poly;
        }
    }
    MPoly pp = *divexact(a, content_in(a, var));
    return (c * pp).primitive_scaled().poly;
}

MPoly squarefree_part(const MPoly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_part: zero");
    if (f.is_constant()) return MPoly::constant(f.ring(), Rat(1));
    MPoly g = f;
    for (size_t v = 0; v < f.ring()->nvars(); ++v)
        if (f.depends_on(v)) g = gcd(g, f.derivative(v));
    MPoly s = *divexact(f, g);
    return s.primitive_scaled().poly;
}

// ---- resultant via Bareiss on the Sylvester matrix ---------------------------

namespace {

// fraction-free Gaussian elimination determinant; entries are exact polynomials
MPoly bareiss_det(std::vector<std::vector<MPoly>> m, const RingPtr& ring) {
    size_t n = m.size();
    if (n == 0) return MPoly::constant(ring, Rat(1));
    MPoly prev = MPoly::constant(ring, Rat(1));
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
            if (swap_row == n) return MPoly(ring);  // singular
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                MPoly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                auto q = divexact(num, prev);
                if (!q) throw std::logic_error("bareiss: inexact division");
                m[i][j] = *q;
            }
        prev = m[k][k];
    }
    MPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

}  // namespace

MPoly resultant(const MPoly& f, const MPoly& g, size_t var) {
    const RingPtr ring = f.ring();
    int df = f.degree_in(var), dg = g.degree_in(var);
    if (f.is_zero() || g.is_zero()) return MPoly(ring);
    if (df <= 0 && dg <= 0) return MPoly::constant(ring, Rat(1));
    if (df <= 0) return f.pow((unsigned)dg);
    if (dg <= 0) return g.pow((unsigned)df);
    auto fc = f.coeffs_in(var), gc = g.coeffs_in(var);
    size_t n = (size_t)(df + dg);
    std::vector<std::vector<MPoly>> m(n, std::vector<MPoly>(n, MPoly(ring)));
    for (int row = 0; row < dg; ++row)
        for (int k = 0; k <= df; ++k) m[row][row + (df - k)] = fc[(size_t)k];
    for (int row = 0; row < df; ++row)
        for (int k = 0; k <= dg; ++k) m[dg + row][row + (dg - k)] = gc[(size_t)k];
    return bareiss_det(std::move(m), ring);
}

// ---- parser -------------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    void skip_ws() {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

Int parse_nat(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    std::string digits;
    while (c.i < c.s.size() && isdigit((unsigned char)c.s[c.i])) digits += c.s[c.i++];
    if (digits.empty()) throw ParseError(start, "expected a number");
    return Int(digits);
}

std::string parse_ident(Cursor& c) {
    c.skip_ws();
    size_t start = c.i;
    std::string name;
    while (c.i < c.s.size() && (isalnum((unsigned char)c.s[c.i]) || c.s[c.i] == '_')) name += c.s[c.i++];
    if (name.empty() || isdigit((unsigned char)name[0])) throw ParseError(start, "expected a variable name");
    return name;
}

MPoly parse_term(const RingPtr& ring, Cursor& c) {
    Rat coeff(1);
    Mono mono(ring->nvars(), 0);
    bool saw_factor = false;
    while (true) {
        char ch = c.peek();
        if (isdigit((unsigned char)ch)) {
            Int num = parse_nat(c);
            Int den(1);
            if (c.peek() == '/') {
                ++c.i;
                size_t pos = c.i;
                den = parse_nat(c);
                if (den == 0) throw ParseError(pos, "zero denominator");
            }
            coeff *= make_rat(num, den);
            saw_factor = true;
        } else if (isalpha((unsigned char)ch) || ch == '_') {
            size_t pos = c.i;
            std::string name = parse_ident(c);
            auto idx = ring->index_of(name);
            if (!idx) throw ParseError(pos, "unknown variable '" + name + "'");
            uint32_t e = 1;
            if (c.peek() == '^') {
                ++c.i;
                size_t epos = c.i;
                Int ee = parse_nat(c);
                if (ee > 1000000) throw ParseError(epos, "exponent too large");
                e = (uint32_t)ee.get_ui();
            }
            mono[*idx] += e;
            saw_factor = true;
        } else {
            throw ParseError(c.i, "expected a coefficient or variable");
        }
        if (c.peek() == '*') {
            ++c.i;
            continue;
        }
        break;
    }
    if (!saw_factor) throw ParseError(c.i, "empty term");
    return MPoly::monomial(ring, std::move(mono), coeff);
}

}  // namespace

MPoly parse_poly(const RingPtr& ring, const std::string& text) {
    Cursor c{text};
    MPoly acc(ring);
    bool first = true;
    while (!c.done()) {
        int sign = 1;
        char ch = c.peek();
        if (ch == '+' || ch == '-') {
            sign = ch == '-' ? -1 : 1;
            ++c.i;
        } else if (!first) {
            throw ParseError(c.i, "expected '+' or '-'");
        }
        // allow chained signs like "- -" to be an error, not silently eaten
        MPoly t = parse_term(ring, c);
        acc += sign < 0 ? -t : t;
        first = false;
    }
    if (first) throw ParseError(0, "empty polynomial");
    return acc;
}

}  // namespace qsb
