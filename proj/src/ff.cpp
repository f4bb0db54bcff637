#include "neron/ff.hpp"

#include <algorithm>
#include <stdexcept>

namespace neron {

namespace {

uint32_t addm(uint32_t x, uint32_t y, uint32_t p) {
    uint64_t s = static_cast<uint64_t>(x) + y;
    if (s >= p) s -= p;
    return static_cast<uint32_t>(s);
}
uint32_t subm(uint32_t x, uint32_t y, uint32_t p) { return x >= y ? x - y : x + p - y; }
uint32_t mulm(uint32_t x, uint32_t y, uint32_t p) {
    return static_cast<uint32_t>(static_cast<uint64_t>(x) * y % p);
}
uint32_t powm(uint32_t x, uint64_t e, uint32_t p) {
    uint64_t r = 1, base = x % p;
    while (e) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<uint32_t>(r);
}
uint32_t invm(uint32_t x, uint32_t p) {
    if (x == 0) throw std::domain_error("ff: division by zero");
    int64_t a = x, b = p, u = 1, v = 0;
    while (b) {
        int64_t q = a / b;
        int64_t t = a - q * b;
        a = b;
        b = t;
        t = u - q * v;
        u = v;
        v = t;
    }
    int64_t r = u % p;
    if (r < 0) r += p;
    return static_cast<uint32_t>(r);
}

void check_same_field(const Fq& x, const Fq& y) {
    if (x.p != y.p) throw std::invalid_argument("ff: mixed-field operands");
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d : {2ULL, 3ULL, 5ULL, 7ULL}) {
        if (n % d == 0) return n == d;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) -> uint64_t {
        return static_cast<uint64_t>(static_cast<__uint128_t>(a) * b % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) -> uint64_t {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    // deterministic witness set for n < 2^64
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (a % n == 0) continue;
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

PrimeField::PrimeField(uint64_t p) {
    if (p < 5 || p > 0xffffffffULL || !is_prime_u64(p))
        throw std::invalid_argument("PrimeField: p must be a prime >= 5 (and < 2^32)");
    p_ = static_cast<uint32_t>(p);
    uint32_t r = 2;
    while (powm(r, (p_ - 1) / 2, p_) == 1) ++r;
    r_ = r;
}

Fq PrimeField::elem(long long a) const { return elem(a, 0); }

Fq PrimeField::elem(long long a, long long b) const {
    long long am = a % p_, bm = b % p_;
    if (am < 0) am += p_;
    if (bm < 0) bm += p_;
    return Fq{p_, r_, static_cast<uint32_t>(am), static_cast<uint32_t>(bm)};
}

Fq PrimeField::from_index(uint64_t idx) const {
    if (idx >= static_cast<uint64_t>(p_) * p_) throw std::out_of_range("from_index");
    return Fq{p_, r_, static_cast<uint32_t>(idx % p_), static_cast<uint32_t>(idx / p_)};
}

Fq PrimeField::parse(const std::string& s) const {
    size_t pos = 0;
    auto read_int = [&]() -> long long {
        bool neg = false;
        if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !isdigit(static_cast<unsigned char>(s[pos])))
            throw std::invalid_argument("Fq parse: expected digits in '" + s + "'");
        long long v = 0;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
            v = (v * 10 + (s[pos] - '0')) % p_;
            ++pos;
        }
        return neg ? -v : v;
    };
    long long a = read_int();
    if (pos == s.size()) return elem(a);
    long long b = read_int();
    if (pos + 2 != s.size() || s[pos] != '*' || s[pos + 1] != 't')
        throw std::invalid_argument("Fq parse: bad element '" + s + "'");
    return elem(a, b);
}

Fq Fq::operator-() const { return Fq{p, r, a ? p - a : 0, b ? p - b : 0}; }

Fq operator+(const Fq& x, const Fq& y) {
    check_same_field(x, y);
    return Fq{x.p, x.r, addm(x.a, y.a, x.p), addm(x.b, y.b, x.p)};
}

Fq operator-(const Fq& x, const Fq& y) {
    check_same_field(x, y);
    return Fq{x.p, x.r, subm(x.a, y.a, x.p), subm(x.b, y.b, x.p)};
}

Fq operator*(const Fq& x, const Fq& y) {
    check_same_field(x, y);
    uint32_t p = x.p;
    uint32_t a = addm(mulm(x.a, y.a, p), mulm(mulm(x.b, y.b, p), x.r, p), p);
    uint32_t b = addm(mulm(x.a, y.b, p), mulm(x.b, y.a, p), p);
    return Fq{p, x.r, a, b};
}

Fq Fq::inv() const {
    if (is_zero()) throw std::domain_error("ff: division by zero");
    if (b == 0) return Fq{p, r, invm(a, p), 0};
    // (a + bt)^-1 = (a - bt) / (a^2 - b^2 r)
    uint32_t den = subm(mulm(a, a, p), mulm(mulm(b, b, p), r, p), p);
    uint32_t di = invm(den, p);
    return Fq{p, r, mulm(a, di, p), mulm(b ? p - b : 0, di, p)};
}

Fq operator/(const Fq& x, const Fq& y) {
    check_same_field(x, y);
    return x * y.inv();
}

Fq Fq::pow(long long e) const {
    Fq base = *this;
    unsigned long long ue;
    if (e < 0) {
        base = base.inv();
        ue = static_cast<unsigned long long>(-(e + 1)) + 1;
    } else {
        ue = static_cast<unsigned long long>(e);
    }
    Fq acc{p, r, 1, 0};
    while (ue) {
        if (ue & 1) acc = acc * base;
        base = base * base;
        ue >>= 1;
    }
    return acc;
}

Fq Fq::frobenius() const {
    // t^p = -t since t^2 = r is a non-residue
    return Fq{p, r, a, b ? p - b : 0};
}

std::string Fq::str() const {
    if (b == 0) return std::to_string(a);
    return std::to_string(a) + "+" + std::to_string(b) + "*t";
}

namespace detail {

Fq horner(const std::vector<Fq>& coeffs, const Fq& x) {
    Fq acc{x.p, x.r, 0, 0};
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

namespace {

std::vector<Fq> trim(std::vector<Fq> f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    return f;
}

std::vector<Fq> poly_mul(const std::vector<Fq>& f, const std::vector<Fq>& g, const PrimeField& F) {
    if (f.empty() || g.empty()) return {};
    std::vector<Fq> r(f.size() + g.size() - 1, F.zero());
    for (size_t i = 0; i < f.size(); ++i) {
        if (f[i].is_zero()) continue;
        for (size_t j = 0; j < g.size(); ++j) r[i + j] = r[i + j] + f[i] * g[j];
    }
    return trim(std::move(r));
}

// remainder of f by nonzero g
std::vector<Fq> poly_mod(std::vector<Fq> f, const std::vector<Fq>& g) {
    f = trim(std::move(f));
    Fq lead_inv = g.back().inv();
    while (f.size() >= g.size()) {
        Fq c = f.back() * lead_inv;
        size_t shift = f.size() - g.size();
        for (size_t i = 0; i + 1 < g.size(); ++i) f[shift + i] = f[shift + i] - c * g[i];
        f.pop_back();
        while (!f.empty() && f.back().is_zero()) f.pop_back();
    }
    return f;
}

// quotient of f by nonzero g, assuming exact division is not required
std::vector<Fq> poly_div(std::vector<Fq> f, const std::vector<Fq>& g, const PrimeField& F) {
    f = trim(std::move(f));
    if (f.size() < g.size()) return {};
    std::vector<Fq> q(f.size() - g.size() + 1, F.zero());
    Fq lead_inv = g.back().inv();
    while (f.size() >= g.size()) {
        Fq c = f.back() * lead_inv;
        size_t shift = f.size() - g.size();
        q[shift] = c;
        for (size_t i = 0; i + 1 < g.size(); ++i) f[shift + i] = f[shift + i] - c * g[i];
        f.pop_back();
        while (!f.empty() && f.back().is_zero()) f.pop_back();
    }
    return trim(std::move(q));
}

std::vector<Fq> poly_gcd(std::vector<Fq> f, std::vector<Fq> g) {
    f = trim(std::move(f));
    g = trim(std::move(g));
    while (!g.empty()) {
        std::vector<Fq> r = poly_mod(f, g);
        f = std::move(g);
        g = std::move(r);
    }
    if (!f.empty()) {
        Fq li = f.back().inv();
        for (Fq& c : f) c = c * li;
    }
    return f;
}

std::vector<Fq> poly_powmod(std::vector<Fq> base, uint64_t e, const std::vector<Fq>& mod,
                            const PrimeField& F) {
    std::vector<Fq> acc = {F.one()};
    base = poly_mod(std::move(base), mod);
    while (e) {
        if (e & 1) acc = poly_mod(poly_mul(acc, base, F), mod);
        base = poly_mod(poly_mul(base, base, F), mod);
        e >>= 1;
    }
    return acc;
}

// f: monic squarefree product of linears over F_q; extract all roots.
void split_linears(const std::vector<Fq>& f, const PrimeField& F, uint64_t qsize, uint64_t& ctr,
                   std::vector<Fq>& out) {
    if (f.size() <= 1) return;
    if (f.size() == 2) {
        out.push_back(-f[0]);  // monic: x + c
        return;
    }
    while (true) {
        Fq delta = F.from_index(ctr++ % qsize);
        std::vector<Fq> hm = poly_powmod({delta, F.one()}, (qsize - 1) / 2, f, F);
        if (hm.empty()) continue;
        hm[0] = hm[0] - F.one();
        hm = trim(std::move(hm));
        if (hm.empty()) continue;  // all factors on the same side
        std::vector<Fq> g1 = poly_gcd(f, hm);
        if (g1.size() <= 1 || g1.size() == f.size()) continue;
        std::vector<Fq> g2 = poly_div(f, g1, F);
        split_linears(g1, F, qsize, ctr, out);
        split_linears(g2, F, qsize, ctr, out);
        return;
    }
}

std::vector<Fq> roots_with_multiplicity(const std::vector<Fq>& coeffs, std::vector<Fq> roots) {
    std::vector<Fq> out;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (const Fq& root : roots) {
        std::vector<Fq> f = coeffs;
        int mult = 0;
        while (f.size() > 1) {
            // synthetic division by (X - root)
            std::vector<Fq> q(f.size() - 1, root);
            Fq carry = f.back();
            for (size_t i = f.size() - 1; i-- > 0;) {
                q[i] = carry;
                carry = f[i] + carry * root;
            }
            if (!carry.is_zero()) break;
            ++mult;
            f = std::move(q);
        }
        for (int i = 0; i < mult; ++i) out.push_back(root);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<Fq> find_roots_exhaustive(const std::vector<Fq>& coeffs, WhichField field) {
    const Fq& c0 = coeffs.front();
    PrimeField F(c0.p);
    uint64_t n = field == WhichField::Fp ? c0.p : static_cast<uint64_t>(c0.p) * c0.p;
    std::vector<Fq> roots;
    for (uint64_t i = 0; i < n; ++i) {
        Fq x = field == WhichField::Fp ? F.elem(static_cast<long long>(i)) : F.from_index(i);
        if (horner(coeffs, x).is_zero()) roots.push_back(x);
    }
    return roots_with_multiplicity(coeffs, std::move(roots));
}

std::vector<Fq> find_roots_cz(const std::vector<Fq>& coeffs, WhichField field) {
    const Fq& c0 = coeffs.front();
    PrimeField F(c0.p);
    uint64_t qsize = field == WhichField::Fp ? c0.p : static_cast<uint64_t>(c0.p) * c0.p;
    std::vector<Fq> f = coeffs;
    f = trim(std::move(f));
    Fq li = f.back().inv();
    for (Fq& c : f) c = c * li;
    // gcd(f, X^q - X) = product of (X - root) over distinct roots in F_q
    std::vector<Fq> xq = poly_powmod({F.zero(), F.one()}, qsize, f, F);
    xq.resize(std::max<size_t>(xq.size(), 2), F.zero());
    xq[1] = xq[1] - F.one();
    std::vector<Fq> g = poly_gcd(f, trim(std::move(xq)));
    std::vector<Fq> roots;
    if (g.size() > 1) {
        uint64_t ctr = 1;  // deterministic shift sequence
        split_linears(g, F, qsize, ctr, roots);
        if (field == WhichField::Fp) {
            std::vector<Fq> filtered;
            for (const Fq& root : roots)
                if (root.is_rational()) filtered.push_back(root);
            roots = std::move(filtered);
        }
    }
    return roots_with_multiplicity(coeffs, std::move(roots));
}

Fq taylor_coeff(const std::vector<Fq>& coeffs, const Fq& x, unsigned k) {
    // f(X) = sum_k c_k (X - x)^k by repeated synthetic division
    std::vector<Fq> f = coeffs;
    Fq zero{x.p, x.r, 0, 0};
    for (unsigned step = 0;; ++step) {
        if (f.empty()) return zero;
        std::vector<Fq> q(f.size() > 1 ? f.size() - 1 : 0, x);
        Fq rem = f.back();
        for (size_t i = f.size() - 1; i-- > 0;) {
            q[i] = rem;
            rem = f[i] + rem * x;
        }
        if (step == k) return rem;
        f = std::move(q);
    }
}

}  // namespace detail

std::vector<Fq> find_roots(const std::vector<Fq>& coeffs, WhichField field) {
    std::vector<Fq> f = coeffs;
    while (!f.empty() && f.back().is_zero()) f.pop_back();
    if (f.empty()) throw std::invalid_argument("find_roots: zero polynomial");
    if (f.size() == 1) return {};
    const Fq& c0 = f.front();
    uint64_t qsize = field == WhichField::Fp ? c0.p : static_cast<uint64_t>(c0.p) * c0.p;
    if (qsize <= (1u << 16)) return detail::find_roots_exhaustive(f, field);
    return detail::find_roots_cz(f, field);
}

}  // namespace neron
