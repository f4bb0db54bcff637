#include "neron/ssgraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace neron {

namespace {

// short Weierstrass coefficients of a curve with the given j-invariant
std::pair<Fq, Fq> curve_for_j(const Fq& j) {
    PrimeField F(j.p);
    Fq j1728 = F.elem(1728);
    if (j.is_zero()) return {F.zero(), F.one()};
    if (j == j1728) return {F.one(), F.zero()};
    Fq d = j1728 - j;
    Fq a = F.elem(3) * j * d;
    Fq b = F.elem(2) * j * d * d;
    return {a, b};
}

int thickness_for_j(const Fq& j, uint32_t p) {
    PrimeField F(p);
    if (j.is_zero() && p % 3 == 2) return 3;
    if (j == F.elem(1728) && p % 4 == 3) return 2;
    return 1;
}

}  // namespace

bool SupersingularLocus::contains(const Fq& j) const {
    for (const SupersingularPoint& pt : points)
        if (pt.j == j) return true;
    return false;
}

const SupersingularPoint& SupersingularLocus::at(const Fq& j) const {
    for (const SupersingularPoint& pt : points)
        if (pt.j == j) return pt;
    throw std::out_of_range("SupersingularLocus: " + j.str() + " is not supersingular");
}

HasseTester::HasseTester(const PrimeField& F) : F_(F) {
    uint32_t p = F.p();
    fact_.resize(p);
    inv_fact_.resize(p);
    fact_[0] = 1;
    for (uint32_t i = 1; i < p; ++i)
        fact_[i] = static_cast<uint32_t>(static_cast<uint64_t>(fact_[i - 1]) * i % p);
    // inverse factorials via Fermat on the top one
    Fq top = F.elem(fact_[p - 1]).pow(-1);
    inv_fact_[p - 1] = top.a;
    for (uint32_t i = p - 1; i > 0; --i)
        inv_fact_[i - 1] = static_cast<uint32_t>(static_cast<uint64_t>(inv_fact_[i]) * i % p);
}

bool HasseTester::is_supersingular(const Fq& j) const {
    // supersingular iff the coefficient of x^(p-1) in (x^3+ax+b)^((p-1)/2)
    // vanishes; expand by the multinomial theorem
    uint32_t p = F_.p();
    auto [a, b] = curve_for_j(j);
    long long m = (p - 1) / 2;
    long long lo = (m + 1) / 2, hi = (2 * m) / 3;
    Fq acc = F_.zero();
    auto mult_coeff = [&](long long i, long long jj, long long k) -> uint32_t {
        uint64_t c = fact_[m];
        c = c * inv_fact_[i] % p;
        c = c * inv_fact_[jj] % p;
        c = c * inv_fact_[k] % p;
        return static_cast<uint32_t>(c);
    };
    if (a.is_zero() && b.is_zero()) throw std::logic_error("singular curve");
    if (a.is_zero()) {
        // only the term with 2m = 3i survives
        if ((2 * m) % 3 != 0) return true;
        long long i = 2 * m / 3;
        Fq term = F_.elem(mult_coeff(i, 0, 2 * i - m)) * b.pow(2 * i - m);
        return term.is_zero();
    }
    if (b.is_zero()) {
        if (m % 2 != 0) return true;
        long long i = m / 2;
        Fq term = F_.elem(mult_coeff(i, 2 * m - 3 * i, 0)) * a.pow(2 * m - 3 * i);
        return term.is_zero();
    }
    Fq pa = a.pow(2 * m - 3 * lo);  // a^(j'), j' = 2m - 3i steps by -3
    Fq pb = b.pow(2 * lo - m);      // b^(k), k = 2i - m steps by +2
    Fq a3inv = a.pow(-3);
    Fq b2 = b * b;
    for (long long i = lo; i <= hi; ++i) {
        acc = acc + F_.elem(mult_coeff(i, 2 * m - 3 * i, 2 * i - m)) * pa * pb;
        pa = pa * a3inv;
        pb = pb * b2;
    }
    return acc.is_zero();
}

std::vector<bool> fp2_square_table(const PrimeField& F) {
    uint64_t q = static_cast<uint64_t>(F.p()) * F.p();
    std::vector<bool> table(q, false);
    for (uint64_t i = 0; i < q; ++i) {
        Fq z = F.from_index(i);
        if (z.is_zero()) continue;
        table[(z * z).norm_index()] = true;
    }
    return table;
}

bool is_supersingular_oracle(const Fq& j, const std::vector<bool>& squares) {
    PrimeField F(j.p);
    uint64_t q = static_cast<uint64_t>(j.p) * j.p;
    auto [a, b] = curve_for_j(j);
    uint64_t count = 1;  // point at infinity
    for (uint64_t i = 0; i < q; ++i) {
        Fq x = F.from_index(i);
        Fq f = (x * x + a) * x + b;
        if (f.is_zero()) count += 1;
        else if (squares[f.norm_index()]) count += 2;
    }
    return count % j.p == 1;
}

bool is_supersingular_oracle(const Fq& j) {
    PrimeField F(j.p);
    return is_supersingular_oracle(j, fp2_square_table(F));
}

bool is_supersingular_oracle_fp(const PrimeField& F, uint32_t j_residue) {
    uint32_t p = F.p();
    auto [a, b] = curve_for_j(F.elem(j_residue));
    std::vector<bool> sq(p, false);
    for (uint32_t z = 1; z < p; ++z) sq[static_cast<uint64_t>(z) * z % p] = true;
    uint64_t count = 1;
    for (uint32_t xi = 0; xi < p; ++xi) {
        Fq x = F.elem(xi);
        Fq f = (x * x + a) * x + b;
        if (f.is_zero()) count += 1;
        else if (sq[f.a]) count += 2;
    }
    // p >= 5: |trace| <= 2 sqrt(p) < p, so trace = 0 iff count = p + 1
    return count == static_cast<uint64_t>(p) + 1;
}

SupersingularLocus supersingular_j_invariants(uint64_t p) {
    if (!is_prime_u64(p) || p < 5)
        throw std::invalid_argument("supersingular_j_invariants: need a prime p >= 5");
    PrimeField F(p);
    HasseTester hasse(F);

    std::vector<Fq> rational;
    for (uint32_t r = 0; r < p; ++r) {
        Fq j = F.elem(r);
        if (hasse.is_supersingular(j)) rational.push_back(j);
    }

    // expected number of points from the mass formula
    long long s3 = p % 3 == 2 ? 1 : 0;
    long long s2 = p % 4 == 3 ? 1 : 0;
    long long expected = (static_cast<long long>(p) - 1 - 4 * s3 - 6 * s2) / 12 + s3 + s2;

    std::set<Fq> all(rational.begin(), rational.end());
    if (static_cast<long long>(all.size()) < expected) {
        // close under the degree-2 correspondence to pick up conjugate pairs
        std::vector<Fq> queue(rational.begin(), rational.end());
        Fq c16 = F.elem(16), c4096 = F.elem(4096);
        while (!queue.empty()) {
            Fq j = queue.back();
            queue.pop_back();
            // roots u of (T+16)^3 - jT; neighbor j' = (v+16)^3/v, v = 2^12/u
            std::vector<Fq> coeffs = {c16 * c16 * c16, c16 * c16 * F.elem(3) - j,
                                      c16 * F.elem(3), F.one()};
            for (const Fq& u : find_roots(coeffs, WhichField::Fp2)) {
                Fq v = c4096 / u;
                Fq w = v + c16;
                Fq jt = w * w * w / v;
                if (all.insert(jt).second) queue.push_back(jt);
            }
        }
    }
    if (static_cast<long long>(all.size()) != expected)
        throw std::runtime_error("supersingular enumeration did not match the mass count");

    SupersingularLocus locus{static_cast<uint32_t>(p), F, {}};
    // rational points first, ascending residue
    for (const Fq& j : all)
        if (j.is_rational()) locus.points.push_back({j, thickness_for_j(j, locus.p), true});
    std::sort(locus.points.begin(), locus.points.end(),
              [](const SupersingularPoint& x, const SupersingularPoint& y) { return x.j.a < y.j.a; });
    // conjugate pairs ordered by (a, min(b, p-b)); representative first
    std::vector<Fq> irr;
    for (const Fq& j : all)
        if (!j.is_rational()) irr.push_back(j);
    std::sort(irr.begin(), irr.end(), [&](const Fq& x, const Fq& y) {
        uint32_t bx = std::min(x.b, x.p - x.b), by = std::min(y.b, y.p - y.b);
        if (x.a != y.a) return x.a < y.a;
        if (bx != by) return bx < by;
        return x.b < y.b;
    });
    for (const Fq& j : irr) locus.points.push_back({j, thickness_for_j(j, locus.p), false});

    // Frobenius closure sanity
    for (const SupersingularPoint& pt : locus.points)
        if (!all.count(pt.j.frobenius()))
            throw std::runtime_error("supersingular locus is not Frobenius-closed");
    return locus;
}

Rat64 mass_check(const SupersingularLocus& locus) {
    long long num = 0, den = 1;
    for (const SupersingularPoint& pt : locus.points) {
        // num/den += 1/e
        num = num * pt.e + den;
        den *= pt.e;
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    return {num, den};
}

}  // namespace neron
