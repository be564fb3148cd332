#include "ffrad/gf.hpp"

#include "ffrad/errors.hpp"

#include <string>

namespace ffrad {

namespace {

using Poly = std::vector<Elem>;

void trim(Poly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

/// Remainder of a modulo a monic divisor d over GF(p).
Poly poly_mod(Poly a, const Poly& d, std::uint32_t p)
{
    trim(a);
    const std::size_t dd = d.size() - 1;
    while (a.size() > dd) {
        const Elem lead = a.back();
        const std::size_t shift = a.size() - 1 - dd;
        for (std::size_t i = 0; i <= dd; ++i)
            a[shift + i] = (a[shift + i] + p - (lead * d[i]) % p) % p;
        trim(a);
    }
    return a;
}

Poly decode(Elem x, std::uint32_t p, std::uint32_t e)
{
    Poly out(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        out[i] = x % p;
        x /= p;
    }
    return out;
}

Elem encode(const Poly& a, std::uint32_t p)
{
    Elem x = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        x = x * p + a[i];
    return x;
}

Elem poly_mul_mod(Elem a, Elem b, const Poly& modulus, std::uint32_t p, std::uint32_t e)
{
    Poly x = decode(a, p, e), y = decode(b, p, e);
    Poly prod(2 * e, 0);
    for (std::uint32_t i = 0; i < e; ++i)
        for (std::uint32_t j = 0; j < e; ++j)
            prod[i + j] = (prod[i + j] + x[i] * y[j]) % p;
    return encode(poly_mod(prod, modulus, p), p);
}

}  // namespace

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t q)
{
    if (q < 2)
        throw NotPrimePower(std::to_string(q) + " is not a prime power");
    std::uint32_t p = 0;
    for (std::uint32_t d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0)
        return {q, 1};
    std::uint32_t e = 0, rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1)
        throw NotPrimePower(std::to_string(q) + " has at least two distinct prime factors");
    return {p, e};
}

bool is_prime_power(std::uint32_t q)
{
    try {
        prime_power_decompose(q);
        return true;
    } catch (const NotPrimePower&) {
        return false;
    }
}

bool is_irreducible(const std::vector<Elem>& poly, std::uint32_t p)
{
    const std::size_t deg = poly.size() - 1;
    if (deg == 0)
        return false;
    for (std::size_t d = 1; d <= deg / 2; ++d) {
        // All monic polynomials of degree d: lower coefficients range over p^d values.
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i)
            count *= p;
        for (std::uint64_t lower = 0; lower < count; ++lower) {
            Poly divisor = decode(static_cast<Elem>(lower), p, static_cast<std::uint32_t>(d));
            divisor.push_back(1);
            if (poly_mod(poly, divisor, p).empty())
                return false;
        }
    }
    return true;
}

FieldPtr Field::create(std::uint32_t q, std::uint32_t max_q)
{
    auto [p, e] = prime_power_decompose(q);
    if (max_q > kHardMaxFieldOrder)
        max_q = kHardMaxFieldOrder;
    if (q > max_q)
        throw Unsupported("field order " + std::to_string(q) + " exceeds the maximum " + std::to_string(max_q));
    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->e_ = e;
    f->q_ = q;
    if (e == 1)
        f->build_prime();
    else
        f->build_extension();
    return f;
}

void Field::build_prime()
{
    const std::uint32_t q = q_;
    add_.resize(q * q);
    sub_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (Elem a = 0; a < q; ++a) {
        neg_[a] = (q - a) % q;
        for (Elem b = 0; b < q; ++b) {
            add_[a * q + b] = (a + b) % q;
            sub_[a * q + b] = (a + q - b) % q;
            mul_[a * q + b] = (a * b) % q;
        }
    }
    for (Elem a = 1; a < q; ++a)
        for (Elem b = 1; b < q; ++b)
            if (mul_[a * q + b] == 1) {
                inv_[a] = b;
                break;
            }
    // Smallest primitive root.
    for (Elem g = 1; g < q; ++g) {
        Elem x = 1;
        std::uint32_t order = 0;
        do {
            x = mul_[x * q + g];
            ++order;
        } while (x != 1);
        if (order == q - 1) {
            generator_ = g;
            break;
        }
    }
    log_.assign(q, 0);
    antilog_.resize(q - 1);
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
        antilog_[i] = x;
        log_[x] = i;
        x = mul_[x * q + generator_];
    }
}

void Field::build_extension()
{
    const std::uint32_t q = q_, p = p_, e = e_;
    std::uint32_t lower_count = q;  // p^e choices for c_0..c_{e-1}
    for (Elem lower = 0; lower < lower_count; ++lower) {
        Poly cand = decode(lower, p, e);
        cand.push_back(1);
        if (cand[0] != 0 && is_irreducible(cand, p)) {
            poly_ = std::move(cand);
            break;
        }
    }

    for (Elem g = 2; g < q; ++g) {
        Elem x = 1;
        std::uint32_t order = 0;
        do {
            x = poly_mul_mod(x, g, poly_, p, e);
            ++order;
        } while (x != 1 && order < q);
        if (x == 1 && order == q - 1) {
            generator_ = g;
            break;
        }
    }
    log_.assign(q, 0);
    antilog_.resize(q - 1);
    Elem x = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
        antilog_[i] = x;
        log_[x] = i;
        x = poly_mul_mod(x, generator_, poly_, p, e);
    }
    fill_tables_from_logs();
}

void Field::fill_tables_from_logs()
{
    const std::uint32_t q = q_, p = p_, e = e_;
    add_.resize(q * q);
    sub_.resize(q * q);
    mul_.resize(q * q);
    neg_.resize(q);
    inv_.assign(q, 0);
    for (Elem a = 0; a < q; ++a) {
        Poly pa = decode(a, p, e);
        Poly na(e);
        for (std::uint32_t i = 0; i < e; ++i)
            na[i] = (p - pa[i]) % p;
        neg_[a] = encode(na, p);
        for (Elem b = 0; b < q; ++b) {
            Poly pb = decode(b, p, e), s(e), d(e);
            for (std::uint32_t i = 0; i < e; ++i) {
                s[i] = (pa[i] + pb[i]) % p;
                d[i] = (pa[i] + p - pb[i]) % p;
            }
            add_[a * q + b] = encode(s, p);
            sub_[a * q + b] = encode(d, p);
            mul_[a * q + b] = (a == 0 || b == 0) ? 0 : antilog_[(log_[a] + log_[b]) % (q - 1)];
        }
        if (a != 0)
            inv_[a] = antilog_[(q - 1 - log_[a]) % (q - 1)];
    }
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
    return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t exp) const noexcept
{
    Elem result = 1;
    Elem base = a;
    while (exp) {
        if (exp & 1)
            result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

}  // namespace ffrad
