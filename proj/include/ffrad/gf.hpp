#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace ffrad {

/// A field element: an integer in [0, q). For q = p^e with e >= 2 the
/// base-p digits are the polynomial coefficients, constant term first.
using Elem = std::uint32_t;

inline constexpr std::uint32_t kDefaultMaxFieldOrder = 64;
inline constexpr std::uint32_t kHardMaxFieldOrder = 256;

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// Arithmetic in GF(q). Immutable once built.
///
/// Prime fields use modular arithmetic. Extension fields are built over the
/// smallest monic irreducible polynomial of degree e (ordered by the integer
/// encoding of its lower coefficients) and multiply through discrete
/// log/antilog tables. Full q*q operation tables are cached for inner loops.
class Field {
public:
    /// Throws NotPrimePower, or Unsupported when q > max_q.
    static FieldPtr create(std::uint32_t q, std::uint32_t max_q = kDefaultMaxFieldOrder);

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t e() const noexcept { return e_; }
    std::uint32_t q() const noexcept { return q_; }

    /// Coefficients c_0..c_e of the modulus (c_e = 1). Empty when e = 1.
    const std::vector<Elem>& irreducible_poly() const noexcept { return poly_; }

    /// A generator of the multiplicative group.
    Elem generator() const noexcept { return generator_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return sub_[a * q_ + b]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    /// Throws DivisionByZero for 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
    Elem pow(Elem a, std::uint64_t exp) const noexcept;

    /// Discrete log to the base generator(); a must be nonzero.
    std::uint32_t log(Elem a) const noexcept { return log_[a]; }
    Elem antilog(std::uint32_t i) const noexcept { return antilog_[i % (q_ - 1)]; }

    /// Unchecked inverse for hot loops (a != 0).
    Elem inv_unchecked(Elem a) const noexcept { return inv_[a]; }

    bool operator==(const Field& other) const noexcept { return q_ == other.q_; }

private:
    Field() = default;

    void build_prime();
    void build_extension();
    void fill_tables_from_logs();

    std::uint32_t p_ = 0;
    std::uint32_t e_ = 0;
    std::uint32_t q_ = 0;
    Elem generator_ = 0;
    std::vector<Elem> poly_;
    std::vector<Elem> add_, sub_, mul_;
    std::vector<Elem> neg_, inv_;
    std::vector<std::uint32_t> log_;
    std::vector<Elem> antilog_;
};

/// Returns (p, e) with q = p^e, or throws NotPrimePower.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t q);

bool is_prime_power(std::uint32_t q);

/// True if the monic polynomial (coefficients c_0..c_deg, c_deg = 1) is
/// irreducible over GF(p). Exhaustive trial division by monic divisors.
bool is_irreducible(const std::vector<Elem>& poly, std::uint32_t p);

}  // namespace ffrad
