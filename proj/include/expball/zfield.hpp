#pragma once

// Exact polynomial calculus for the rotation fields
//   Z1 = x1 d2 - x2 d1,  Z2 = x2 d3 - x3 d2,  Z3 = x3 d1 - x1 d3
// and the radial/angular decompositions built from them. Identities involving
// 1/r or 1/r^2 are checked after multiplying through by r^2, so every check
// reduces to structural equality of polynomials with rational coefficients.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace expball::zfield {

class Poly3
{
public:
    using Exponent = std::array<unsigned, 3>;
    using Terms = std::map<Exponent, mpq_class>;

    Poly3() = default;

    static Poly3 constant(const mpq_class& c);
    /// x1, x2 or x3 for i = 1, 2, 3.
    static Poly3 var(int i);
    static Poly3 monomial(Exponent e, const mpq_class& c);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    int degree() const noexcept;

    Poly3& operator+=(const Poly3& o);
    Poly3& operator-=(const Poly3& o);
    Poly3& operator*=(const Poly3& o);
    Poly3& operator*=(const mpq_class& c);

    friend Poly3 operator+(Poly3 a, const Poly3& b) { return a += b; }
    friend Poly3 operator-(Poly3 a, const Poly3& b) { return a -= b; }
    friend Poly3 operator*(Poly3 a, const Poly3& b) { return a *= b; }
    friend Poly3 operator*(Poly3 a, const mpq_class& c) { return a *= c; }
    Poly3 operator-() const;

    friend bool operator==(const Poly3& a, const Poly3& b) { return a.terms_ == b.terms_; }

    /// d/dx_i, i = 1, 2, 3.
    Poly3 derivative(int i) const;
    /// x_i * f.
    Poly3 times_x(int i) const;

    double evaluate(const std::array<double, 3>& x) const;
    std::string str() const;

private:
    void add_term(const Exponent& e, const mpq_class& c);

    Terms terms_;
};

/// x1^2 + x2^2 + x3^2
Poly3 r_squared();
/// Euler operator S1 = sum x_i d_i (r d/dr).
Poly3 euler_op(const Poly3& f);
Poly3 laplacian(const Poly3& f);
Poly3 apply_Z(int i, const Poly3& f);

/// Z_i Z_j f - Z_j Z_i f.
Poly3 commutator(int i, int j, const Poly3& f);

/// [Z_i, Z_j] f + Z_k f for (i, j, k) a cyclic permutation of (1, 2, 3); identically zero.
Poly3 commutator_check(int i, int j, const Poly3& f);

/// r^2 grad f . grad g - (S1 f)(S1 g) - sum_i Z_i f Z_i g.
Poly3 radial_identity_check(const Poly3& f, const Poly3& g);

/// r^2 Lap f - S1^2 f - S1 f - sum_i Z_i^2 f.
Poly3 laplacian_decomposition_check(const Poly3& f);

/// Per axis a: r^2 d_a f - x_a S1 f + (x_b Z_p f - x_c Z_q f), the r^2-cleared
/// recovery of Cartesian derivatives from S1 and the rotation fields:
///   r^2 d1 = x1 S1 - x2 Z1 + x3 Z3,  r^2 d2 = x2 S1 - x3 Z2 + x1 Z1,  r^2 d3 = x3 S1 - x1 Z3 + x2 Z2.
std::array<Poly3, 3> cartesian_recovery_check(const Poly3& f);

/// Z_i Lap f - Lap Z_i f for i = 1, 2, 3.
std::array<Poly3, 3> laplacian_commutes_with_Z(const Poly3& f);

/// Z_i S1 f - S1 Z_i f for i = 1, 2, 3 (Z_i commutes with d/dr), then Z_i r^2 for i = 1, 2, 3.
std::array<Poly3, 6> radial_commutation_check(const Poly3& f);

/// max over points and i of |Z_i f| / (r |grad f|), with 0/0 counted as 0.
double zbound_sample_check(const Poly3& f, const std::vector<std::array<double, 3>>& points);

/// Random polynomial with `n_terms` monomials of total degree <= max_degree and
/// small nonzero rational coefficients.
Poly3 random_poly(std::mt19937_64& rng, int max_degree, int n_terms);

struct SuiteReport
{
    bool pass = true;
    std::size_t checks = 0;
    double max_ratio = 0.0;
    std::string first_failure; ///< identity name and offending polynomial
    std::vector<std::string> lines;
};

/// Every identity family on `count` random inputs (degree <= 6, degree <= 5 for the
/// bilinear identity) plus the bound check at 1000 sampled points shared across the inputs.
SuiteReport verify_identities(std::uint64_t seed, int count);

} // namespace expball::zfield
