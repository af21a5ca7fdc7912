#include "expball/zfield.hpp"

#include "expball/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace expball::zfield {

namespace {

void check_axis(int i)
{
    if (i < 1 || i > 3)
        throw DomainError("axis index must be 1, 2 or 3");
}

} // namespace

Poly3 Poly3::constant(const mpq_class& c)
{
    Poly3 p;
    p.add_term({0, 0, 0}, c);
    return p;
}

Poly3 Poly3::var(int i)
{
    check_axis(i);
    Exponent e{0, 0, 0};
    e[static_cast<std::size_t>(i - 1)] = 1;
    return monomial(e, 1);
}

Poly3 Poly3::monomial(Exponent e, const mpq_class& c)
{
    Poly3 p;
    p.add_term(e, c);
    return p;
}

void Poly3::add_term(const Exponent& e, const mpq_class& c)
{
    if (c == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

int Poly3::degree() const noexcept
{
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, static_cast<int>(e[0] + e[1] + e[2]));
    return d;
}

Poly3& Poly3::operator+=(const Poly3& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, c);
    return *this;
}

Poly3& Poly3::operator-=(const Poly3& o)
{
    for (const auto& [e, c] : o.terms_)
        add_term(e, -c);
    return *this;
}

Poly3& Poly3::operator*=(const Poly3& o)
{
    Poly3 out;
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_)
            out.add_term({ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}, ca * cb);
    *this = std::move(out);
    return *this;
}

Poly3& Poly3::operator*=(const mpq_class& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_)
        v *= c;
    return *this;
}

Poly3 Poly3::operator-() const
{
    Poly3 out = *this;
    for (auto& [e, v] : out.terms_)
        v = -v;
    return out;
}

Poly3 Poly3::derivative(int i) const
{
    check_axis(i);
    const auto k = static_cast<std::size_t>(i - 1);
    Poly3 out;
    for (const auto& [e, c] : terms_) {
        if (e[k] == 0)
            continue;
        Exponent d = e;
        d[k] -= 1;
        out.add_term(d, c * e[k]);
    }
    return out;
}

Poly3 Poly3::times_x(int i) const
{
    check_axis(i);
    const auto k = static_cast<std::size_t>(i - 1);
    Poly3 out;
    for (const auto& [e, c] : terms_) {
        Exponent d = e;
        d[k] += 1;
        out.terms_.emplace(d, c);
    }
    return out;
}

double Poly3::evaluate(const std::array<double, 3>& x) const
{
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = c.get_d();
        for (std::size_t k = 0; k < 3; ++k)
            for (unsigned n = 0; n < e[k]; ++n)
                m *= x[k];
        sum += m;
    }
    return sum;
}

std::string Poly3::str() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << "(" << c.get_str() << ")";
        for (std::size_t k = 0; k < 3; ++k)
            if (e[k] > 0)
                os << "*x" << (k + 1) << (e[k] > 1 ? "^" + std::to_string(e[k]) : "");
    }
    return os.str();
}

Poly3 r_squared()
{
    return Poly3::monomial({2, 0, 0}, 1) + Poly3::monomial({0, 2, 0}, 1) + Poly3::monomial({0, 0, 2}, 1);
}

Poly3 euler_op(const Poly3& f)
{
    return f.derivative(1).times_x(1) + f.derivative(2).times_x(2) + f.derivative(3).times_x(3);
}

Poly3 laplacian(const Poly3& f)
{
    return f.derivative(1).derivative(1) + f.derivative(2).derivative(2) + f.derivative(3).derivative(3);
}

Poly3 apply_Z(int i, const Poly3& f)
{
    check_axis(i);
    // Z_i = x_a d_b - x_b d_a with (a, b) = (1, 2), (2, 3), (3, 1)
    const int a = i;
    const int b = i % 3 + 1;
    return f.derivative(b).times_x(a) - f.derivative(a).times_x(b);
}

Poly3 commutator(int i, int j, const Poly3& f)
{
    return apply_Z(i, apply_Z(j, f)) - apply_Z(j, apply_Z(i, f));
}

Poly3 commutator_check(int i, int j, const Poly3& f)
{
    check_axis(i);
    check_axis(j);
    if (j != i % 3 + 1)
        throw DomainError("commutator_check expects a cyclic pair (1,2), (2,3) or (3,1)");
    const int k = j % 3 + 1;
    return commutator(i, j, f) + apply_Z(k, f);
}

Poly3 radial_identity_check(const Poly3& f, const Poly3& g)
{
    Poly3 grad;
    for (int i = 1; i <= 3; ++i)
        grad += f.derivative(i) * g.derivative(i);
    Poly3 res = r_squared() * grad - euler_op(f) * euler_op(g);
    for (int i = 1; i <= 3; ++i)
        res -= apply_Z(i, f) * apply_Z(i, g);
    return res;
}

Poly3 laplacian_decomposition_check(const Poly3& f)
{
    const Poly3 s = euler_op(f);
    Poly3 res = r_squared() * laplacian(f) - euler_op(s) - s;
    for (int i = 1; i <= 3; ++i)
        res -= apply_Z(i, apply_Z(i, f));
    return res;
}

std::array<Poly3, 3> cartesian_recovery_check(const Poly3& f)
{
    const Poly3 r2 = r_squared();
    const Poly3 s = euler_op(f);
    const Poly3 z1 = apply_Z(1, f), z2 = apply_Z(2, f), z3 = apply_Z(3, f);
    return {
        r2 * f.derivative(1) - s.times_x(1) + z1.times_x(2) - z3.times_x(3),
        r2 * f.derivative(2) - s.times_x(2) + z2.times_x(3) - z1.times_x(1),
        r2 * f.derivative(3) - s.times_x(3) + z3.times_x(1) - z2.times_x(2),
    };
}

std::array<Poly3, 3> laplacian_commutes_with_Z(const Poly3& f)
{
    std::array<Poly3, 3> out;
    const Poly3 lap = laplacian(f);
    for (int i = 1; i <= 3; ++i)
        out[static_cast<std::size_t>(i - 1)] = apply_Z(i, lap) - laplacian(apply_Z(i, f));
    return out;
}

std::array<Poly3, 6> radial_commutation_check(const Poly3& f)
{
    std::array<Poly3, 6> out;
    const Poly3 s = euler_op(f);
    for (int i = 1; i <= 3; ++i) {
        const auto k = static_cast<std::size_t>(i - 1);
        out[k] = apply_Z(i, s) - euler_op(apply_Z(i, f));
        out[k + 3] = apply_Z(i, r_squared());
    }
    return out;
}

double zbound_sample_check(const Poly3& f, const std::vector<std::array<double, 3>>& points)
{
    std::array<Poly3, 3> z{apply_Z(1, f), apply_Z(2, f), apply_Z(3, f)};
    std::array<Poly3, 3> d{f.derivative(1), f.derivative(2), f.derivative(3)};
    double worst = 0.0;
    for (const auto& x : points) {
        const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        double g2 = 0.0;
        for (const auto& di : d) {
            const double v = di.evaluate(x);
            g2 += v * v;
        }
        const double denom = r * std::sqrt(g2);
        for (const auto& zi : z) {
            const double num = std::abs(zi.evaluate(x));
            if (num == 0.0)
                continue;
            worst = std::max(worst, denom > 0.0 ? num / denom : INFINITY);
        }
    }
    return worst;
}

Poly3 random_poly(std::mt19937_64& rng, int max_degree, int n_terms)
{
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 9);
    Poly3 p;
    for (int k = 0; k < n_terms; ++k) {
        const int d = deg(rng);
        std::uniform_int_distribution<int> split(0, d);
        const int a = split(rng);
        std::uniform_int_distribution<int> split2(0, d - a);
        const int b = split2(rng);
        int n = 0;
        while (n == 0)
            n = num(rng);
        mpq_class c(n, den(rng));
        c.canonicalize();
        p += Poly3::monomial({static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(d - a - b)}, c);
    }
    return p;
}

SuiteReport verify_identities(std::uint64_t seed, int count)
{
    if (count < 1)
        throw DomainError("identity suite needs count >= 1");
    std::mt19937_64 rng(seed);
    SuiteReport rep;

    auto note = [&](const std::string& name, const Poly3& residual, const Poly3& input) {
        ++rep.checks;
        if (!residual.is_zero() && rep.pass) {
            rep.pass = false;
            rep.first_failure = name + " fails for f = " + input.str();
        }
    };

    std::size_t family_start = 0;
    auto close_family = [&](const std::string& name) {
        std::ostringstream os;
        os << name << ": " << (rep.checks - family_start) << " exact checks"
           << (rep.pass ? ", all residuals zero" : ", FAILED");
        rep.lines.push_back(os.str());
        family_start = rep.checks;
    };

    std::vector<Poly3> inputs;
    for (int k = 0; k < count; ++k)
        inputs.push_back(random_poly(rng, 6, 8));

    for (const auto& f : inputs) {
        note("[Z1,Z2] = -Z3", commutator_check(1, 2, f), f);
        note("[Z2,Z3] = -Z1", commutator_check(2, 3, f), f);
        note("[Z3,Z1] = -Z2", commutator_check(3, 1, f), f);
    }
    close_family("commutators");

    for (const auto& f : inputs) {
        for (const auto& res : radial_commutation_check(f))
            note("[Z_i, S1] = 0 and Z_i r = 0", res, f);
        for (const auto& res : laplacian_commutes_with_Z(f))
            note("[Z_i, Lap] = 0", res, f);
    }
    close_family("radial and Laplacian commutation");

    for (int k = 0; k < count; ++k) {
        const Poly3 f = random_poly(rng, 5, 6);
        const Poly3 g = random_poly(rng, 5, 6);
        note("r^2 grad f.grad g = S1 f S1 g + sum Z_i f Z_i g", radial_identity_check(f, g), f);
    }
    close_family("gradient splitting");

    for (const auto& f : inputs)
        note("r^2 Lap = S1^2 + S1 + sum Z_i^2", laplacian_decomposition_check(f), f);
    close_family("Laplacian decomposition");

    for (const auto& f : inputs)
        for (const auto& res : cartesian_recovery_check(f))
            note("Cartesian derivative recovery", res, f);
    close_family("Cartesian recovery");

    // pointwise |Z f| <= r |grad f|
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<std::array<double, 3>> pts;
    while (pts.size() < 1000) {
        std::array<double, 3> x{coord(rng), coord(rng), coord(rng)};
        if (x[0] * x[0] + x[1] * x[1] + x[2] * x[2] > 1e-6)
            pts.push_back(x);
    }
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        // the 1000 points are dealt out round-robin over the inputs
        std::vector<std::array<double, 3>> sub;
        for (std::size_t m = k; m < pts.size(); m += inputs.size())
            sub.push_back(pts[m]);
        if (sub.empty())
            continue;
        const double ratio = zbound_sample_check(inputs[k], sub);
        rep.max_ratio = std::max(rep.max_ratio, ratio);
        ++rep.checks;
        if (ratio > 1.0 + 1e-12 && rep.pass) {
            rep.pass = false;
            rep.first_failure = "|Z f| <= r |grad f| fails for f = " + inputs[k].str();
        }
    }
    {
        std::ostringstream os;
        os.precision(17);
        os << "rotation bound: max |Z_i f| / (r |grad f|) = " << rep.max_ratio
           << (rep.max_ratio <= 1.0 + 1e-12 ? " (<= 1)" : " (> 1, FAILED)");
        rep.lines.push_back(os.str());
    }
    return rep;
}

} // namespace expball::zfield
