#pragma once

#include "../numfield/element.hpp"

#include <boost/multiprecision/mpfr.hpp>

namespace polya {

using Real100 = boost::multiprecision::mpfr_float_100;
using Real500 = boost::multiprecision::mpfr_float_500;
using Real2000 = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<2000>>;

/// The working precision cannot resolve a conjugate of an element.
class precision_error : public verification_error {
public:
    using verification_error::verification_error;
};

/// Runs f(Real{}) at increasing precision until it stops raising precision_error.
template <class Fn>
auto with_precision(Fn&& f)
{
    try {
        return f(Real100{});
    } catch (const precision_error&) {
    }
    try {
        return f(Real500{});
    } catch (const precision_error&) {
    }
    return f(Real2000{});
}

/// An archimedean place, represented by the automorphism k composed with the
/// fixed complex embedding sqrt(m) -> i sqrt|m|.
struct Place {
    int aut = 0;
    bool complex = false;
};

/// Archimedean places of K; each complex pair is listed once.
inline std::vector<Place> infinite_places(const Field& K)
{
    std::vector<Place> out;
    const int c = K->conjugation();
    for (int k = 0; k < static_cast<int>(K->num_automorphisms()); ++k) {
        if (c == 0)
            out.push_back({k, false});
        else if (k < (k ^ c))
            out.push_back({k, true});
    }
    return out;
}

/// Weighted logarithmic embedding (log|x|_v for real v, 2 log|x|_v for complex v).
template <class Real>
std::vector<Real> log_embedding(const Element& x)
{
    const Field& K = x.field();
    RatVec p = x.power_coords();
    const std::size_t n = p.size();
    // Value of e_a at the base embedding: magnitude and a power of i.
    std::vector<Real> mag(n);
    std::vector<int> ipow(n);
    for (std::size_t a = 0; a < n; ++a) {
        Real m = 1;
        int k = 0;
        for (std::size_t i = 0; i < 2; ++i)
            if (a & (1u << i)) {
                const Int& r = i == 0 ? K->m1() : K->m2();
                m *= sqrt(Real(abs(r).get_str()));
                if (r < 0)
                    ++k;
            }
        mag[a] = m;
        ipow[a] = k;
    }
    std::vector<Real> out;
    for (const auto& pl : infinite_places(K)) {
        Real re = 0, im = 0, biggest = 0;
        for (std::size_t a = 0; a < n; ++a) {
            if (p[a] == 0)
                continue;
            Real t = Real(p[a].get_num().get_str()) / Real(p[a].get_den().get_str()) * mag[a] *
                     K->power_sign(pl.aut, a);
            if (abs(t) > biggest)
                biggest = abs(t);
            switch (ipow[a] % 4) {
            case 0: re += t; break;
            case 1: im += t; break;
            case 2: re -= t; break;
            default: im -= t; break;
            }
        }
        Real abs2 = re * re + im * im;
        if (biggest == 0)
            throw domain_error("log embedding of zero");
        // Cancellation has eaten all but a few guard digits.
        Real floor_ = biggest * pow(Real(10), -(std::numeric_limits<Real>::digits10 - 20));
        if (abs2 <= floor_ * floor_)
            throw precision_error("conjugate not resolved at " + std::to_string(std::numeric_limits<Real>::digits10) +
                                  " digits");
        // 2 log|x| for complex places, log|x| for real ones.
        out.push_back(pl.complex ? Real(log(abs2)) : Real(log(abs2) / 2));
    }
    return out;
}

/// Solves x * a = b for square a by Gaussian elimination with partial pivoting.
template <class Real>
std::optional<std::vector<Real>> real_solve_left(std::vector<std::vector<Real>> a, std::vector<Real> b)
{
    const std::size_t n = a.size();
    // Transpose so that we solve a^T x = b.
    std::vector<std::vector<Real>> m(n, std::vector<Real>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a[j][i];
        m[i][n] = b[i];
    }
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (abs(m[r][c]) > abs(m[piv][c]))
                piv = r;
        if (m[piv][c] == 0)
            return std::nullopt;
        std::swap(m[piv], m[c]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || m[r][c] == 0)
                continue;
            Real f = m[r][c] / m[c][c];
            for (std::size_t k = c; k <= n; ++k)
                m[r][k] -= f * m[c][k];
        }
    }
    std::vector<Real> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = m[i][n] / m[i][i];
    return x;
}

template <class Real>
Int round_to_int(const Real& x)
{
    Real r = floor(x + Real(0.5));
    Int z;
    mpfr_get_z(z.get_mpz_t(), r.backend().data(), MPFR_RNDN);
    return z;
}

} // namespace polya
