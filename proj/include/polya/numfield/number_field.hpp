#pragma once

#include "../abelian/normal_form.hpp"
#include "rat_linalg.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <regex>
#include <sstream>
#include <string>

namespace polya {

class NumberField;
using Field = std::shared_ptr<const NumberField>;

enum class FieldKind { rational, quadratic, biquadratic };

/// A subfield F of K: F's own field object, the embedding of F's integral
/// basis into K's integral basis, and the automorphisms of K fixing F.
struct Subfield {
    Field field;
    IntMatrix embedding;
    std::vector<int> galois;
    int index = 0;

    std::size_t relative_degree() const { return galois.size(); }
};

/// Q, Q(sqrt d) or Q(sqrt m1, sqrt m2).
///
/// Internally every element also has power coordinates over the basis
/// e_a = prod_{i in a} sqrt(m_i), indexed by bitmask a (bit 0 = m1, bit 1 = m2).
/// Then e_a * e_b = (prod_{i in a & b} m_i) e_{a ^ b}, and the automorphism
/// with index k sends e_a to (-1)^{popcount(a & k)} e_a.
class NumberField : public std::enable_shared_from_this<NumberField> {
public:
    FieldKind kind() const { return kind_; }
    std::size_t degree() const { return n_; }
    const Int& m1() const { return m_[0]; }
    const Int& m2() const { return m_[1]; }
    const Int& m3() const { return m3_; }
    /// Radicand of a quadratic field.
    const Int& d() const { return m_[0]; }
    const Int& discriminant() const { return disc_; }
    int r1() const { return r1_; }
    int r2() const { return r2_; }
    bool is_totally_real() const { return r2_ == 0; }
    const std::string& name() const { return name_; }

    /// Rows are the integral basis in power coordinates.
    const RatMatrix& basis_in_power() const { return basis_; }
    const RatMatrix& power_to_basis() const { return basis_inv_; }

    /// Integral-basis coordinates of b_i * b_j.
    const IntVec& structure(std::size_t i, std::size_t j) const { return mult_[i * n_ + j]; }

    std::size_t num_automorphisms() const { return n_; }
    /// Action on integral-basis coordinates (row vector convention).
    const IntMatrix& automorphism(int k) const { return auts_.at(static_cast<std::size_t>(k)); }
    int compose(int a, int b) const { return a ^ b; }
    int conjugation() const { return conj_; }
    int power_sign(int aut, std::size_t a) const { return std::popcount(static_cast<unsigned>(aut) & a) % 2 ? -1 : 1; }

    /// Value of e_a^2.
    const Int& power_square(std::size_t a) const { return power_sq_[a]; }

    /// Gram matrix of Tr(x * conj(x)) on the integral basis; positive definite.
    const IntMatrix& t2_gram() const { return t2_; }

    /// Subfields: 0 = Q; for quadratic K 1 = K; for biquadratic K 1..3 are
    /// Q(sqrt m1), Q(sqrt m2), Q(sqrt m3) and 4 = K.
    std::size_t num_subfields() const { return proper_.size() + 1; }

    Subfield subfield(std::size_t i) const
    {
        if (i < proper_.size())
            return proper_[i];
        if (i == proper_.size()) {
            Subfield s{shared_from_this(), IntMatrix::identity(n_), {0}, static_cast<int>(i)};
            return s;
        }
        throw domain_error("no subfield with index " + std::to_string(i) + " in " + name_);
    }

    Subfield self() const { return subfield(proper_.size()); }

    /// The subfield with the given radicand (1 for Q, a product over the whole field for K).
    std::optional<std::size_t> subfield_by_radicand(const Int& r) const
    {
        if (r == 1)
            return 0;
        for (std::size_t i = 1; i < proper_.size(); ++i)
            if (proper_[i].field->d() == r)
                return i;
        if (kind_ == FieldKind::quadratic && r == d())
            return 1;
        return std::nullopt;
    }

    RatVec power_mul(const RatVec& a, const RatVec& b) const
    {
        RatVec out(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (b[j] == 0)
                    continue;
                out[i ^ j] += a[i] * b[j] * power_sq_[i & j];
            }
        }
        return out;
    }

    /// Power coordinates to a readable string like "1/2 + 1/2*sqrt(5)".
    std::string format_power(const RatVec& p) const
    {
        std::ostringstream ss;
        bool first = true;
        for (std::size_t a = 0; a < n_; ++a) {
            if (p[a] == 0)
                continue;
            Rat c = p[a];
            if (!first)
                ss << (c < 0 ? " - " : " + ");
            else if (c < 0)
                ss << "-";
            Rat ac = abs(c.get_num());
            ac /= c.get_den();
            if (a == 0)
                ss << ac;
            else {
                if (ac != 1)
                    ss << ac << "*";
                ss << radical_name(a);
            }
            first = false;
        }
        return first ? "0" : ss.str();
    }

    std::string radical_name(std::size_t a) const
    {
        if (a == 1)
            return "sqrt(" + m_[0].get_str() + ")";
        if (a == 2)
            return "sqrt(" + m_[1].get_str() + ")";
        return "sqrt(" + m_[0].get_str() + ")*sqrt(" + m_[1].get_str() + ")";
    }

private:
    friend Field make_field_uncached(FieldKind, const Int&, const Int&);

    FieldKind kind_ = FieldKind::rational;
    std::size_t n_ = 1;
    Int m_[2] = {1, 1};
    Int m3_ = 1;
    Int disc_ = 1;
    int r1_ = 1, r2_ = 0;
    std::string name_ = "Q";
    std::vector<Int> power_sq_;
    RatMatrix basis_, basis_inv_;
    std::vector<IntVec> mult_;
    std::vector<IntMatrix> auts_;
    int conj_ = 0;
    IntMatrix t2_;
    std::vector<Subfield> proper_;
};

inline Field rationals();
inline Field make_quadratic(const Int& d);
inline Field make_biquadratic(const Int& m1, const Int& m2);

inline Int quadratic_discriminant(const Int& d) { return mod(d, 4) == 1 ? d : 4 * d; }

namespace detail {

// Row HNF of rational vectors, with columns processed from last to first so
// that row k only involves power coordinates 0..k and b_0 = 1.
inline RatMatrix canonical_lattice_basis(const RatMatrix& gens, std::size_t n)
{
    Int den = common_denominator(gens);
    IntMatrix m(gens.size(), n);
    for (std::size_t i = 0; i < gens.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v = gens[i][j] * den;
            m(i, n - 1 - j) = v.get_num();
        }
    IntMatrix h = hnf_basis(m);
    if (h.rows() != n)
        throw verification_error("integral basis generators do not span a full lattice");
    RatMatrix out = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rat v(h(n - 1 - i, n - 1 - j), den);
            v.canonicalize();
            out[i][j] = v;
        }
    return out;
}

inline bool power_is_integral(const NumberField& K, const RatVec& x)
{
    const std::size_t n = K.degree();
    RatMatrix a = rat_zero(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        RatVec e(n);
        e[i] = 1;
        a[i] = K.power_mul(e, x);
    }
    for (const auto& c : char_poly(a))
        if (!is_integer(c))
            return false;
    return true;
}

inline Rat lattice_discriminant(const RatMatrix& basis, const std::vector<Int>& power_sq)
{
    Rat det = rat_determinant(basis);
    Rat disc = det * det;
    const long n = static_cast<long>(basis.size());
    for (const auto& s : power_sq)
        disc *= n * s;
    return disc;
}

inline std::string field_key(FieldKind k, const Int& a, const Int& b)
{
    switch (k) {
    case FieldKind::rational:
        return "Q";
    case FieldKind::quadratic:
        return "Q(sqrt " + a.get_str() + ")";
    default:
        return "Q(sqrt " + a.get_str() + ", sqrt " + b.get_str() + ")";
    }
}

struct FieldRegistry {
    std::mutex mu;
    std::map<std::string, Field> fields;
};

inline FieldRegistry& registry()
{
    static FieldRegistry r;
    return r;
}

} // namespace detail

inline Field make_field_uncached(FieldKind kind, const Int& a, const Int& b)
{
    auto f = std::make_shared<NumberField>();
    NumberField& K = *f;
    K.kind_ = kind;
    K.name_ = detail::field_key(kind, a, b);
    RatMatrix gens;
    auto quad_gens = [](const Int& d, std::size_t idx, const Rat& scale, std::size_t n) {
        // {1, omega} of Q(sqrt d) with sqrt d mapped to scale * e_idx.
        RatVec one(n), om(n);
        one[0] = 1;
        if (mod(d, 4) == 1) {
            om[0] = Rat(1, 2);
            om[idx] = scale / 2;
        } else {
            om[idx] = scale;
        }
        return std::pair{one, om};
    };
    Int target;
    if (kind == FieldKind::rational) {
        K.n_ = 1;
        K.r1_ = 1;
        K.r2_ = 0;
        gens = {RatVec{1}};
        target = 1;
    } else if (kind == FieldKind::quadratic) {
        K.n_ = 2;
        K.m_[0] = a;
        K.m3_ = a;
        K.r1_ = a > 0 ? 2 : 0;
        K.r2_ = a > 0 ? 0 : 1;
        auto [one, om] = quad_gens(a, 1, 1, 2);
        gens = {one, om};
        target = quadratic_discriminant(a);
    } else {
        K.n_ = 4;
        K.m_[0] = a;
        K.m_[1] = b;
        Int g = gcd(a, b);
        K.m3_ = (a / g) * (b / g);
        K.r1_ = (a > 0 && b > 0) ? 4 : 0;
        K.r2_ = (a > 0 && b > 0) ? 0 : 2;
        std::vector<std::pair<RatVec, RatVec>> sub;
        sub.push_back(quad_gens(a, 1, 1, 4));
        sub.push_back(quad_gens(b, 2, 1, 4));
        sub.push_back(quad_gens(K.m3_, 3, Rat(1) / Rat(g), 4));
        K.power_sq_ = {1, a, b, a * b};
        for (int mask = 0; mask < 8; ++mask) {
            RatVec x(4);
            x[0] = 1;
            for (int i = 0; i < 3; ++i)
                x = K.power_mul(x, (mask >> i) & 1 ? sub[i].second : sub[i].first);
            gens.push_back(x);
        }
        target = quadratic_discriminant(a) * quadratic_discriminant(b) * quadratic_discriminant(K.m3_);
    }
    K.power_sq_.resize(K.n_);
    for (std::size_t s = 0; s < K.n_; ++s) {
        Int v = 1;
        if (s & 1)
            v *= K.m_[0];
        if (s & 2)
            v *= K.m_[1];
        K.power_sq_[s] = v;
    }
    K.disc_ = target;
    const std::size_t n = K.n_;

    RatMatrix basis = detail::canonical_lattice_basis(gens, n);
    // Enlarge p-maximally until the discriminant matches.
    for (int guard = 0; guard < 64; ++guard) {
        Rat disc = detail::lattice_discriminant(basis, K.power_sq_);
        if (disc == Rat(target))
            break;
        Rat ratio = disc / Rat(target);
        if (!is_integer(ratio) || !is_square(ratio.get_num()))
            throw verification_error("lattice discriminant is not a square multiple of the field discriminant in " +
                                     K.name_);
        Int index = isqrt(ratio.get_num());
        bool grown = false;
        for (const auto& [p, e] : factor(index)) {
            const long pl = to_long(p);
            std::vector<long> c(n, 0);
            long combos = 1;
            for (std::size_t i = 0; i < n; ++i)
                combos *= pl;
            for (long code = 1; code < combos && !grown; ++code) {
                long t = code;
                for (std::size_t i = 0; i < n; ++i) {
                    c[i] = t % pl;
                    t /= pl;
                }
                RatVec x(n);
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        x[j] += Rat(c[i]) * basis[i][j];
                for (auto& v : x)
                    v /= p;
                if (detail::power_is_integral(K, x)) {
                    RatMatrix g2 = basis;
                    g2.push_back(x);
                    basis = detail::canonical_lattice_basis(g2, n);
                    grown = true;
                }
            }
            if (grown)
                break;
        }
        if (!grown)
            throw verification_error("could not enlarge order to the maximal order of " + K.name_);
    }
    if (detail::lattice_discriminant(basis, K.power_sq_) != Rat(target))
        throw verification_error("integral basis discriminant mismatch for " + K.name_);
    if (basis[0][0] != 1)
        throw verification_error("integral basis does not start with 1");
    K.basis_ = basis;
    K.basis_inv_ = rat_inverse(basis);

    auto to_int = [&](const RatVec& power) {
        RatVec c = rat_mul(power, K.basis_inv_);
        IntVec out(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (!is_integer(c[i]))
                throw verification_error("integral basis of " + K.name_ + " is not closed");
            out[i] = c[i].get_num();
        }
        return out;
    };

    K.mult_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            K.mult_[i * n + j] = to_int(K.power_mul(basis[i], basis[j]));

    for (std::size_t k = 0; k < n; ++k) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            RatVec p = basis[i];
            for (std::size_t a2 = 0; a2 < n; ++a2)
                p[a2] *= K.power_sign(static_cast<int>(k), a2);
            IntVec r = to_int(p);
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = r[j];
        }
        K.auts_.push_back(m);
    }
    K.conj_ = 0;
    for (int i = 0; i < (kind == FieldKind::biquadratic ? 2 : (kind == FieldKind::quadratic ? 1 : 0)); ++i)
        if (K.m_[i] < 0)
            K.conj_ |= 1 << i;

    K.t2_ = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            RatVec cj = basis[j];
            for (std::size_t a2 = 0; a2 < n; ++a2)
                cj[a2] *= K.power_sign(K.conj_, a2);
            Rat tr = K.power_mul(basis[i], cj)[0] * Rat(static_cast<long>(n));
            if (!is_integer(tr))
                throw verification_error("non-integral trace form");
            K.t2_(i, j) = tr.get_num();
        }

    // Proper subfields.
    if (kind != FieldKind::rational) {
        Subfield q;
        q.field = rationals();
        q.embedding = IntMatrix(1, n);
        q.embedding(0, 0) = 1;
        for (std::size_t k = 0; k < n; ++k)
            q.galois.push_back(static_cast<int>(k));
        q.index = 0;
        K.proper_.push_back(q);
    }
    if (kind == FieldKind::biquadratic) {
        Int g = gcd(a, b);
        const Int rad[3] = {a, b, K.m3_};
        const Rat scale[3] = {Rat(1), Rat(1), Rat(1) / Rat(g)};
        for (std::size_t i = 0; i < 3; ++i) {
            Subfield s;
            s.field = make_quadratic(rad[i]);
            s.index = static_cast<int>(i + 1);
            s.embedding = IntMatrix(2, 4);
            for (std::size_t r = 0; r < 2; ++r) {
                RatVec pw(4);
                pw[0] = s.field->basis_in_power()[r][0];
                pw[i + 1] = s.field->basis_in_power()[r][1] * scale[i];
                IntVec c = to_int(pw);
                for (std::size_t j = 0; j < 4; ++j)
                    s.embedding(r, j) = c[j];
            }
            for (int k = 0; k < 4; ++k)
                if (K.power_sign(k, i + 1) == 1)
                    s.galois.push_back(k);
            K.proper_.push_back(s);
        }
    }
    return f;
}

namespace detail {

inline Field cached_field(FieldKind kind, const Int& a, const Int& b)
{
    auto& reg = registry();
    const std::string key = field_key(kind, a, b);
    {
        std::lock_guard lock(reg.mu);
        auto it = reg.fields.find(key);
        if (it != reg.fields.end())
            return it->second;
    }
    // Built outside the lock: construction of a biquadratic field recurses into its subfields.
    Field f = make_field_uncached(kind, a, b);
    std::lock_guard lock(reg.mu);
    auto [it, inserted] = reg.fields.emplace(key, f);
    return it->second;
}

} // namespace detail

inline Field rationals() { return detail::cached_field(FieldKind::rational, 1, 1); }

inline Field make_quadratic(const Int& d)
{
    if (d == 0 || d == 1)
        throw domain_error("Q(sqrt " + d.get_str() + ") is not a quadratic field");
    if (!is_squarefree(d))
        throw domain_error("radicand " + d.get_str() + " is not squarefree");
    return detail::cached_field(FieldKind::quadratic, d, 1);
}

inline Field make_biquadratic(const Int& m1, const Int& m2)
{
    for (const Int& m : {m1, m2}) {
        if (m == 0 || m == 1)
            throw domain_error("radicand " + m.get_str() + " does not give a quadratic field");
        if (!is_squarefree(m))
            throw domain_error("radicand " + m.get_str() + " is not squarefree");
    }
    if (m1 == m2 || is_square(m1 * m2))
        throw domain_error("Q(sqrt " + m1.get_str() + ", sqrt " + m2.get_str() + ") has degree 2, not 4");
    return detail::cached_field(FieldKind::biquadratic, m1, m2);
}

/// Parses "Q", "Q(sqrt -5)" or "Q(sqrt -1, sqrt 5)"; whitespace is ignored.
inline Field parse_field(const std::string& spec)
{
    std::string s;
    for (char c : spec)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s == "Q")
        return rationals();
    static const std::regex re(R"(Q\(sqrt\(?([+-]?\d+)\)?(?:,sqrt\(?([+-]?\d+)\)?)?\))");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw domain_error("cannot parse field spec '" + spec + "'");
    Int a(m[1].str().front() == '+' ? m[1].str().substr(1) : m[1].str());
    if (!m[2].matched)
        return make_quadratic(a);
    Int b(m[2].str().front() == '+' ? m[2].str().substr(1) : m[2].str());
    return make_biquadratic(a, b);
}

} // namespace polya
