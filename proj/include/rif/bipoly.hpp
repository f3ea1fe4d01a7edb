#pragma once

#include <complex>
#include <utility>
#include <vector>

namespace rif {

using cplx = std::complex<double>;

// Univariate polynomial, coefficients from low to high degree.
using UniPoly = std::vector<cplx>;

inline constexpr int kMaxDegree = 64;
inline constexpr double kPruneTol = 1e-14;

enum class Var { z1, z2 };

struct Bidegree {
    int n1 = 0;
    int n2 = 0;
    bool operator==(const Bidegree&) const = default;
};

// Dense bivariate polynomial sum c[i,j] z1^i z2^j with a declared bidegree.
class BiPoly {
public:
    BiPoly() : BiPoly(Bidegree{0, 0}) {}
    explicit BiPoly(Bidegree declared);

    static BiPoly constant(cplx c);
    static BiPoly monomial(int i, int j, cplx c = 1.0);
    // Coefficient list of (i, j, c); declared bidegree is the support bidegree.
    static BiPoly from_terms(const std::vector<std::pair<std::pair<int, int>, cplx>>& terms);

    cplx coeff(int i, int j) const;
    void set_coeff(int i, int j, cplx c);

    Bidegree declared_bidegree() const { return decl_; }
    // Support bidegree; throws DomainError for the zero polynomial.
    Bidegree bidegree() const;
    bool is_zero() const;
    double max_abs_coeff() const;

    // Same coefficients, declared bidegree raised to `d` (must dominate the support).
    BiPoly with_declared(Bidegree d) const;

    cplx operator()(cplx z1, cplx z2) const { return eval(z1, z2); }
    cplx eval(cplx z1, cplx z2) const;

    BiPoly partial_derivative(Var v, int order = 1) const;
    BiPoly reflect() const { return reflect(decl_); }
    BiPoly reflect(Bidegree d) const;
    BiPoly swapped() const;

    // Coefficients in z1 of p(., z2) and in z2 of p(z1, .).
    UniPoly slice_z1(cplx z2) const;
    UniPoly slice_z2(cplx z1) const;

    BiPoly operator+(const BiPoly& o) const;
    BiPoly operator-(const BiPoly& o) const;
    BiPoly operator*(const BiPoly& o) const;
    BiPoly operator*(cplx s) const;
    BiPoly operator-() const { return *this * cplx(-1.0); }
    BiPoly pow(int e) const;

    // Exact coefficient equality (declared bidegrees ignored).
    bool same_coeffs(const BiPoly& o, double tol = 0.0) const;
    bool operator==(const BiPoly& o) const { return same_coeffs(o) && decl_ == o.decl_; }

    // Visit nonzero terms in lexicographic (i, j) order.
    template <class F>
    void for_each_term(F&& f) const {
        for (int i = 0; i <= decl_.n1; ++i)
            for (int j = 0; j <= decl_.n2; ++j) {
                const cplx c = c_[idx(i, j)];
                if (c != cplx(0.0)) f(i, j, c);
            }
    }

private:
    std::size_t idx(int i, int j) const { return std::size_t(i) * (decl_.n2 + 1) + j; }
    void prune();

    Bidegree decl_;
    std::vector<cplx> c_;
};

inline BiPoly operator*(cplx s, const BiPoly& p) { return p * s; }

cplx horner(const UniPoly& a, cplx z);
// Values of a and its first `n` derivatives at z (out has n+1 entries).
void horner_derivs(const UniPoly& a, cplx z, int n, cplx* out);

// Rational inner function c * z1^N1 z2^N2 * ptilde / p.
class Rif {
public:
    Rif(BiPoly denom, BiPoly numer, std::pair<int, int> prefactor = {0, 0},
        cplx unimodular = 1.0);
    static Rif from_denominator(const BiPoly& denom, std::pair<int, int> prefactor = {0, 0},
                                cplx unimodular = 1.0);

    const BiPoly& denom() const { return p_; }
    const BiPoly& numer() const { return pt_; }
    std::pair<int, int> prefactor_exponents() const { return pref_; }
    cplx unimodular_constant() const { return c_; }
    // c * z1^N1 z2^N2 * ptilde as one polynomial.
    const BiPoly& full_numerator() const { return full_; }

    cplx eval(cplx z1, cplx z2) const;
    cplx operator()(cplx z1, cplx z2) const { return eval(z1, z2); }
    Rif swapped() const;

private:
    BiPoly p_, pt_, full_;
    std::pair<int, int> pref_;
    cplx c_;
};

}  // namespace rif
