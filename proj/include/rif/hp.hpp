#pragma once

// Extended precision helpers shared by the slice and contact code. Internal header.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <vector>

#include "rif/bipoly.hpp"

namespace rif::hp {

using real = boost::multiprecision::cpp_bin_float_50;
using complex = boost::multiprecision::cpp_complex_50;

inline complex to_hp(cplx z) { return complex(real(z.real()), real(z.imag())); }
inline cplx to_double(const complex& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

complex horner(const std::vector<complex>& a, const complex& z);
// Newton polish of `root` for polynomial a (low to high) with `steps` iterations.
complex newton_polish(const std::vector<complex>& a, complex root, int steps);
// e^{i t} with t given in extended precision.
complex unit(const real& t);
real abs(const complex& z);

// Coefficients in z1 of p(., z2) evaluated in extended precision.
std::vector<complex> slice_z1(const BiPoly& p, const complex& z2);

}  // namespace rif::hp
