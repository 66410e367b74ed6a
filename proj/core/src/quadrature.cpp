#include "whit/quadrature.hpp"

namespace whit {

// Explicit instantiations for the two scalar types used across the library.
template QuadRule<double> gauss_legendre<double>(int, const double&, const double&, int);
template QuadRule<double> tanh_sinh<double>(int, const double&, const double&, int);
template QuadRule<double> half_line<double>(int, const double&, const double&, int);
template QuadRule<double> composite_gauss_legendre<double>(const std::vector<double>&, int, int);

template QuadRule<BigReal> gauss_legendre<BigReal>(int, const BigReal&, const BigReal&, int);
template QuadRule<BigReal> tanh_sinh<BigReal>(int, const BigReal&, const BigReal&, int);
template QuadRule<BigReal> half_line<BigReal>(int, const BigReal&, const BigReal&, int);
template QuadRule<BigReal> composite_gauss_legendre<BigReal>(const std::vector<BigReal>&, int,
                                                             int);

}  // namespace whit
