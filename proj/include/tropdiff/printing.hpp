#pragma once

#include <string>

#include "tropdiff/hahn.hpp"
#include "tropdiff/sigma_poly.hpp"
#include "tropdiff/tropical.hpp"
#include "tropdiff/zsigma.hpp"

namespace tropdiff {

// Canonical renderings; parse(print(x)) == x on every value the printers
// emit. Series terms are ordered by exponent, polynomials by monomial.

std::string hs_str(const HahnSeries& f);
std::string laurent_str(const LaurentPoly& f);
std::string sp_str(const SigmaPolynomial& g);
std::string residue_poly_str(const ResiduePoly& f);
std::string zs_str(const ZSigmaPoly& p);

} // namespace tropdiff
