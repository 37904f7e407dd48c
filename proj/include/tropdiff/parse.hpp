#pragma once

#include <string>
#include <vector>

#include "tropdiff/sigma_poly.hpp"
#include "tropdiff/tropical.hpp"
#include "tropdiff/zsigma.hpp"

namespace tropdiff {

// Expression grammar shared by series and polynomials:
//
//   expr    := ['-'] term (('+'|'-') term)*
//   term    := factor ('*' factor)*
//   factor  := primary ['^' signed-int]
//   primary := rational | 'i' | 'z' | 't' ['^' t-exponent]
//            | 'O' '(' t-atom ')' | var | '(' expr ')'
//   t-exponent := signed-rational | '(' rational (',' rational)* ')'
//
// Series admit no variables. Laurent polynomials use 'x' (one variable) or
// 'y1'..'yk'. Difference polynomials use 'x', 's(x)', 's^k(x)' with
// nonnegative exponents. All failures raise errc::parse_error with a
// position, except domain violations which keep their own codes.

HahnSeries parse_series(const Ctx& ctx, const std::string& text);
std::vector<HahnSeries> parse_series_vector(const Ctx& ctx, const std::string& text);

// nvars = -1 infers the arity from the variables used (at least 1).
LaurentPoly parse_laurent(const Ctx& ctx, const std::string& text, int nvars = -1);

SigmaPolynomial parse_sigma_poly(const Ctx& ctx, const std::string& text);

// Group ring elements: "2 - s", "s^-1 + s", "[[1-s],[1-s^2]]".
ZSigmaPoly parse_zsigma(const std::string& text);
ZSigmaMatrix parse_zsigma_matrix(const std::string& text);

// "3", "-1/2", "(0,1)", "inf"; a finite vector must have the given rank.
GroupVector parse_group_vector(const std::string& text, int rank);

} // namespace tropdiff
