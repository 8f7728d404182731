#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace zdim {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(int n, int k);
BigInt power(const BigInt& base, int exponent);

// Number of r x c matrices over a q-element entire antiring with no zero row
// and no zero column, by inclusion-exclusion over the zero columns:
//   sum_{k=0}^{c} (-1)^k C(c,k) (q^{c-k} - 1)^r.
BigInt count_no_zero_lines(int rows, int cols, int q);

// t_{i,j} = |T_{I,J}| for |I| = i, |J| = j in M_n(B). Throws InputError when
// i = j = n or either index exceeds n.
BigInt count_class_boolean(int n, int i, int j);

// |Z(M_n(S))| for |S| = q, the zero matrix included. The zero-divisor graph
// has one vertex fewer.
BigInt count_zero_divisors(int n, int q);

}  // namespace zdim
