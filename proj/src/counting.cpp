#include "zdim/counting.hpp"

#include <string>

#include "zdim/errors.hpp"

namespace zdim {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt result = 1;
  for (int i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

BigInt power(const BigInt& base, int exponent) {
  BigInt result = 1;
  for (int e = 0; e < exponent; ++e) result *= base;
  return result;
}

BigInt count_no_zero_lines(int rows, int cols, int q) {
  if (rows < 0 || cols < 0) throw InputError("matrix shape must be non-negative");
  if (q < 2) throw InputError("carrier order must be at least 2");
  BigInt total = 0;
  for (int k = 0; k <= cols; ++k) {
    BigInt term = binomial(cols, k) * power(power(BigInt(q), cols - k) - 1, rows);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt count_class_boolean(int n, int i, int j) {
  if (n < 1) throw InputError("n must be positive");
  if (i < 0 || j < 0 || i > n || j > n) {
    throw InputError("class sizes (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") out of range for n = " + std::to_string(n));
  }
  if (i == n && j == n) throw InputError("T_{N_n,N_n} holds only the zero matrix");
  return count_no_zero_lines(n - i, n - j, 2);
}

BigInt count_zero_divisors(int n, int q) {
  if (n < 1) throw InputError("n must be positive");
  if (q < 2) throw InputError("carrier order must be at least 2");
  return power(BigInt(q), n * n) - count_no_zero_lines(n, n, q);
}

}  // namespace zdim
