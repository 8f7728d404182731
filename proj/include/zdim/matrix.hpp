#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "zdim/errors.hpp"
#include "zdim/semiring.hpp"

namespace zdim {

// Canonical row-major base-q rank; entry (0,0) is the most significant digit,
// so rank order is lexicographic order of the row-major entry sequence.
using Rank = std::uint64_t;

// Row/column index sets as bit masks, bit i <-> index i (0-based).
using IndexSet = std::uint32_t;

inline constexpr int kMaxDimension = 8;
inline constexpr Rank kDefaultMatrixCap = Rank{1} << 24;

inline IndexSet full_set(int n) { return n >= 32 ? ~IndexSet{0} : (IndexSet{1} << n) - 1; }
int set_size(IndexSet s);
// 1-based set notation, e.g. "{1,3}" or "{}".
std::string set_to_text(IndexSet s);

class Matrix {
 public:
  Matrix(int n, int q);  // the zero matrix

  static Matrix from_rank(Rank rank, int n, int q);
  // "r0c0,r0c1;r1c0,r1c1" with decimal carrier indices.
  static Matrix parse(std::string_view text, int q);

  int n() const { return n_; }
  int q() const { return q_; }
  Element at(int i, int j) const { return entries_[i * n_ + j]; }
  void set(int i, int j, Element value);

  Rank rank() const;
  std::string to_text() const;

  // Steps to the matrix of the next rank; false (and wraps to zero) after the
  // last one.
  bool advance();

  bool is_zero() const;
  IndexSet zero_rows() const;
  IndexSet zero_cols() const;
  // Bit j set iff entry (i, j) is nonzero.
  IndexSet row_support(int i) const;

  const std::vector<Element>& entries() const { return entries_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend std::strong_ordering operator<=>(const Matrix& lhs, const Matrix& rhs) {
    if (auto c = lhs.n_ <=> rhs.n_; c != 0) return c;
    if (auto c = lhs.q_ <=> rhs.q_; c != 0) return c;
    return lhs.entries_ <=> rhs.entries_;
  }

 private:
  int n_;
  int q_;
  std::vector<Element> entries_;
};

// The pair (I, J) of exact zero-row and zero-column sets naming T_{I,J}.
struct SupportClass {
  IndexSet zero_rows = 0;
  IndexSet zero_cols = 0;

  friend bool operator==(const SupportClass&, const SupportClass&) = default;
  friend auto operator<=>(const SupportClass&, const SupportClass&) = default;
};

std::string to_text(const SupportClass& cls);

// All classes (I, J) with I, J proper subsets of N_n and I u J nonempty, in
// (I, J) mask order. These partition the nonzero Boolean zero-divisors.
std::vector<SupportClass> zero_divisor_classes(int n);

// q^(n^2), or BudgetExceeded when it exceeds `cap`.
Rank matrix_space_size(int n, int q, Rank cap = kDefaultMatrixCap);

// Visits every matrix of M_n over a q-element carrier in rank order.
void for_each_matrix(int n, int q, const std::function<void(const Matrix&)>& visit,
                     Rank cap = kDefaultMatrixCap);

Matrix identity_matrix(int n, const FiniteSemiring& s);
// E_{ij}, 0-based indices.
Matrix unit_matrix(int n, int i, int j, const FiniteSemiring& s);

Matrix mat_mul(const Matrix& a, const Matrix& b, const FiniteSemiring& s);

// 0/1 matrix over the Boolean carrier marking the nonzero entries of `a`.
Matrix pattern(const Matrix& a);

// Maps a Boolean 0/1 matrix into M_n(S) via 0 -> zero, 1 -> one.
Matrix embed_boolean(const Matrix& boolean, const FiniteSemiring& s);

// True iff every entry lies in {zero, one}.
bool is_boolean_valued(const Matrix& a, const FiniteSemiring& s);

// Throws InputError for the zero matrix.
SupportClass support_class(const Matrix& a);

// Matrices over S whose zero rows are exactly I and zero columns exactly J,
// ascending by rank. The search space q^(|rows| * |cols|) is capped.
std::vector<Matrix> enumerate_class(int n, const SupportClass& cls,
                                    const FiniteSemiring& s,
                                    Rank cap = kDefaultMatrixCap);

// Over an entire antiring the zero-divisors of M_n(S) are exactly the
// matrices with a zero row or a zero column.
bool is_zero_divisor(const Matrix& a, const FiniteSemiring& s);

}  // namespace zdim
