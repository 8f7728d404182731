#include "zdim/matrix.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace zdim {

namespace {

void check_dims(int n, int q) {
  if (n < 1 || n > kMaxDimension) {
    throw InputError("matrix dimension must be in [1, " +
                     std::to_string(kMaxDimension) + "], got " + std::to_string(n));
  }
  if (q < 2 || q > kMaxSemiringOrder) {
    throw InputError("carrier order must be in [2, " +
                     std::to_string(kMaxSemiringOrder) + "], got " + std::to_string(q));
  }
}

void check_compatible(const Matrix& a, const FiniteSemiring& s) {
  if (a.q() != s.order()) {
    throw InputError("matrix over a " + std::to_string(a.q()) +
                     "-element carrier used with semiring of order " +
                     std::to_string(s.order()));
  }
}

// Number of r x c matrices over q symbols; BudgetExceeded beyond `cap`.
Rank capped_power(int q, int exponent, Rank cap) {
  Rank value = 1;
  for (int e = 0; e < exponent; ++e) {
    if (value > cap / static_cast<Rank>(q)) {
      throw BudgetExceeded("enumeration of " + std::to_string(q) + "^" +
                           std::to_string(exponent) +
                           " matrices exceeds the cap of " + std::to_string(cap));
    }
    value *= static_cast<Rank>(q);
  }
  return value;
}

}  // namespace

int set_size(IndexSet s) { return std::popcount(s); }

std::string set_to_text(IndexSet s) {
  std::string out = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (s & (IndexSet{1} << i)) {
      if (!first) out += ",";
      out += std::to_string(i + 1);
      first = false;
    }
  }
  return out + "}";
}

std::string to_text(const SupportClass& cls) {
  return "T_" + set_to_text(cls.zero_rows) + "," + set_to_text(cls.zero_cols);
}

Matrix::Matrix(int n, int q) : n_(n), q_(q) {
  check_dims(n, q);
  entries_.assign(static_cast<std::size_t>(n) * n, 0);
}

void Matrix::set(int i, int j, Element value) {
  if (value >= q_) {
    throw InputError("entry " + std::to_string(value) + " is outside the " +
                     std::to_string(q_) + "-element carrier");
  }
  entries_[i * n_ + j] = value;
}

Matrix Matrix::from_rank(Rank rank, int n, int q) {
  Matrix m(n, q);
  for (int k = n * n - 1; k >= 0; --k) {
    m.entries_[k] = static_cast<Element>(rank % static_cast<Rank>(q));
    rank /= static_cast<Rank>(q);
  }
  if (rank != 0) throw InputError("rank is outside the matrix space");
  return m;
}

Matrix Matrix::parse(std::string_view text, int q) {
  std::vector<std::vector<int>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find(';', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view row_text = text.substr(start, stop - start);
    std::vector<int> row;
    std::size_t pos = 0;
    while (pos <= row_text.size()) {
      std::size_t comma = row_text.find(',', pos);
      if (comma == std::string_view::npos) comma = row_text.size();
      std::string_view cell = row_text.substr(pos, comma - pos);
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      int value = 0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        throw InputError("bad matrix entry '" + std::string(cell) + "' in row " +
                         std::to_string(rows.size() + 1));
      }
      if (value < 0 || value >= q) {
        throw InputError("matrix entry " + std::to_string(value) + " in row " +
                         std::to_string(rows.size() + 1) + " is outside the " +
                         std::to_string(q) + "-element carrier");
      }
      row.push_back(value);
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
    start = stop + 1;
  }
  const int n = static_cast<int>(rows.size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw InputError("matrix text '" + std::string(text) + "' is not square");
    }
  }
  Matrix m(n, q);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m.entries_[i * n + j] = static_cast<Element>(rows[i][j]);
  return m;
}

Rank Matrix::rank() const {
  Rank r = 0;
  for (Element e : entries_) r = r * static_cast<Rank>(q_) + e;
  return r;
}

bool Matrix::advance() {
  for (int k = n_ * n_ - 1; k >= 0; --k) {
    if (++entries_[k] < q_) return true;
    entries_[k] = 0;
  }
  return false;
}

std::string Matrix::to_text() const {
  std::string out;
  for (int i = 0; i < n_; ++i) {
    if (i > 0) out += ";";
    for (int j = 0; j < n_; ++j) {
      if (j > 0) out += ",";
      out += std::to_string(at(i, j));
    }
  }
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Element e) { return e == 0; });
}

IndexSet Matrix::row_support(int i) const {
  IndexSet mask = 0;
  for (int j = 0; j < n_; ++j)
    if (at(i, j) != 0) mask |= IndexSet{1} << j;
  return mask;
}

IndexSet Matrix::zero_rows() const {
  IndexSet mask = 0;
  for (int i = 0; i < n_; ++i)
    if (row_support(i) == 0) mask |= IndexSet{1} << i;
  return mask;
}

IndexSet Matrix::zero_cols() const {
  IndexSet nonzero = 0;
  for (int i = 0; i < n_; ++i) nonzero |= row_support(i);
  return full_set(n_) & ~nonzero;
}

std::vector<SupportClass> zero_divisor_classes(int n) {
  std::vector<SupportClass> classes;
  const IndexSet full = full_set(n);
  for (IndexSet rows = 0; rows < full; ++rows) {
    for (IndexSet cols = 0; cols < full; ++cols) {
      if (rows == 0 && cols == 0) continue;
      classes.push_back({rows, cols});
    }
  }
  return classes;
}

Rank matrix_space_size(int n, int q, Rank cap) {
  check_dims(n, q);
  return capped_power(q, n * n, cap);
}

void for_each_matrix(int n, int q, const std::function<void(const Matrix&)>& visit,
                     Rank cap) {
  const Rank total = matrix_space_size(n, q, cap);
  Matrix m(n, q);
  for (Rank r = 0; r < total; ++r) {
    visit(m);
    m.advance();
  }
}

Matrix identity_matrix(int n, const FiniteSemiring& s) {
  Matrix m(n, s.order());
  for (int i = 0; i < n; ++i) m.set(i, i, s.one());
  return m;
}

Matrix unit_matrix(int n, int i, int j, const FiniteSemiring& s) {
  Matrix m(n, s.order());
  m.set(i, j, s.one());
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, const FiniteSemiring& s) {
  if (a.n() != b.n()) {
    throw InputError("dimension mismatch: " + std::to_string(a.n()) + " vs " +
                     std::to_string(b.n()));
  }
  check_compatible(a, s);
  check_compatible(b, s);
  const int n = a.n();
  Matrix c(n, s.order());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Element sum = s.zero();
      for (int k = 0; k < n; ++k) sum = s.add(sum, s.mul(a.at(i, k), b.at(k, j)));
      c.set(i, j, sum);
    }
  }
  return c;
}

Matrix pattern(const Matrix& a) {
  Matrix p(a.n(), 2);
  for (int i = 0; i < a.n(); ++i)
    for (int j = 0; j < a.n(); ++j)
      if (a.at(i, j) != 0) p.set(i, j, 1);
  return p;
}

Matrix embed_boolean(const Matrix& boolean, const FiniteSemiring& s) {
  if (boolean.q() != 2) throw InputError("embed_boolean expects a 0/1 matrix");
  Matrix m(boolean.n(), s.order());
  for (int i = 0; i < boolean.n(); ++i)
    for (int j = 0; j < boolean.n(); ++j)
      if (boolean.at(i, j) != 0) m.set(i, j, s.one());
  return m;
}

bool is_boolean_valued(const Matrix& a, const FiniteSemiring& s) {
  check_compatible(a, s);
  return std::all_of(a.entries().begin(), a.entries().end(),
                     [&](Element e) { return e == s.zero() || e == s.one(); });
}

SupportClass support_class(const Matrix& a) {
  if (a.is_zero()) throw InputError("the zero matrix has no support class");
  return {a.zero_rows(), a.zero_cols()};
}

std::vector<Matrix> enumerate_class(int n, const SupportClass& cls,
                                    const FiniteSemiring& s, Rank cap) {
  check_dims(n, s.order());
  const IndexSet full = full_set(n);
  if ((cls.zero_rows & ~full) != 0 || (cls.zero_cols & ~full) != 0) {
    throw InputError("support class " + to_text(cls) + " is out of range for n = " +
                     std::to_string(n));
  }
  if (cls.zero_rows == full && cls.zero_cols == full) {
    throw InputError("T_{N_n,N_n} is the zero matrix, not a support class");
  }
  if (cls.zero_rows == full || cls.zero_cols == full) return {};

  std::vector<int> rows, cols;
  for (int i = 0; i < n; ++i) {
    if (!(cls.zero_rows >> i & 1)) rows.push_back(i);
    if (!(cls.zero_cols >> i & 1)) cols.push_back(i);
  }
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());
  const int q = s.order();
  const Rank total = capped_power(q, r * c, cap);

  // Odometer over the free r x c block; keep blocks without zero lines.
  std::vector<Element> block(static_cast<std::size_t>(r) * c, 0);
  std::vector<Matrix> out;
  for (Rank step = 0; step < total; ++step) {
    bool ok = true;
    for (int i = 0; i < r && ok; ++i) {
      ok = std::any_of(block.begin() + i * c, block.begin() + (i + 1) * c,
                       [](Element e) { return e != 0; });
    }
    for (int j = 0; j < c && ok; ++j) {
      bool nonzero = false;
      for (int i = 0; i < r; ++i) nonzero |= block[i * c + j] != 0;
      ok = nonzero;
    }
    if (ok) {
      Matrix m(n, q);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) m.set(rows[i], cols[j], block[i * c + j]);
      out.push_back(std::move(m));
    }
    for (int k = r * c - 1; k >= 0; --k) {
      if (++block[k] < q) break;
      block[k] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool is_zero_divisor(const Matrix& a, const FiniteSemiring& s) {
  check_compatible(a, s);
  return a.zero_rows() != 0 || a.zero_cols() != 0;
}

}  // namespace zdim
