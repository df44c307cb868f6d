#include "lolab/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace lolab {

ExactVector zero_vector(std::size_t k) { return ExactVector(k); }

ExactVector unit_vector(std::size_t k, std::size_t i) {
  ExactVector v(k);
  v.at(i) = 1;
  return v;
}

ExactVector operator+(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  ExactVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

ExactVector operator-(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  ExactVector r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

ExactVector operator-(const ExactVector& a) {
  ExactVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

ExactVector operator*(const GaussianRational& s, const ExactVector& v) {
  ExactVector r(v);
  for (auto& x : r) x *= s;
  return r;
}

bool is_zero(const ExactVector& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

bool is_real(const ExactVector& v) {
  for (const auto& x : v)
    if (!x.is_real()) return false;
  return true;
}

GaussianRational dot(const ExactVector& a, const ExactVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
  GaussianRational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::string to_string(const ExactVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

ExactMatrix::ExactMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ExactMatrix ExactMatrix::identity(std::size_t n) {
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

ExactMatrix ExactMatrix::from_rows(const std::vector<ExactVector>& rows, std::size_t cols) {
  ExactMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

ExactMatrix ExactMatrix::from_columns(const std::vector<ExactVector>& columns, std::size_t rows) {
  return from_rows(columns, rows).transpose();
}

ExactVector ExactMatrix::row(std::size_t r) const {
  return ExactVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

ExactVector ExactMatrix::column(std::size_t c) const {
  ExactVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<ExactVector> ExactMatrix::row_list() const {
  std::vector<ExactVector> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r));
  return out;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

ExactVector ExactMatrix::operator*(const ExactVector& v) const {
  if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
  ExactVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (!(*this)(r, c).is_zero() && !v[c].is_zero()) out[r] += (*this)(r, c) * v[c];
  return out;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix size mismatch");
  ExactMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const auto& a = (*this)(r, k);
      if (a.is_zero()) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) += a * o(k, c);
    }
  return out;
}

namespace {

struct GaussInt {
  mpz_class re;
  mpz_class im;
  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
};

GaussInt mul(const GaussInt& a, const GaussInt& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact quotient a / b in Z[i]; Bareiss guarantees divisibility.
GaussInt exact_div(const GaussInt& a, const GaussInt& b) {
  if (sgn(b.im) == 0) {
    GaussInt q;
    mpz_divexact(q.re.get_mpz_t(), a.re.get_mpz_t(), b.re.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), a.im.get_mpz_t(), b.re.get_mpz_t());
    return q;
  }
  mpz_class n = b.re * b.re + b.im * b.im;
  mpz_class re = a.re * b.re + a.im * b.im;
  mpz_class im = a.im * b.re - a.re * b.im;
  GaussInt q;
  mpz_divexact(q.re.get_mpz_t(), re.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(q.im.get_mpz_t(), im.get_mpz_t(), n.get_mpz_t());
  return q;
}

}  // namespace

std::size_t rank(const ExactMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  if (rows == 0 || cols == 0) return 0;

  // Scale every row by the lcm of its denominators; row scaling keeps the rank.
  std::vector<std::vector<GaussInt>> a(rows, std::vector<GaussInt>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    mpz_class l = 1;
    for (std::size_t c = 0; c < cols; ++c) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), lcm_denominator(m(r, c)).get_mpz_t());
    for (std::size_t c = 0; c < cols; ++c) {
      mpq_class re = m(r, c).re() * l;
      mpq_class im = m(r, c).im() * l;
      a[r][c] = {re.get_num(), im.get_num()};
    }
  }

  GaussInt prev{1, 0};
  std::size_t rk = 0;
  for (std::size_t c = 0; c < cols && rk < rows; ++c) {
    std::size_t p = rk;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rk]);
    const GaussInt pivot = a[rk][c];
    for (std::size_t r = rk + 1; r < rows; ++r) {
      const GaussInt lead = a[r][c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        a[r][j] = exact_div(sub(mul(pivot, a[r][j]), mul(lead, a[rk][j])), prev);
      }
      a[r][c] = {0, 0};
    }
    prev = pivot;
    ++rk;
  }
  return rk;
}

ExactMatrix rref(const ExactMatrix& input, std::vector<std::size_t>* pivots) {
  ExactMatrix m = input;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    GaussianRational inv = GaussianRational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      GaussianRational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::vector<ExactVector> kernel_basis(const ExactMatrix& m) {
  std::vector<std::size_t> pivots;
  ExactMatrix e = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<ExactVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    ExactVector v(m.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -e(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<ExactVector> solve_linear(const ExactMatrix& m, const ExactVector& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("solve_linear: rhs length must equal row count");
  ExactMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = b[r];
  }
  std::vector<std::size_t> pivots;
  ExactMatrix e = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  ExactVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = e(r, m.cols());
  return x;
}

std::optional<ExactMatrix> inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  ExactMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> pivots;
  ExactMatrix e = rref(aug, &pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  ExactMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = e(r, n + c);
  return inv;
}

std::vector<ExactVector> span_basis(const std::vector<ExactVector>& vectors, std::size_t k) {
  std::vector<std::size_t> pivots;
  ExactMatrix e = rref(ExactMatrix::from_rows(vectors, k), &pivots);
  std::vector<ExactVector> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) out.push_back(e.row(r));
  return out;
}

ExactMatrix quotient_map(const std::vector<ExactVector>& subspace_basis, std::size_t k) {
  auto annihilator = kernel_basis(ExactMatrix::from_rows(subspace_basis, k));
  return ExactMatrix::from_rows(annihilator, k);
}

bool in_span(const std::vector<ExactVector>& basis, const ExactVector& v, std::size_t k) {
  if (basis.empty()) return is_zero(v);
  return solve_linear(ExactMatrix::from_columns(basis, k), v).has_value();
}

}  // namespace lolab
